#include "rankjump/serialize.hpp"

#include <set>
#include <sstream>

#include "rankjump/error.hpp"

namespace rankjump::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

constexpr int kHeightDigits = 30;
constexpr int kErrorDigits = 6;
constexpr int kIntervalDigits = 20;

json interval_json(const Interval& v) {
  return {{"lo", v.lo().to_string(kIntervalDigits, 'D')}, {"hi", v.hi().to_string(kIntervalDigits, 'U')}};
}

void require_object(const json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) parse_fail(what + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (allowed.count(key) == 0) parse_fail("unknown field '" + key + "' in " + what);
  }
}

const json& field(const json& j, const std::string& key, const std::string& what) {
  if (!j.contains(key)) parse_fail(what + " is missing '" + key + "'");
  return j.at(key);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

json to_json(const Rat& q) { return q.to_string(); }

Rat rat_from_json(const json& j) {
  if (!j.is_string()) parse_fail("rational must be a string such as \"-5/6\", got " + j.dump());
  try {
    return Rat::parse(j.get<std::string>());
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

json to_json(const PolyQ& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_json(c));
  return out;
}

PolyQ poly_from_json(const json& j) {
  if (!j.is_array()) parse_fail("polynomial must be an array of coefficient strings, got " + j.dump());
  std::vector<Rat> coeffs;
  for (const auto& c : j) coeffs.push_back(rat_from_json(c));
  return PolyQ(std::move(coeffs));
}

json to_json(const RatFunc& f) { return {{"num", to_json(f.numerator())}, {"den", to_json(f.denominator())}}; }

RatFunc ratfunc_from_json(const json& j) {
  require_object(j, {"num", "den"}, "rational function");
  const PolyQ num = poly_from_json(field(j, "num", "rational function"));
  const PolyQ den = j.contains("den") ? poly_from_json(j.at("den")) : PolyQ::constant(1);
  if (den.is_zero()) parse_fail("rational function with zero denominator");
  return RatFunc(num, den);
}

json to_json(const PointQ& p) { return p.to_string(); }

json to_json(const CurveQ& c) { return {{"A", to_json(c.A())}, {"B", to_json(c.B())}}; }

json to_json(const Interval& v) { return interval_json(v); }

json to_json(const HeightEstimate& h) {
  return {{"value", h.value.to_string(kHeightDigits)}, {"err", h.error.to_string(kErrorDigits, 'U')}};
}

json to_json(const GramCertificate& g) {
  json pts = json::array(), heights = json::array(), entries = json::array();
  for (const auto& p : g.points) pts.push_back(to_json(p));
  for (const auto& h : g.heights) heights.push_back(to_json(h));
  for (const auto& row : g.entries) {
    json r = json::array();
    for (const auto& e : row) r.push_back(interval_json(e));
    entries.push_back(std::move(r));
  }
  return {{"points", pts},
          {"heights", heights},
          {"entries", entries},
          {"determinant", interval_json(g.determinant)},
          {"det_lower_bound", g.det_lower_bound.to_string(kIntervalDigits, 'D')},
          {"certified", g.certified},
          {"tol", g.tol}};
}

json to_json(const WitnessCertificate& c) {
  json sections = json::array();
  for (const auto& s : c.section_points) sections.push_back(to_json(s));
  return {{"family_id", c.family_id},
          {"param", to_json(c.param)},
          {"curve", to_json(c.curve)},
          {"section_points", sections},
          {"witness", to_json(c.witness)},
          {"witness_torsion", c.witness_torsion},
          {"heights", c.gram ? to_json(*c.gram).at("heights") : json::array()},
          {"gram", c.gram ? to_json(*c.gram) : json(nullptr)},
          {"certified_set", c.certified_set},
          {"certified_rank_lb", c.certified_rank_lb},
          {"declared_generic_rank", c.declared_generic_rank},
          {"jump", c.jump},
          {"status", c.status()}};
}

json to_json(const ScanReport& r) {
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  const auto& s = r.stats;
  return {{"family_id", r.family_id},
          {"family_kind", r.family_kind},
          {"bound", r.bound},
          {"mode", to_string(r.mode)},
          {"mode_fell_back", r.mode_fell_back},
          {"tol", r.tol},
          {"stats",
           {{"candidates", s.candidates},
            {"degenerate", s.degenerate},
            {"duplicates", s.duplicates},
            {"skipped", s.skipped},
            {"torsion_witness", s.torsion_witness},
            {"certified", s.certified},
            {"inconclusive", s.inconclusive}}},
          {"certified_params", static_cast<long>(r.certified_params().size())},
          {"distinct_params", r.distinct_params()},
          {"certificates", certs}};
}

json to_json(const NeronCheckReport& r) {
  json inconclusive = json::array(), dependent = json::array();
  for (const auto& q : r.inconclusive) inconclusive.push_back(to_json(q));
  for (const auto& [q, rel] : r.exact_dependent) dependent.push_back({{"param", to_json(q)}, {"relation", rel}});
  return {{"family_id", r.family_id},
          {"bound", r.bound},
          {"sampled", r.sampled},
          {"certified_independent", r.certified_independent},
          {"degenerate_skipped", r.degenerate_skipped},
          {"inconclusive", inconclusive},
          {"exact_dependent", dependent},
          {"not_certified_fraction", r.not_certified_fraction()}};
}

json to_json(const BillingCertificate& b) {
  json classes = json::array(), witnesses = json::array();
  for (const auto& c : b.classes) classes.push_back(c.to_string());
  for (const auto& w : b.witnesses) {
    witnesses.push_back({{"x0", to_json(w.x0)},
                         {"s", to_json(w.s)},
                         {"d", w.d.to_string()},
                         {"twist", to_json(w.twist)},
                         {"point", to_json(w.point)},
                         {"height", to_json(w.height)}});
  }
  const auto& ind = b.independence;
  return {{"p", to_json(b.p)},
          {"curve", to_json(b.curve)},
          {"r", b.r},
          {"classes", classes},
          {"witnesses", witnesses},
          {"independence",
           {{"independent", ind.independent},
            {"rank", ind.rank},
            {"coordinates", ind.coordinates},
            {"vectors", ind.vectors}}},
          {"compositum_degree", b.compositum_degree},
          {"rank_bound", b.rank_bound},
          {"examined", b.examined}};
}

json to_json(const Histogram& h) {
  return {{"lo", to_json(h.lo)},         {"hi", to_json(h.hi)},           {"bins", h.bins},
          {"counts", h.counts},          {"in_range", h.in_range},        {"coverage", h.coverage}};
}

json to_json(const DensityReport& d) {
  json padic = json::array();
  for (const auto& pc : d.padic) {
    json residues = json::object();
    for (const auto& [r, n] : pc.residues) residues[r.get_str()] = n;
    padic.push_back({{"p", pc.p},
                     {"k", pc.k},
                     {"modulus", pc.modulus.get_str()},
                     {"distinct_residues", pc.residues.size()},
                     {"coverage", pc.coverage},
                     {"non_integral", pc.non_integral},
                     {"residues", residues}});
  }
  json components = nullptr;
  if (d.components) {
    json regions = json::array();
    for (const auto& r : d.components->regions) {
      regions.push_back({{"region", r.description},
                         {"sign", r.sign},
                         {"count", r.count},
                         {"hit", r.count > 0},
                         {"grid_bins", r.grid_bins},
                         {"grid_hit", r.grid_hit},
                         {"coverage", r.coverage}});
    }
    components = {{"regions", regions}, {"on_boundary", d.components->on_boundary}};
  }
  return {{"distinct_params", d.distinct_params},
          {"real_histogram", to_json(d.real)},
          {"padic", padic},
          {"component_coverage", components}};
}

json to_json(const std::vector<Finding>& findings) {
  json out = json::array();
  for (const auto& f : findings) {
    out.push_back({{"severity", f.severity == Finding::Severity::Error ? "error" : "warning"}, {"message", f.message}});
  }
  return out;
}

FamilySpec family_from_json(const json& j, std::string id) {
  if (!j.is_object()) parse_fail("family must be a JSON object");
  const std::string kind = field(j, "kind", "family").is_string() ? j.at("kind").get<std::string>() : "";
  const std::string what = "family of kind '" + kind + "'";
  FamilyKind fk;
  if (kind == "twist_linear") {
    require_object(j, {"kind", "p", "generic_rank"}, what);
    fk = TwistLinear{poly_from_json(field(j, "p", what))};
  } else if (kind == "twist_quadratic") {
    require_object(j, {"kind", "c", "a", "p", "generic_rank"}, what);
    fk = TwistQuadratic{rat_from_json(field(j, "c", what)), rat_from_json(field(j, "a", what)),
                        poly_from_json(field(j, "p", what))};
  } else if (kind == "twist_poly") {
    require_object(j, {"kind", "d", "p", "generic_rank"}, what);
    fk = TwistPoly{poly_from_json(field(j, "d", what)), poly_from_json(field(j, "p", what))};
  } else if (kind == "cubic_pencil") {
    require_object(j, {"kind", "generic_rank"}, what);
    fk = CubicPencil{};
  } else if (kind == "weierstrass_pencil") {
    require_object(j, {"kind", "A", "B", "sections", "generic_rank"}, what);
    WeierstrassPencil wp{ratfunc_from_json(field(j, "A", what)), ratfunc_from_json(field(j, "B", what)), {}};
    const json& secs = j.contains("sections") ? j.at("sections") : json::array();
    if (!secs.is_array()) parse_fail("sections must be an array of [X, Y] pairs");
    for (const auto& s : secs) {
      if (!s.is_array() || s.size() != 2) parse_fail("each section must be a pair [X, Y]");
      wp.sections.emplace_back(ratfunc_from_json(s[0]), ratfunc_from_json(s[1]));
    }
    fk = std::move(wp);
  } else {
    parse_fail("unknown family kind '" + kind + "'");
  }
  FamilySpec f = FamilySpec::make(std::move(fk), std::move(id));
  if (j.contains("generic_rank")) {
    const json& r = j.at("generic_rank");
    if (!r.is_number_integer() || r.get<long>() < 0) parse_fail("generic_rank must be a nonnegative integer");
    f.declared_generic_rank = r.get<int>();
  }
  return f;
}

json to_json(const FamilySpec& f) {
  json out = {{"kind", f.kind_name()}};
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, TwistLinear>) {
          out["p"] = to_json(k.p);
        } else if constexpr (std::is_same_v<K, TwistQuadratic>) {
          out["c"] = to_json(k.c);
          out["a"] = to_json(k.a);
          out["p"] = to_json(k.p);
        } else if constexpr (std::is_same_v<K, TwistPoly>) {
          out["d"] = to_json(k.d);
          out["p"] = to_json(k.p);
        } else if constexpr (std::is_same_v<K, WeierstrassPencil>) {
          out["A"] = to_json(k.A);
          out["B"] = to_json(k.B);
          json secs = json::array();
          for (const auto& [x, y] : k.sections) secs.push_back({to_json(x), to_json(y)});
          out["sections"] = secs;
        }
      },
      f.kind);
  out["generic_rank"] = f.declared_generic_rank;
  return out;
}

std::string scan_csv(const ScanReport& r) {
  std::ostringstream out;
  out << "param,curve_A,curve_B,witness,n_sections,certified_rank_lb,jump,gram_det_lb,status\n";
  for (const auto& c : r.certificates) {
    out << c.param.to_string() << ',' << c.curve.A().to_string() << ',' << c.curve.B().to_string() << ','
        << csv_quote(c.witness.to_string()) << ',' << c.section_points.size() << ',' << c.certified_rank_lb << ','
        << (c.jump ? "true" : "false") << ','
        << (c.gram ? c.gram->det_lower_bound.to_string(12, 'D') : std::string()) << ',' << c.status() << '\n';
  }
  return out.str();
}

std::string histogram_csv(const Histogram& h) {
  std::ostringstream out;
  out << "bin_lo,bin_hi,count\n";
  for (int i = 0; i < h.bins; ++i) {
    out << h.bin_lo(i).to_string() << ',' << h.bin_hi(i).to_string() << ',' << h.counts[static_cast<std::size_t>(i)]
        << '\n';
  }
  return out.str();
}

}  // namespace rankjump::io
