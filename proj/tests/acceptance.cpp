// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "rankjump/cli.hpp"
#include "rankjump/density.hpp"
#include "rankjump/engine.hpp"
#include "rankjump/error.hpp"
#include "rankjump/serialize.hpp"
#include "support/oracles.hpp"

using namespace rankjump;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << v;
  return os.str();
}

fs::path work_dir() {
  static const fs::path dir = [] {
    const fs::path p = fs::temp_directory_path() / ("rankjump-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string write_family(const std::string& stem, const std::string& text) {
  const fs::path p = work_dir() / (stem + ".json");
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliRun {
  int code;
  std::string out, err;
  double seconds;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const auto t0 = std::chrono::steady_clock::now();
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str(), seconds_since(t0)};
}

// minimal CSV reader: commas, double-quoted fields without embedded quotes
std::vector<std::map<std::string, std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells{""};
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"') {
        quoted = !quoted;
      } else if (ch == ',' && !quoted) {
        cells.emplace_back();
      } else {
        cells.back() += ch;
      }
    }
    rows.push_back(cells);
  }
  std::vector<std::map<std::string, std::string>> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::map<std::string, std::string> r;
    for (std::size_t c = 0; c < rows[0].size() && c < rows[i].size(); ++c) r[rows[0][c]] = rows[i][c];
    out.push_back(r);
  }
  return out;
}

std::set<Rat> jump_params(const std::vector<std::map<std::string, std::string>>& rows) {
  std::set<Rat> out;
  for (const auto& r : rows) {
    if (r.at("jump") == "true") out.insert(Rat::parse(r.at("param")));
  }
  return out;
}

const std::map<std::string, std::string>* row_for(const std::vector<std::map<std::string, std::string>>& rows,
                                                   const std::string& param) {
  for (const auto& r : rows) {
    if (r.at("param") == param) return &r;
  }
  return nullptr;
}

// Outputs kept for the determinism check.
std::map<std::string, std::string> first_outputs;

std::string scan_into(const std::string& tag, const std::string& family, long bound, int jobs, CliRun& run) {
  const fs::path out = work_dir() / (tag + ".csv");
  run = cli({"scan", "--family", family, "--bound", std::to_string(bound), "--out", out.string(), "--jobs",
             std::to_string(jobs)});
  return out.string();
}

std::string bundle(const std::string& csv_path) {
  return slurp(csv_path) + "\n--\n" + slurp(csv_path + ".density.json") + "\n--\n" + slurp(csv_path + ".hist.csv");
}

// ---------------------------------------------------------------------------

// Integral curve through two integral points with x-coordinates one apart.
struct TwoPointCurve {
  CurveQ curve;
  PointQ p, q;
};

std::optional<TwoPointCurve> random_two_point_curve(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> xs(-12, 12), ys(1, 40);
  const long x1 = xs(rng), x2 = x1 + 1;
  const long y1 = ys(rng), y2 = ys(rng);
  // y1^2 - y2^2 = x1^3 - x2^3 + A (x1 - x2) with x1 - x2 = -1
  const long A = (x1 * x1 * x1 - x2 * x2 * x2) - (y1 * y1 - y2 * y2);
  const long B = y1 * y1 - x1 * x1 * x1 - A * x1;
  if (4 * A * A * A + 27 * B * B == 0) return std::nullopt;
  const CurveQ c{Rat(A), Rat(B)};
  return TwoPointCurve{c, PointQ(Rat(x1), Rat(y1)), PointQ(Rat(x2), Rat(y2))};
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  const std::uint64_t primes[] = {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61};
  long triples = 0, failures = 0, reductions = 0;
  int curves = 0;
  while (curves < 20) {
    const auto tc = random_two_point_curve(rng);
    if (!tc) continue;
    const CurveQ& c = tc->curve;
    std::vector<std::uint64_t> good;
    for (auto p : primes) {
      try {
        reduce_curve_mod_p(c, p);
        good.push_back(p);
      } catch (const Error&) {
      }
      if (good.size() == 3) break;
    }
    if (good.size() < 3) continue;
    ++curves;
    // small combinations i P + j Q
    std::vector<PointQ> pts;
    for (int i = -2; i <= 2; ++i) {
      for (int j = -2; j <= 2; ++j) pts.push_back(add(c, mul(c, i, tc->p), mul(c, j, tc->q)));
    }
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    for (int t = 0; t < 50; ++t) {
      const PointQ &P = pts[pick(rng)], &Q = pts[pick(rng)], &R = pts[pick(rng)];
      ++triples;
      bool ok = add(c, P, Q) == add(c, Q, P);
      ok = ok && add(c, add(c, P, Q), R) == add(c, P, add(c, Q, R));
      ok = ok && on_curve(c, add(c, P, Q));
      for (auto p : good) {
        const ModCurve mc = reduce_curve_mod_p(c, p);
        const ModPoint lhs = reduce_mod_p(c, add(c, P, Q), p);
        const ModPoint rhs = add(mc, reduce_mod_p(c, P, p), reduce_mod_p(c, Q, p));
        ok = ok && lhs == rhs;
        ++reductions;
      }
      if (!ok) ++failures;
    }
  }
  const double s = seconds_since(t0);
  return {failures == 0 && triples == 1000 && s < 30,
          std::to_string(curves) + " curves, " + std::to_string(triples) + " triples, " + std::to_string(reductions) +
              " reductions, " + std::to_string(failures) + " failures, " + fmt(s, 2) + " s"};
}

// ---------------------------------------------------------------------------

bool within(const HeightEstimate& big, double expected, double extra_err) {
  const double v = mpfr_get_d(big.value.get(), MPFR_RNDN);
  return std::fabs(v - expected) <= mpfr_get_d(big.error.get(), MPFR_RNDU) + extra_err;
}

Outcome criterion2() {
  std::mt19937_64 rng(2002);
  long quad_fail = 0, para_fail = 0, points = 0, pairs = 0;
  while (points < 100) {
    const auto tc = random_two_point_curve(rng);
    if (!tc) continue;
    const CurveQ& c = tc->curve;
    const PointQ &P = tc->p, &Q = tc->q;
    if (is_torsion(c, P) || is_torsion(c, Q)) continue;
    const double tol = 1e-4;
    const HeightEstimate hp = canonical_height(c, P, tol), h2p = canonical_height(c, dbl(c, P), tol);
    const double vp = mpfr_get_d(hp.value.get(), MPFR_RNDN), ep = mpfr_get_d(hp.error.get(), MPFR_RNDU);
    if (!within(h2p, 4 * vp, 4 * ep)) ++quad_fail;
    ++points;

    const HeightEstimate hq = canonical_height(c, Q, tol);
    const HeightEstimate hs = canonical_height(c, add(c, P, Q), tol);
    const HeightEstimate hd = canonical_height(c, sub(c, P, Q), tol);
    auto v = [](const HeightEstimate& h) { return mpfr_get_d(h.value.get(), MPFR_RNDN); };
    auto e = [](const HeightEstimate& h) { return mpfr_get_d(h.error.get(), MPFR_RNDU); };
    const double resid = std::fabs(v(hs) + v(hd) - 2 * v(hp) - 2 * v(hq));
    // the plain sum of the four error bounds, tighter than the weight-2 bound the algebra allows
    const double bound = e(hs) + e(hd) + e(hp) + e(hq);
    if (resid > bound) ++para_fail;
    ++pairs;
  }
  const CurveQ e37(Rat(-16), Rat(16));
  const HeightEstimate h = canonical_height(e37, PointQ(Rat(0), Rat(4)), 1e-5);
  const double oracle_value = oracle::doubling_height(Rat(-16), Rat(16), Rat(0), 12);
  const double value = mpfr_get_d(h.value.get(), MPFR_RNDN);
  const bool fixed = std::fabs(value - 0.0511114) <= 1e-4 && std::fabs(oracle_value - 0.0511114) <= 1e-4 &&
                     std::fabs(value - oracle_value) <= 1e-4;
  return {quad_fail == 0 && para_fail == 0 && fixed,
          std::to_string(points) + " points, " + std::to_string(pairs) + " pairs, residual failures " +
              std::to_string(quad_fail) + "/" + std::to_string(para_fail) + "; h(0,4) = " + fmt(value, 9) +
              ", oracle N=12 " + fmt(oracle_value, 9)};
}

// ---------------------------------------------------------------------------

Outcome criterion3() {
  const std::string fam = write_family("cubic_pencil", R"({"kind": "cubic_pencil"})");
  CliRun run{};
  const std::string out = scan_into("c3", fam, 12, 1, run);
  if (run.code != 0) return {false, "scan exited " + std::to_string(run.code) + ": " + run.err};
  first_outputs["3"] = bundle(out);
  const auto rows = read_csv(slurp(out));
  const auto jumps = jump_params(rows);
  const bool named = jumps.count(Rat(-5, 6)) == 1 && jumps.count(Rat(3, 4)) == 1;
  return {jumps.size() >= 30 && named && run.seconds < 120,
          std::to_string(jumps.size()) + " distinct certified params (need 30), -5/6 and 3/4 " +
              (named ? "present" : "MISSING") + ", " + fmt(run.seconds, 2) + " s"};
}

Outcome criterion4() {
  const std::string fam = write_family("twist_x3mx", R"({"kind": "twist_linear", "p": ["0", "-1", "0", "1"]})");
  CliRun run{};
  const std::string out = scan_into("c4", fam, 20, 1, run);
  if (run.code != 0) return {false, "scan exited " + std::to_string(run.code) + ": " + run.err};
  first_outputs["4"] = bundle(out);
  const auto rows = read_csv(slurp(out));
  std::set<mpz_class> classes;
  for (const Rat& q : jump_params(rows)) classes.insert(squarefree_part(q).squarefree);
  const auto* six = row_for(rows, "6");
  const bool six_ok = six != nullptr && six->at("witness") == "12,36" && six->at("jump") == "true";
  const json density = json::parse(slurp(out + ".density.json"));
  const double real = density.at("real_histogram").at("coverage").get<double>();
  double mod5 = -1;
  for (const auto& pc : density.at("padic")) {
    if (pc.at("p") == 5 && pc.at("k") == 1) mod5 = pc.at("coverage").get<double>();
  }
  return {classes.size() >= 50 && six_ok && real >= 0.6 && mod5 == 1.0,
          std::to_string(classes.size()) + " distinct square classes (need 50), t0=6 witness (12,36) " +
              (six_ok ? "present" : "MISSING") + ", real coverage " + fmt(real, 2) + " (need 0.60, heuristic), mod-5 " +
              fmt(mod5, 2) + ", " + fmt(run.seconds, 1) + " s"};
}

Outcome criterion5() {
  const std::string fam =
      write_family("twist_t2p1", R"({"kind": "twist_quadratic", "c": "1", "a": "-1", "p": ["1", "0", "0", "1"]})");
  CliRun run{};
  const std::string out = scan_into("c5", fam, 40, 1, run);
  if (run.code != 0) return {false, "scan exited " + std::to_string(run.code) + ": " + run.err};
  first_outputs["5"] = bundle(out);
  const auto rows = read_csv(slurp(out));
  const auto jumps = jump_params(rows);
  const auto* one = row_for(rows, "1");
  const bool one_ok = one != nullptr && one->at("witness") == "2,4" && one->at("curve_A") == "0" &&
                      one->at("curve_B") == "8" && one->at("jump") == "true";
  const json density = json::parse(slurp(out + ".density.json"));
  const json& regions = density.at("component_coverage").at("regions");
  const bool region_ok = regions.size() == 1 && regions[0].at("hit").get<bool>();
  return {one_ok && jumps.size() >= 10 && region_ok,
          std::string("lambda=1 witness (2,4) on Y^2=X^3+8 ") + (one_ok ? "present" : "MISSING") + ", " +
              std::to_string(jumps.size()) + " distinct certified params (need 10), sign regions " +
              std::to_string(regions.size()) + (region_ok ? " hit" : " NOT hit") + ", " + fmt(run.seconds, 1) + " s"};
}

Outcome criterion6() {
  const fs::path out = work_dir() / "c6.json";
  const CliRun run = cli({"billing", "--p", "0,-1,0,1", "--rank", "3", "--bound", "10", "--out", out.string()});
  if (run.code != 0) return {false, "billing exited " + std::to_string(run.code) + ": " + run.err};
  first_outputs["6"] = slurp(out);
  const json j = json::parse(slurp(out));
  const bool classes = j.at("classes") == json::array({"6", "15", "30"});
  std::vector<std::string> pts;
  for (const auto& w : j.at("witnesses")) pts.push_back(w.at("point").get<std::string>());
  const bool witnesses = pts == std::vector<std::string>{"12,36", "60,450", "150,1800"};
  // exact re-validation through the library, independent of the CLI run
  const BillingCertificate cert = billing_build(PolyQ({Rat(0), Rat(-1), Rat(0), Rat(1)}), 3, 10);
  const auto problems = revalidate_billing(cert);
  bool exact = problems.empty();
  for (const auto& w : cert.witnesses) {
    const Rat d(w.d.squarefree);
    exact = exact && w.point.y() * w.point.y() ==
                         w.point.x() * w.point.x() * w.point.x() - d * d * w.point.x();  // Y^2 = X^3 - d^2 X
  }
  return {classes && witnesses && exact && run.seconds < 60,
          std::string("classes ") + j.at("classes").dump() + ", witnesses " + (witnesses ? "match" : "DIFFER") +
              ", revalidation " + (exact ? "clean" : "FAILED") + ", " + fmt(run.seconds, 2) + " s"};
}

// ---------------------------------------------------------------------------

Outcome criterion7() {
  std::mt19937_64 rng(7007);
  int cases = 0, passed = 0;
  std::string first_failure;
  auto record = [&](bool ok, const std::string& what) {
    ++cases;
    if (ok) {
      ++passed;
    } else if (first_failure.empty()) {
      first_failure = what;
    }
  };
  // {P, 2P}: honest independent count 1
  while (cases < 20) {
    const auto tc = random_two_point_curve(rng);
    if (!tc || is_torsion(tc->curve, tc->p)) continue;
    const CurveQ& c = tc->curve;
    const GramCertificate g = gram_certify_escalating(c, {tc->p, dbl(c, tc->p)}, 1e-4);
    record(!g.certified && small_relation_search(c, {tc->p, dbl(c, tc->p)}, 2).has_value(), "{P, 2P}");
  }
  // {P, -P, Q}: honest independent count at most 2
  while (cases < 40) {
    const auto tc = random_two_point_curve(rng);
    if (!tc || is_torsion(tc->curve, tc->p)) continue;
    const CurveQ& c = tc->curve;
    const std::vector<PointQ> set{tc->p, neg(c, tc->p), tc->q};
    const GramCertificate g = gram_certify_escalating(c, set, 1e-4);
    record(!g.certified, "{P, -P, Q}");
  }
  // torsion witnesses through certify_fiber: (0, m) has order 3 on t y^2 = x^3 + m^2 at t = 1,
  // and (r, 0) has order 2 on t y^2 = x^3 - x at any t
  for (long m = 1; m <= 5; ++m) {
    const FamilySpec f = FamilySpec::make(TwistLinear{PolyQ({Rat(m * m), Rat(0), Rat(0), Rat(1)})}, "neg");
    const WitnessCertificate cert = certify_fiber(f, twist_witness(f, Rat(1), Rat(0), Rat(m)), 1e-4);
    record(!cert.jump && cert.witness_torsion && cert.certified_rank_lb == 0, "torsion (0, m)");
  }
  const FamilySpec x3mx = FamilySpec::make(TwistLinear{PolyQ({Rat(0), Rat(-1), Rat(0), Rat(1)})}, "neg");
  for (long t = 2; cases < 50; ++t) {
    const WitnessCertificate cert = certify_fiber(x3mx, twist_witness(x3mx, Rat(t), Rat(1), Rat(0)), 1e-4);
    record(!cert.jump && cert.witness_torsion, "torsion (1, 0)");
  }
  return {passed == cases && cases == 50, std::to_string(passed) + "/" + std::to_string(cases) + " constructed cases" +
                                              (first_failure.empty() ? "" : ", first failure: " + first_failure)};
}

Outcome criterion8() {
  const std::string fam = write_family("neron_pencil", R"({"kind": "weierstrass_pencil", "A": {"num": ["1"]},
      "B": {"num": ["0", "-1", "1", "-1"]}, "sections": [[{"num": ["0", "1"]}, {"num": ["0", "1"]}]]})");
  const CliRun run = cli({"neron", "--family", fam, "--bound", "15"});
  if (run.code != 0) return {false, "neron exited " + std::to_string(run.code) + ": " + run.err};
  const json j = json::parse(run.out);
  const double frac = j.at("not_certified_fraction").get<double>();
  return {frac < 0.2, "sampled " + std::to_string(j.at("sampled").get<long>()) + ", independent " +
                          std::to_string(j.at("certified_independent").get<long>()) + ", dependent " +
                          std::to_string(j.at("exact_dependent").size()) + ", inconclusive " +
                          std::to_string(j.at("inconclusive").size()) + ", not-certified fraction " + fmt(frac, 4) +
                          " (need < 0.2, heuristic)"};
}

Outcome criterion9() {
  struct Scan {
    const char* key;
    const char* family;
    long bound;
  };
  const Scan scans[] = {{"3", "cubic_pencil", 12}, {"4", "twist_x3mx", 20}, {"5", "twist_t2p1", 40}};
  std::vector<std::string> diffs;
  int compared = 0;
  for (const auto& s : scans) {
    if (!first_outputs.count(s.key)) {
      diffs.push_back(std::string("criterion ") + s.key + " produced no output");
      continue;
    }
    const std::string fam = (work_dir() / (std::string(s.family) + ".json")).string();
    for (int jobs : {4, 1}) {
      // the larger scan is repeated once with 4 workers only
      if (std::string(s.key) == "4" && jobs == 1) continue;
      CliRun run{};
      const std::string out = scan_into(std::string("c9_") + s.key + "_" + std::to_string(jobs), fam, s.bound, jobs, run);
      ++compared;
      if (run.code != 0 || bundle(out) != first_outputs[s.key]) {
        diffs.push_back(std::string("criterion ") + s.key + " jobs " + std::to_string(jobs));
      }
    }
  }
  if (first_outputs.count("6")) {
    const fs::path out = work_dir() / "c9_6.json";
    const CliRun run = cli({"billing", "--p", "0,-1,0,1", "--rank", "3", "--bound", "10", "--out", out.string()});
    ++compared;
    if (run.code != 0 || slurp(out) != first_outputs["6"]) diffs.push_back("criterion 6 rerun");
  } else {
    diffs.push_back("criterion 6 produced no output");
  }
  std::string detail = std::to_string(compared) + " reruns compared byte for byte";
  for (const auto& d : diffs) detail += "; differs: " + d;
  return {diffs.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}};
  int failed = 0;
  for (const auto& [n, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " | " << o.detail << std::endl;
  }
  std::error_code ec;
  fs::remove_all(work_dir(), ec);
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
