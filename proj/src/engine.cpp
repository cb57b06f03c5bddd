#include "rankjump/engine.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "parallel.hpp"
#include "rankjump/error.hpp"

namespace rankjump {

std::string WitnessCertificate::status() const {
  if (jump) return "jump";
  if (witness_torsion) return "torsion-witness";
  return "inconclusive";
}

GramCertificate gram_certify_escalating(const CurveQ& c, const std::vector<PointQ>& points, double tol) {
  GramCertificate first = gram_certify(c, points, tol);
  if (first.certified) return first;
  try {
    return gram_certify(c, points, tol / 10);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ToleranceUnreachable) throw;
    return first;
  }
}

namespace {

bool contains_point(const std::vector<PointQ>& pts, const PointQ& p) {
  return std::find(pts.begin(), pts.end(), p) != pts.end();
}

}  // namespace

WitnessCertificate certify_fiber(const FamilySpec& f, const TotalSpacePoint& w, double tol) {
  const Fiber fiber = fiber_at(f, w.param);
  WitnessCertificate cert{.family_id = f.id, .param = w.param, .curve = fiber.curve, .witness = w.witness};
  cert.declared_generic_rank = f.declared_generic_rank;
  if (!on_curve(fiber.curve, w.witness)) {
    throw Error(ErrorKind::PointNotOnCurve, "witness " + w.witness.to_string() + " is not on the fiber");
  }
  try {
    cert.section_points = specialize_sections(f, w.param);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::PoleAtPoint) {
      throw Error(ErrorKind::DegenerateFiber, "section pole at " + w.param.to_string());
    }
    throw;
  }

  std::vector<PointQ> sections;
  for (const auto& s : cert.section_points) {
    if (!is_torsion(fiber.curve, s) && !contains_point(sections, s)) sections.push_back(s);
  }
  cert.witness_torsion = is_torsion(fiber.curve, w.witness);

  auto try_set = [&](const std::vector<PointQ>& pts, const char* label) -> bool {
    GramCertificate g = gram_certify_escalating(fiber.curve, pts, tol);
    const bool ok = g.certified;
    if (ok && static_cast<int>(pts.size()) > cert.certified_rank_lb) {
      cert.certified_rank_lb = static_cast<int>(pts.size());
      cert.certified_set = label;
      cert.gram = std::move(g);
    } else if (!cert.gram) {
      cert.gram = std::move(g);
    }
    return ok;
  };

  cert.certified_set = "none";
  if (cert.witness_torsion) {
    if (!sections.empty()) try_set(sections, "sections");
  } else {
    std::vector<PointQ> full = sections;
    bool full_ok = false;
    if (!contains_point(full, w.witness) && full.size() < 8) {
      full.push_back(w.witness);
      full_ok = try_set(full, "full");
    }
    if (!full_ok) {
      // partial certificates: the witness alone, then the sections alone
      try_set({w.witness}, "witness");
      if (!sections.empty()) try_set(sections, "sections");
    }
  }
  cert.jump = cert.certified_rank_lb >= cert.declared_generic_rank + 1;
  return cert;
}

std::vector<Rat> ScanReport::certified_params() const {
  std::vector<Rat> out;
  for (const auto& c : certificates) {
    if (c.jump) out.push_back(c.param);
  }
  return out;
}

ScanReport scan(const FamilySpec& f, long bound, SearchMode mode, double tol, int jobs) {
  if (bound < 1) throw Error(ErrorKind::InvalidArgument, "scan needs bound >= 1");
  const WitnessStream stream = witness_stream(f, bound, mode);

  ScanReport report;
  report.family_id = f.id;
  report.family_kind = f.kind_name();
  report.bound = bound;
  report.mode = mode;
  report.mode_fell_back = stream.stats.fell_back_to_fiber_first;
  report.tol = tol;
  report.stats.candidates = static_cast<long>(stream.points.size());
  report.stats.degenerate = stream.stats.degenerate;
  report.stats.duplicates = stream.stats.duplicates;

  std::set<Rat> won;
  std::map<Rat, WitnessCertificate> kept;

  const std::size_t total = stream.points.size();
  const std::size_t block = 256 * static_cast<std::size_t>(std::max(jobs, 1));
  for (std::size_t start = 0; start < total; start += block) {
    const std::size_t end = std::min(total, start + block);
    std::vector<std::size_t> todo;
    for (std::size_t i = start; i < end; ++i) {
      if (won.count(stream.points[i].param) == 0) todo.push_back(i);
    }
    auto results = detail::parallel_map<WitnessCertificate>(todo.size(), jobs, [&](std::size_t k) {
      return certify_fiber(f, stream.points[todo[k]], tol);
    });

    // merge in enumeration order, exactly as a serial pass would
    std::size_t k = 0;
    for (std::size_t i = start; i < end; ++i) {
      const bool evaluated = k < todo.size() && todo[k] == i;
      auto* slot = evaluated ? &results[k++] : nullptr;
      const Rat& param = stream.points[i].param;
      if (won.count(param) != 0) {
        ++report.stats.skipped;
        continue;
      }
      if (slot->error) {
        try {
          std::rethrow_exception(slot->error);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::DegenerateFiber) {
            ++report.stats.degenerate;
            continue;
          }
          if (e.kind() == ErrorKind::ToleranceUnreachable) {
            ++report.stats.inconclusive;
            continue;
          }
          throw;
        }
      }
      WitnessCertificate& cert = *slot->value;
      if (cert.jump) {
        ++report.stats.certified;
        won.insert(param);
        kept.insert_or_assign(param, std::move(cert));
      } else {
        if (cert.witness_torsion) {
          ++report.stats.torsion_witness;
        } else {
          ++report.stats.inconclusive;
        }
        kept.try_emplace(param, std::move(cert));
      }
    }
  }

  for (auto& [param, cert] : kept) report.certificates.push_back(std::move(cert));
  std::stable_sort(report.certificates.begin(), report.certificates.end(),
                   [](const WitnessCertificate& a, const WitnessCertificate& b) {
                     return height_order_less(a.param, b.param);
                   });
  return report;
}

double NeronCheckReport::not_certified_fraction() const {
  if (sampled == 0) return 0.0;
  return static_cast<double>(sampled - certified_independent) / static_cast<double>(sampled);
}

namespace {

struct NeronSample {
  enum class Outcome { Degenerate, Independent, Dependent, Inconclusive } outcome = Outcome::Degenerate;
  std::vector<long> relation;
};

bool has_repeats(const std::vector<PointQ>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].is_infinity()) return true;
    for (std::size_t j = 0; j < i; ++j) {
      if (pts[i] == pts[j]) return true;
    }
  }
  return false;
}

}  // namespace

NeronCheckReport neron_check(const FamilySpec& f, long bound, double tol, int jobs) {
  const auto* pencil = f.pencil();
  if (pencil == nullptr) throw Error(ErrorKind::WrongFamilyKind, "neron_check needs a weierstrass_pencil family");
  if (pencil->sections.empty()) throw Error(ErrorKind::InvalidArgument, "neron_check needs at least one section");
  if (bound < 1) throw Error(ErrorKind::InvalidArgument, "neron_check needs bound >= 1");

  const std::vector<Rat> params = enumerate_rationals(bound);
  auto results = detail::parallel_map<NeronSample>(params.size(), jobs, [&](std::size_t i) {
    NeronSample s;
    std::optional<Fiber> fiber;
    std::vector<PointQ> pts;
    try {
      fiber = fiber_at(f, params[i]);
      pts = specialize_sections(f, params[i]);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DegenerateFiber || e.kind() == ErrorKind::PoleAtPoint) return s;
      throw;
    }
    if (!has_repeats(pts) && pts.size() <= 8) {
      if (gram_certify_escalating(fiber->curve, pts, tol).certified) {
        s.outcome = NeronSample::Outcome::Independent;
        return s;
      }
    }
    if (auto rel = small_relation_search(fiber->curve, pts, 12)) {
      s.outcome = NeronSample::Outcome::Dependent;
      s.relation = std::move(*rel);
    } else {
      s.outcome = NeronSample::Outcome::Inconclusive;
    }
    return s;
  });

  NeronCheckReport report;
  report.family_id = f.id;
  report.bound = bound;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (results[i].error) std::rethrow_exception(results[i].error);
    const NeronSample& s = *results[i].value;
    switch (s.outcome) {
      case NeronSample::Outcome::Degenerate:
        ++report.degenerate_skipped;
        continue;
      case NeronSample::Outcome::Independent:
        ++report.certified_independent;
        break;
      case NeronSample::Outcome::Dependent:
        report.exact_dependent.emplace_back(params[i], s.relation);
        break;
      case NeronSample::Outcome::Inconclusive:
        report.inconclusive.push_back(params[i]);
        break;
    }
    ++report.sampled;
  }
  return report;
}

namespace {

std::vector<Rat> billing_order(long bound) {
  std::vector<Rat> out;
  for (long n = 1; n <= bound; ++n) out.emplace_back(n);
  for (long n = 1; n <= bound; ++n) out.emplace_back(-n);
  for (const auto& q : enumerate_rationals(bound)) {
    if (!q.is_integer()) out.push_back(q);
  }
  return out;
}

}  // namespace

BillingCertificate billing_build(const PolyQ& p, int r, long bound, double tol) {
  if (r < 1) throw Error(ErrorKind::InvalidArgument, "billing_build needs r >= 1");
  if (bound < 1) throw Error(ErrorKind::InvalidArgument, "billing_build needs bound >= 1");
  const DepressedCubic dep = depress_cubic(p);
  if (!is_separable_cubic(p)) throw Error(ErrorKind::InvalidArgument, "p must be separable");

  BillingCertificate cert{.p = p, .curve = CurveQ(dep.A, dep.B), .r = r};
  for (const auto& x0 : billing_order(bound)) {
    if (static_cast<int>(cert.classes.size()) == r) break;
    ++cert.examined;
    const Rat value = p(x0);
    if (value.is_zero()) continue;
    SquareDecomposition sd = square_decompose(value);
    if (sd.cls.is_unit()) continue;  // bounds rank E(Q), not a new class

    std::vector<SquareClass> trial = cert.classes;
    trial.push_back(sd.cls);
    if (!square_class_independent(trial).independent) continue;

    const Rat d(sd.cls.squarefree);
    const CurveQ twist(dep.A * d * d, dep.B * d * d * d);
    const PointQ point(d * (x0 + dep.shift), d * d * sd.root);
    if (is_torsion(twist, point)) continue;
    GramCertificate g = gram_certify_escalating(twist, {point}, tol);
    if (!g.certified) continue;

    cert.classes.push_back(sd.cls);
    cert.witnesses.push_back({x0, sd.root, sd.cls, twist, point, g.heights.front()});
  }
  if (static_cast<int>(cert.classes.size()) < r) {
    throw Error(ErrorKind::SearchExhausted, "found " + std::to_string(cert.classes.size()) + " of " +
                                                std::to_string(r) + " independent classes within bound " +
                                                std::to_string(bound));
  }
  cert.independence = square_class_independent(cert.classes);
  cert.compositum_degree = 1L << cert.independence.rank;
  cert.rank_bound = r;
  return cert;
}

std::vector<std::string> revalidate_billing(const BillingCertificate& cert) {
  std::vector<std::string> problems;
  const DepressedCubic dep = depress_cubic(cert.p);
  if (cert.witnesses.size() != cert.classes.size()) problems.push_back("witness count differs from class count");
  for (const auto& w : cert.witnesses) {
    const Rat d(w.d.squarefree);
    if (cert.p(w.x0) != d * w.s * w.s) problems.push_back("p(x0) != d s^2 at x0 = " + w.x0.to_string());
    const CurveQ expected(dep.A * d * d, dep.B * d * d * d);
    if (!(expected == w.twist)) problems.push_back("twist curve mismatch for d = " + w.d.to_string());
    if (!on_curve(w.twist, w.point)) {
      problems.push_back("witness off its twist for d = " + w.d.to_string());
    } else if (is_torsion(w.twist, w.point)) {
      problems.push_back("torsion witness for d = " + w.d.to_string());
    }
    if (!(w.height.value.sign() > 0) || !(w.height.error < w.height.value)) {
      problems.push_back("height not certified positive for d = " + w.d.to_string());
    }
  }
  for (const auto& c : cert.classes) {
    if (c.is_unit()) problems.push_back("unit class");
  }
  if (!cert.classes.empty()) {
    const auto ind = square_class_independent(cert.classes);
    if (!ind.independent) problems.push_back("classes are dependent in Q*/Q*^2");
    if ((1L << ind.rank) != cert.compositum_degree) problems.push_back("compositum degree mismatch");
  }
  if (cert.rank_bound != static_cast<int>(cert.classes.size())) problems.push_back("rank bound != class count");
  return problems;
}

std::vector<std::string> revalidate_certificate(const WitnessCertificate& cert) {
  std::vector<std::string> problems;
  if (!on_curve(cert.curve, cert.witness)) problems.push_back("witness off curve");
  for (const auto& s : cert.section_points) {
    if (!on_curve(cert.curve, s)) problems.push_back("section point off curve");
  }
  if (cert.jump != (cert.certified_rank_lb >= cert.declared_generic_rank + 1)) problems.push_back("jump flag mismatch");
  if (cert.certified_rank_lb > 0) {
    if (!cert.gram || !cert.gram->certified) {
      problems.push_back("rank bound without a certified gram matrix");
    } else {
      const GramCertificate& g = *cert.gram;
      if (static_cast<int>(g.points.size()) != cert.certified_rank_lb) problems.push_back("gram size mismatch");
      if (!(g.det_lower_bound.sign() > 0)) problems.push_back("determinant lower bound not positive");
      for (const auto& p : g.points) {
        if (!on_curve(cert.curve, p)) problems.push_back("gram point off curve");
      }
      const Interval det = interval_determinant(g.entries);
      if (!det.strictly_positive()) problems.push_back("recomputed determinant not positive");
    }
  }
  return problems;
}

}  // namespace rankjump
