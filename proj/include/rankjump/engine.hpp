#ifndef RANKJUMP_ENGINE_HPP
#define RANKJUMP_ENGINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "rankjump/family.hpp"
#include "rankjump/height.hpp"
#include "rankjump/square_class.hpp"

namespace rankjump {

inline constexpr double kScanTolerance = 1e-4;
inline constexpr double kPointTolerance = 1e-6;

/// Per-fiber proof that rank X_m(Q) >= certified_rank_lb.
struct WitnessCertificate {
  std::string family_id;
  Rat param;
  CurveQ curve;
  std::vector<PointQ> section_points{};  // all specialized sections
  PointQ witness;
  bool witness_torsion = false;
  std::optional<GramCertificate> gram{};  // the certified set, or the last attempt
  std::string certified_set{};          // "full", "witness", "sections" or "none"
  int certified_rank_lb = 0;
  int declared_generic_rank = 0;
  bool jump = false;

  std::string status() const;
};

/// Gram certification with one retry at tol/10 when the determinant straddles 0.
GramCertificate gram_certify_escalating(const CurveQ& c, const std::vector<PointQ>& points, double tol);

/// Throws DegenerateFiber.
WitnessCertificate certify_fiber(const FamilySpec& f, const TotalSpacePoint& w, double tol);

struct ScanStats {
  long candidates = 0;
  long degenerate = 0;
  long duplicates = 0;
  long skipped = 0;  // param already certified by an earlier candidate
  long torsion_witness = 0;
  long certified = 0;
  long inconclusive = 0;
};

struct ScanReport {
  std::string family_id;
  std::string family_kind;
  long bound = 0;
  SearchMode mode = SearchMode::TotalFirst;
  bool mode_fell_back = false;
  double tol = kScanTolerance;
  /// One per distinct param: the first jump certificate, else the first attempt.
  std::vector<WitnessCertificate> certificates;
  ScanStats stats;

  std::vector<Rat> certified_params() const;
  long distinct_params() const { return static_cast<long>(certificates.size()); }
};

/// Output is independent of the worker count.
ScanReport scan(const FamilySpec& f, long bound, SearchMode mode, double tol = kScanTolerance, int jobs = 1);

struct NeronCheckReport {
  std::string family_id;
  long bound = 0;
  long sampled = 0;
  long certified_independent = 0;
  long degenerate_skipped = 0;
  std::vector<Rat> inconclusive;
  std::vector<std::pair<Rat, std::vector<long>>> exact_dependent;

  /// Share of sampled fibers not certified independent.
  double not_certified_fraction() const;
};

/// Requires a Weierstrass pencil with at least one declared section.
NeronCheckReport neron_check(const FamilySpec& f, long bound, double tol = kScanTolerance, int jobs = 1);

struct BillingWitness {
  Rat x0;
  Rat s;            // p(x0) = d s^2
  SquareClass d;
  CurveQ twist;     // Y^2 = X^3 + A d^2 X + B d^3
  PointQ point;     // (d (x0 + shift), d^2 s)
  HeightEstimate height;
};

/// rank E(Q(sqrt d_1, ..., sqrt d_r)) >= r through r independent twists of rank >= 1.
/// Rank over the multiquadratic field splits over its quadratic characters:
/// E(L) (x) Q = sum over square classes d in the span of E_d(Q) (x) Q, so r
/// independent classes with a non-torsion point on each twist give rank >= r
/// without computing in L.
struct BillingCertificate {
  PolyQ p;
  CurveQ curve;  // depressed y^2 = x^3 + A x + B
  int r = 0;
  std::vector<SquareClass> classes{};
  std::vector<BillingWitness> witnesses{};
  IndependenceResult independence{};
  long compositum_degree = 0;  // 2^rank of the F2 matrix
  int rank_bound = 0;
  long examined = 0;
};

/// Order of x0: integers 1..H, then -1..-H, then non-integral rationals of
/// height <= H. Throws SearchExhausted with fewer than r classes.
BillingCertificate billing_build(const PolyQ& p, int r, long bound, double tol = kScanTolerance);

/// Re-checks every claim of a Billing certificate exactly; empty when sound.
std::vector<std::string> revalidate_billing(const BillingCertificate& cert);

/// Soundness re-check of a witness certificate; empty when sound.
std::vector<std::string> revalidate_certificate(const WitnessCertificate& cert);

}  // namespace rankjump

#endif  // RANKJUMP_ENGINE_HPP
