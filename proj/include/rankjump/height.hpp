#ifndef RANKJUMP_HEIGHT_HPP
#define RANKJUMP_HEIGHT_HPP

#include <vector>

#include "rankjump/curve.hpp"
#include "rankjump/interval.hpp"

namespace rankjump {

/// Canonical height estimate: the true value lies in [value - error, value + error].
struct HeightEstimate {
  BigFloat value;
  BigFloat error;
  int doublings = 0;  // N in 4^-N h(2^N P)
  BigFloat mu;        // curve constant bounding |h_can - h_naive|

  Interval enclosure() const { return Interval::around(value, error); }
};

/// log max(|u|, v) for x(P) = u/v; 0 at infinity.
BigFloat naive_height(const PointQ& p, mpfr_prec_t prec = kDefaultPrecision);

/// Upper bound for |h_can(P) - h(x(P))| on the integral model of c, with
/// h_can normalized as lim 4^-N h(x(2^N P)).
///
/// Silverman (Math. Comp. 55, 1990, Thm 1.1) bounds the half-normalized
/// height: -h(j)/8 - h(Delta)/12 - 0.973 <= h_can/2 - h(x)/2 <= h(j)/12 +
/// h(Delta)/12 + 1.07 for integral Weierstrass models. Doubling both sides
/// and taking the larger coefficient on each term gives
///     mu = h(j)/4 + h(Delta)/6 + 2.14.
BigFloat height_difference_bound(const CurveQ& integral, mpfr_prec_t prec = kDefaultPrecision);

/// Largest number of doublings canonical_height will perform.
inline constexpr int kMaxDoublings = 14;

/// 4^-N h(x(2^N P)) on the integral model with the smallest N such that
/// mu / 4^N <= tol / 2. The coordinates of 2^N P are never expanded: the
/// numerator/denominator magnitudes are carried as MPFR intervals and the
/// common factor removed at each doubling (a divisor of the resultant of
/// the duplication polynomials) is computed exactly from residues modulo
/// powers of that resultant. Throws ToleranceUnreachable when N would
/// exceed kMaxDoublings.
HeightEstimate canonical_height(const CurveQ& c, const PointQ& p, double tol);

/// Homogeneous resultant of the duplication numerator and denominator
/// forms for an integral short Weierstrass curve.
mpz_class duplication_resultant(const mpz_class& a, const mpz_class& b);

/// <P, Q> = (h(P + Q) - h(P) - h(Q)) / 2 as a guaranteed enclosure.
Interval height_pairing(const CurveQ& c, const PointQ& p, const PointQ& q, double tol);

struct GramCertificate {
  std::vector<PointQ> points;
  std::vector<HeightEstimate> heights;        // h_can(P_i)
  std::vector<std::vector<Interval>> entries;  // symmetric pairing matrix
  Interval determinant;
  BigFloat det_lower_bound;
  bool certified = false;
  double tol = 0;
};

/// Determinant of a symmetric interval matrix: cofactor expansion up to
/// 4x4, fraction-free elimination (Bareiss) up to 8x8.
Interval interval_determinant(const std::vector<std::vector<Interval>>& m);

/// Throws EmptyInput or PointNotOnCurve. Repeated points or more than 8
/// points are InvalidArgument.
GramCertificate gram_certify(const CurveQ& c, const std::vector<PointQ>& points, double tol);

}  // namespace rankjump

#endif  // RANKJUMP_HEIGHT_HPP
