#ifndef RANKJUMP_CURVE_HPP
#define RANKJUMP_CURVE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rankjump/arith.hpp"

namespace rankjump {

/// y^2 = x^3 + A x + B over Q, nonsingular.
class CurveQ {
 public:
  /// Throws SingularCurve when 4A^3 + 27B^2 = 0.
  CurveQ(Rat A, Rat B);

  const Rat& A() const { return A_; }
  const Rat& B() const { return B_; }
  /// -16 (4A^3 + 27B^2)
  const Rat& discriminant() const { return disc_; }
  /// 6912 A^3 / (4A^3 + 27B^2)
  const Rat& j_invariant() const { return j_; }
  bool is_integral() const { return A_.is_integer() && B_.is_integer(); }

  /// x^3 + A x + B
  Rat rhs(const Rat& x) const;

  std::string to_string() const;

  friend bool operator==(const CurveQ& a, const CurveQ& b) { return a.A_ == b.A_ && a.B_ == b.B_; }

 private:
  Rat A_, B_, disc_, j_;
};

/// Point on some CurveQ: the point at infinity or an affine pair.
class PointQ {
 public:
  PointQ() = default;  // infinity
  PointQ(Rat x, Rat y) : affine_(true), x_(std::move(x)), y_(std::move(y)) {}
  static PointQ infinity() { return {}; }

  bool is_infinity() const { return !affine_; }
  const Rat& x() const { return x_; }
  const Rat& y() const { return y_; }

  /// "inf" or "x,y".
  std::string to_string() const;
  static PointQ parse(std::string_view text);

  friend bool operator==(const PointQ& a, const PointQ& b) {
    if (a.affine_ != b.affine_) return false;
    return !a.affine_ || (a.x_ == b.x_ && a.y_ == b.y_);
  }
  /// Infinity first, then by (x, y).
  friend bool operator<(const PointQ& a, const PointQ& b);

 private:
  bool affine_ = false;
  Rat x_, y_;
};

bool on_curve(const CurveQ& c, const PointQ& p);

/// Chord-tangent group law; all throw PointNotOnCurve on foreign points.
PointQ add(const CurveQ& c, const PointQ& p, const PointQ& q);
PointQ neg(const CurveQ& c, const PointQ& p);
PointQ sub(const CurveQ& c, const PointQ& p, const PointQ& q);
PointQ dbl(const CurveQ& c, const PointQ& p);
PointQ mul(const CurveQ& c, long n, const PointQ& p);

/// Isomorphic model with integer coefficients, (A, B) -> (u^4 A, u^6 B).
struct IntegralModel {
  CurveQ curve;
  Rat scale;  // u, a positive integer
  /// (x, y) -> (u^2 x, u^3 y)
  PointQ map(const PointQ& p) const;
};

IntegralModel integral_model(const CurveQ& c);

/// Exact screen: n P = O for some 1 <= n <= 12, decided on the integral model.
/// Stops early once a multiple has non-integral coordinates (Nagell-Lutz).
bool is_torsion(const CurveQ& c, const PointQ& p);

/// Same screen, for a point already on an integral curve; no validation.
bool is_torsion_integral(const CurveQ& integral, const PointQ& p);

/// y^2 = x^3 + a x + b over F_p.
struct ModCurve {
  std::uint64_t p = 0, a = 0, b = 0;
};

struct ModPoint {
  bool infinity = true;
  std::uint64_t x = 0, y = 0;
  friend bool operator==(const ModPoint&, const ModPoint&) = default;
};

/// Reduction of the integral model; BadReduction when p divides its discriminant.
ModCurve reduce_curve_mod_p(const CurveQ& c, std::uint64_t p);
/// Reduction of the point through the integral model. Points that are not
/// p-integral reduce to infinity.
ModPoint reduce_mod_p(const CurveQ& c, const PointQ& pt, std::uint64_t p);

bool on_curve(const ModCurve& c, const ModPoint& p);
ModPoint add(const ModCurve& c, const ModPoint& p, const ModPoint& q);

/// Smallest-norm integer vector (|n_i| <= bound) with sum n_i P_i torsion,
/// first nonzero entry positive. Exhaustive over the box; bound <= 16.
std::optional<std::vector<long>> small_relation_search(const CurveQ& c, const std::vector<PointQ>& points,
                                                       long bound);

}  // namespace rankjump

#endif  // RANKJUMP_CURVE_HPP
