#ifndef RANKJUMP_POLY_HPP
#define RANKJUMP_POLY_HPP

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "rankjump/arith.hpp"

namespace rankjump {

/// Univariate polynomial over Q, ascending coefficients, no trailing zeros.
class PolyQ {
 public:
  PolyQ() = default;
  explicit PolyQ(std::vector<Rat> coeffs);
  PolyQ(std::initializer_list<Rat> coeffs) : PolyQ(std::vector<Rat>(coeffs)) {}
  static PolyQ constant(const Rat& c) { return PolyQ({c}); }
  static PolyQ x() { return PolyQ({Rat(0), Rat(1)}); }

  const std::vector<Rat>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Rat coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rat(0); }
  Rat leading() const { return coeffs_.empty() ? Rat(0) : coeffs_.back(); }

  Rat operator()(const Rat& at) const;
  PolyQ derivative() const;
  PolyQ monic() const;
  /// p(x + shift)
  PolyQ shifted(const Rat& shift) const;

  /// Human-readable form in the variable name given, e.g. "x^3 - x".
  std::string to_string(const std::string& var = "x") const;

  PolyQ operator-() const;
  friend PolyQ operator+(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator-(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator*(const Rat& c, const PolyQ& a);
  friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void strip();
  std::vector<Rat> coeffs_;
};

/// Quotient and remainder; throws on division by zero.
std::pair<PolyQ, PolyQ> divmod(const PolyQ& a, const PolyQ& b);
/// Monic gcd (zero if both are zero).
PolyQ gcd(const PolyQ& a, const PolyQ& b);

Rat poly_eval(const PolyQ& p, const Rat& at);

/// Element of Q(lambda): reduced, denominator monic.
class RatFunc {
 public:
  RatFunc() : num_(), den_(PolyQ::constant(1)) {}
  RatFunc(PolyQ num) : num_(std::move(num)), den_(PolyQ::constant(1)) {}  // NOLINT
  RatFunc(PolyQ num, PolyQ den);

  const PolyQ& numerator() const { return num_; }
  const PolyQ& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  /// Throws PoleAtPoint when the denominator vanishes at the point.
  Rat operator()(const Rat& at) const;

  std::string to_string(const std::string& var = "l") const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  PolyQ num_;
  PolyQ den_;
};

Rat ratfunc_eval(const RatFunc& f, const Rat& at);

/// Shift that depresses a monic cubic plus the resulting x^3 + A x + B.
struct DepressedCubic {
  Rat shift;  // a2 / 3: p(x) = X^3 + A X + B with X = x + shift
  Rat A;
  Rat B;
};

/// Requires degree 3 (WrongDegree) and monic (NotMonic).
DepressedCubic depress_cubic(const PolyQ& p);
/// -4A^3 - 27B^2 of the depressed form.
Rat cubic_discriminant(const PolyQ& p);
bool is_separable_cubic(const PolyQ& p);

}  // namespace rankjump

#endif  // RANKJUMP_POLY_HPP
