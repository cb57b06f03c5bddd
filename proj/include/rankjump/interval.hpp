#ifndef RANKJUMP_INTERVAL_HPP
#define RANKJUMP_INTERVAL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

#include "rankjump/arith.hpp"

namespace rankjump {

inline constexpr mpfr_prec_t kDefaultPrecision = 256;

/// Owning wrapper around an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = kDefaultPrecision) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(double d, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_d(v_, d, MPFR_RNDN); }
  BigFloat(const BigFloat& o) : BigFloat(mpfr_get_prec(o.v_)) { mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept : BigFloat(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }

  /// Scientific/general decimal string with the given significant digits.
  /// mode is one of 'N' (nearest), 'U' (toward +inf), 'D' (toward -inf).
  std::string to_string(int digits, char mode = 'N') const;
  /// Fixed-point decimal with `decimals` digits after the point.
  std::string to_fixed(int decimals, char mode = 'N') const;

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }

 private:
  mpfr_t v_;
};

/// Closed interval [lo, hi] with outward rounding on every operation.
class Interval {
 public:
  Interval() : Interval(kDefaultPrecision) {}
  explicit Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}
  Interval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

  static Interval from_mpz(const mpz_class& z, mpfr_prec_t prec = kDefaultPrecision);
  static Interval from_rat(const Rat& q, mpfr_prec_t prec = kDefaultPrecision);
  static Interval from_double(double d, mpfr_prec_t prec = kDefaultPrecision);
  /// [mid - rad, mid + rad]
  static Interval around(const BigFloat& mid, const BigFloat& rad);
  static Interval log2_constant(mpfr_prec_t prec = kDefaultPrecision);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool contains(const Interval& inner) const { return lo_ <= inner.lo_ && inner.hi_ <= hi_; }
  bool strictly_positive() const { return lo_.sign() > 0; }

  /// Upper bound of the radius, nearest midpoint.
  BigFloat midpoint() const;
  BigFloat radius() const;
  BigFloat width() const;

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws InvalidArgument when the divisor contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);

  Interval mul_2si(long e) const;
  Interval div_ui(unsigned long d) const;
  Interval abs() const;
  /// Natural log; requires lo > 0.
  Interval log() const;
  static Interval max(const Interval& a, const Interval& b);

  std::string to_string(int digits = 12) const;

 private:
  BigFloat lo_;
  BigFloat hi_;
};

}  // namespace rankjump

#endif  // RANKJUMP_INTERVAL_HPP
