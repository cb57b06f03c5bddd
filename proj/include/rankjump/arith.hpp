#ifndef RANKJUMP_ARITH_HPP
#define RANKJUMP_ARITH_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rankjump {

/// Exact rational number, always stored in lowest terms with positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rat(long n, long d);
  Rat(const mpz_class& n, const mpz_class& d = 1);
  explicit Rat(mpq_class q);

  /// Parses "num" or "num/den" (optional sign, decimal digits only).
  static Rat parse(std::string_view text);

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }
  const mpq_class& mpq() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  /// "num/den", den omitted when 1.
  std::string to_string() const;

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

Rat pow(const Rat& base, unsigned exponent);
Rat abs(const Rat& q);

/// Naive multiplicative height max(|num|, den).
mpz_class rat_height(const Rat& q);

/// Orders by (height, value); the canonical enumeration order everywhere.
bool height_order_less(const Rat& a, const Rat& b);

/// Every reduced u/v with max(|u|, v) <= max_height, in height_order_less order.
std::vector<Rat> enumerate_rationals(long max_height);

/// Nonnegative rational square root, if q is a square.
std::optional<Rat> is_rational_square(const Rat& q);

/// Prime factorization of |n| (n != 0) as ascending (prime, exponent) pairs.
/// Trial division up to 10^6, then Pollard rho (Brent) with Miller-Rabin.
std::vector<std::pair<mpz_class, unsigned>> factor(const mpz_class& n);

/// Primes below the given limit (cached sieve up to 10^6).
const std::vector<std::uint32_t>& small_primes();

}  // namespace rankjump

#endif  // RANKJUMP_ARITH_HPP
