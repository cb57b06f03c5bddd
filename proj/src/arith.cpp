#include "rankjump/arith.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "rankjump/error.hpp"

namespace rankjump {

Rat::Rat(long n, long d) {
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rat::Rat(const mpz_class& n, const mpz_class& d) {
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rat::Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

namespace {

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    negative = s[i] == '-';
    ++i;
  }
  if (i == s.size()) throw Error(ErrorKind::ParseError, "bad rational '" + std::string(whole) + "'");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
      throw Error(ErrorKind::ParseError, "bad rational '" + std::string(whole) + "'");
    }
  }
  mpz_class z(std::string(s.substr(i)), 10);
  return negative ? mpz_class(-z) : z;
}

}  // namespace

Rat Rat::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_integer(text, text));
  const mpz_class n = parse_integer(text.substr(0, slash), text);
  const mpz_class d = parse_integer(text.substr(slash + 1), text);
  if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rat(n, d);
}

std::string Rat::to_string() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
  q_ /= o.q_;
  return *this;
}

Rat pow(const Rat& base, unsigned exponent) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), exponent);
  return Rat(n, d);
}

Rat abs(const Rat& q) { return q.sign() < 0 ? -q : q; }

mpz_class rat_height(const Rat& q) {
  mpz_class n = ::abs(q.num());
  return n > q.den() ? n : q.den();
}

bool height_order_less(const Rat& a, const Rat& b) {
  const int c = cmp(rat_height(a), rat_height(b));
  if (c != 0) return c < 0;
  return a < b;
}

std::vector<Rat> enumerate_rationals(long max_height) {
  if (max_height < 1) throw Error(ErrorKind::InvalidArgument, "enumerate_rationals needs maxH >= 1");
  std::vector<Rat> out;
  for (long h = 1; h <= max_height; ++h) {
    std::vector<Rat> level;
    // denominator exactly h
    for (long u = -h; u <= h; ++u) {
      if (std::gcd(u < 0 ? -u : u, h) == 1) level.emplace_back(u, h);
    }
    // numerator exactly +-h, smaller denominator
    for (long v = 1; v < h; ++v) {
      if (std::gcd(h, v) == 1) {
        level.emplace_back(h, v);
        level.emplace_back(-h, v);
      }
    }
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::optional<Rat> is_rational_square(const Rat& q) {
  if (q.sign() < 0) return std::nullopt;
  if (q.is_zero()) return Rat(0);
  if (mpz_perfect_square_p(q.num().get_mpz_t()) == 0 || mpz_perfect_square_p(q.den().get_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.num().get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.den().get_mpz_t());
  return Rat(n, d);
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 1000000;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> ps;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      ps.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i) composite[j] = true;
    }
    return ps;
  }();
  return primes;
}

namespace {

bool is_probable_prime(const mpz_class& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

// Brent's variant of Pollard rho. n is odd, composite, without small factors.
mpz_class pollard_brent(const mpz_class& n) {
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto f = [&](mpz_class& v) {
      v = v * v + c;
      v %= n;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          f(y);
          q = (q * ::abs(mpz_class(x - y))) % n;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        f(ys);
        g = gcd(mpz_class(::abs(mpz_class(x - ys))), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_large(const mpz_class& n, std::vector<mpz_class>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out.push_back(n);
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t()) != 0) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    factor_large(r, out);
    factor_large(r, out);
    return;
  }
  const mpz_class d = pollard_brent(n);
  factor_large(d, out);
  factor_large(mpz_class(n / d), out);
}

}  // namespace

std::vector<std::pair<mpz_class, unsigned>> factor(const mpz_class& n) {
  if (n == 0) throw Error(ErrorKind::ZeroInput, "cannot factor 0");
  mpz_class m = ::abs(n);
  std::vector<std::pair<mpz_class, unsigned>> result;
  for (const std::uint32_t p : small_primes()) {
    if (m == 1) break;
    const mpz_class pz(p);
    if (pz * pz > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p) == 0) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    result.emplace_back(pz, e);
  }
  if (m != 1) {
    std::vector<mpz_class> large;
    const mpz_class bound = mpz_class(1000000) * 1000000;
    if (m < bound) {
      large.push_back(m);  // no factor below 10^6 and below 10^12: prime
    } else {
      factor_large(m, large);
    }
    std::sort(large.begin(), large.end());
    for (const auto& p : large) {
      if (!result.empty() && result.back().first == p) {
        ++result.back().second;
      } else {
        result.emplace_back(p, 1);
      }
    }
  }
  return result;
}

}  // namespace rankjump
