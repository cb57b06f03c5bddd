#include "rankjump/curve.hpp"

#include <algorithm>
#include <map>

#include "rankjump/error.hpp"

namespace rankjump {

CurveQ::CurveQ(Rat A, Rat B) : A_(std::move(A)), B_(std::move(B)) {
  const Rat core = Rat(4) * A_ * A_ * A_ + Rat(27) * B_ * B_;
  if (core.is_zero()) {
    throw Error(ErrorKind::SingularCurve, "4A^3 + 27B^2 = 0 for A=" + A_.to_string() + ", B=" + B_.to_string());
  }
  disc_ = Rat(-16) * core;
  j_ = Rat(6912) * A_ * A_ * A_ / core;
}

Rat CurveQ::rhs(const Rat& x) const { return x * x * x + A_ * x + B_; }

std::string CurveQ::to_string() const {
  return "y^2 = x^3 + (" + A_.to_string() + ")*x + (" + B_.to_string() + ")";
}

std::string PointQ::to_string() const {
  if (!affine_) return "inf";
  return x_.to_string() + "," + y_.to_string();
}

PointQ PointQ::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "inf") return infinity();
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw Error(ErrorKind::ParseError, "point must be 'inf' or 'x,y'");
  return {Rat::parse(text.substr(0, comma)), Rat::parse(text.substr(comma + 1))};
}

bool operator<(const PointQ& a, const PointQ& b) {
  if (a.affine_ != b.affine_) return !a.affine_;
  if (!a.affine_) return false;
  if (a.x_ != b.x_) return a.x_ < b.x_;
  return a.y_ < b.y_;
}

bool on_curve(const CurveQ& c, const PointQ& p) {
  if (p.is_infinity()) return true;
  return p.y() * p.y() == c.rhs(p.x());
}

namespace {

void require_on(const CurveQ& c, const PointQ& p) {
  if (!on_curve(c, p)) throw Error(ErrorKind::PointNotOnCurve, p.to_string() + " is not on " + c.to_string());
}

PointQ add_unchecked(const CurveQ& c, const PointQ& p, const PointQ& q) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  const mpq_class& x1 = p.x().mpq();
  const mpq_class& y1 = p.y().mpq();
  const mpq_class& x2 = q.x().mpq();
  const mpq_class& y2 = q.y().mpq();
  mpq_class slope;
  if (x1 == x2) {
    if (y1 + y2 == 0) return PointQ::infinity();
    slope = (3 * x1 * x1 + c.A().mpq()) / (2 * y1);
  } else {
    slope = (y2 - y1) / (x2 - x1);
  }
  mpq_class x3 = slope * slope - x1 - x2;
  mpq_class y3 = slope * (x1 - x3) - y1;
  return {Rat(std::move(x3)), Rat(std::move(y3))};
}

PointQ neg_unchecked(const PointQ& p) {
  if (p.is_infinity()) return p;
  return {p.x(), -p.y()};
}

PointQ mul_unchecked(const CurveQ& c, long n, const PointQ& p) {
  if (n < 0) return neg_unchecked(mul_unchecked(c, -n, p));
  PointQ result;
  PointQ base = p;
  auto k = static_cast<unsigned long>(n);
  while (k > 0) {
    if (k & 1UL) result = add_unchecked(c, result, base);
    k >>= 1;
    if (k > 0) base = add_unchecked(c, base, base);
  }
  return result;
}

bool integral_point(const PointQ& p) { return p.is_infinity() || (p.x().is_integer() && p.y().is_integer()); }

std::uint64_t mod_of(const mpz_class& z, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e > 0) {
    if (e & 1U) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

std::uint64_t mod_of_rat(const Rat& q, std::uint64_t p) {
  return mulmod(mod_of(q.num(), p), invmod(mod_of(q.den(), p), p), p);
}

}  // namespace

PointQ add(const CurveQ& c, const PointQ& p, const PointQ& q) {
  require_on(c, p);
  require_on(c, q);
  return add_unchecked(c, p, q);
}

PointQ neg(const CurveQ& c, const PointQ& p) {
  require_on(c, p);
  return neg_unchecked(p);
}

PointQ sub(const CurveQ& c, const PointQ& p, const PointQ& q) {
  require_on(c, p);
  require_on(c, q);
  return add_unchecked(c, p, neg_unchecked(q));
}

PointQ dbl(const CurveQ& c, const PointQ& p) {
  require_on(c, p);
  return add_unchecked(c, p, p);
}

PointQ mul(const CurveQ& c, long n, const PointQ& p) {
  require_on(c, p);
  return mul_unchecked(c, n, p);
}

PointQ IntegralModel::map(const PointQ& p) const {
  if (p.is_infinity()) return p;
  const Rat u2 = scale * scale;
  return {u2 * p.x(), u2 * scale * p.y()};
}

IntegralModel integral_model(const CurveQ& c) {
  // v_p(u) = max(ceil(v_p(den A) / 4), ceil(v_p(den B) / 6)) for each prime p.
  std::map<mpz_class, unsigned> need;
  auto demand = [&need](const mpz_class& den, unsigned weight) {
    if (den == 1) return;
    for (const auto& [p, e] : factor(den)) {
      const unsigned k = (e + weight - 1) / weight;
      auto& slot = need[p];
      slot = std::max(slot, k);
    }
  };
  demand(c.A().den(), 4);
  demand(c.B().den(), 6);
  mpz_class u = 1;
  for (const auto& [p, k] : need) {
    mpz_class pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
    u *= pk;
  }
  const Rat ur(u);
  const Rat u2 = ur * ur;
  const Rat u4 = u2 * u2;
  return {CurveQ(u4 * c.A(), u4 * u2 * c.B()), ur};
}

bool is_torsion_integral(const CurveQ& integral, const PointQ& p) {
  PointQ q = p;
  for (int n = 1; n <= 12; ++n) {
    if (q.is_infinity()) return true;
    if (!integral_point(q)) return false;
    q = add_unchecked(integral, q, p);
  }
  return false;
}

bool is_torsion(const CurveQ& c, const PointQ& p) {
  require_on(c, p);
  if (p.is_infinity()) return true;
  const IntegralModel m = integral_model(c);
  return is_torsion_integral(m.curve, m.map(p));
}

ModCurve reduce_curve_mod_p(const CurveQ& c, std::uint64_t p) {
  if (p < 2 || p >= (std::uint64_t{1} << 31) || mpz_probab_prime_p(mpz_class(static_cast<unsigned long>(p)).get_mpz_t(), 30) == 0) {
    throw Error(ErrorKind::InvalidArgument, "modulus must be a prime below 2^31, got " + std::to_string(p));
  }
  const IntegralModel m = integral_model(c);
  if (mpz_divisible_ui_p(m.curve.discriminant().num().get_mpz_t(), p) != 0) {
    throw Error(ErrorKind::BadReduction, "p = " + std::to_string(p) + " divides the discriminant");
  }
  return {p, mod_of(m.curve.A().num(), p), mod_of(m.curve.B().num(), p)};
}

ModPoint reduce_mod_p(const CurveQ& c, const PointQ& pt, std::uint64_t p) {
  require_on(c, pt);
  reduce_curve_mod_p(c, p);
  if (pt.is_infinity()) return {};
  const IntegralModel m = integral_model(c);
  const PointQ q = m.map(pt);
  if (mpz_divisible_ui_p(q.x().den().get_mpz_t(), p) != 0) return {};
  return {false, mod_of_rat(q.x(), p), mod_of_rat(q.y(), p)};
}

bool on_curve(const ModCurve& c, const ModPoint& q) {
  if (q.infinity) return true;
  const std::uint64_t lhs = mulmod(q.y, q.y, c.p);
  const std::uint64_t rhs = (mulmod(mulmod(q.x, q.x, c.p), q.x, c.p) + mulmod(c.a, q.x, c.p) + c.b) % c.p;
  return lhs == rhs;
}

ModPoint add(const ModCurve& c, const ModPoint& p, const ModPoint& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  const std::uint64_t m = c.p;
  std::uint64_t slope = 0;
  if (p.x == q.x) {
    if ((p.y + q.y) % m == 0) return {};
    const std::uint64_t num = (3 * mulmod(p.x, p.x, m) + c.a) % m;
    slope = mulmod(num, invmod((2 * p.y) % m, m), m);
  } else {
    slope = mulmod((q.y + m - p.y) % m, invmod((q.x + m - p.x) % m, m), m);
  }
  const std::uint64_t x3 = (mulmod(slope, slope, m) + 2 * m - p.x - q.x) % m;
  const std::uint64_t y3 = (mulmod(slope, (p.x + m - x3) % m, m) + m - p.y) % m;
  return {false, x3, y3};
}

std::optional<std::vector<long>> small_relation_search(const CurveQ& c, const std::vector<PointQ>& points,
                                                       long bound) {
  if (bound < 1 || bound > 16) throw Error(ErrorKind::InvalidArgument, "relation bound must be in [1, 16]");
  for (const auto& p : points) require_on(c, p);
  if (points.empty()) return std::nullopt;
  const IntegralModel m = integral_model(c);
  const std::size_t k = points.size();

  // multiples[i][n] = n * P_i for 0 <= n <= bound
  std::vector<std::vector<PointQ>> multiples(k);
  for (std::size_t i = 0; i < k; ++i) {
    const PointQ base = m.map(points[i]);
    multiples[i].push_back(PointQ::infinity());
    for (long n = 1; n <= bound; ++n) multiples[i].push_back(add_unchecked(m.curve, multiples[i].back(), base));
  }

  std::vector<long> coeffs(k);
  for (long s = 1; s <= bound; ++s) {
    // every vector in [-s, s]^k, lexicographic, keeping those with max norm s
    std::fill(coeffs.begin(), coeffs.end(), -s);
    while (true) {
      long norm = 0;
      long first_nonzero = 0;
      for (const long v : coeffs) {
        norm = std::max(norm, v < 0 ? -v : v);
        if (first_nonzero == 0) first_nonzero = v;
      }
      if (norm == s && first_nonzero > 0) {
        PointQ sum;
        for (std::size_t i = 0; i < k; ++i) {
          const long n = coeffs[i];
          const PointQ& term = multiples[i][static_cast<std::size_t>(n < 0 ? -n : n)];
          sum = add_unchecked(m.curve, sum, n < 0 ? neg_unchecked(term) : term);
        }
        if (is_torsion_integral(m.curve, sum)) return coeffs;
      }
      std::size_t pos = k;
      while (pos > 0 && coeffs[pos - 1] == s) {
        coeffs[pos - 1] = -s;
        --pos;
      }
      if (pos == 0) break;
      ++coeffs[pos - 1];
    }
  }
  return std::nullopt;
}

}  // namespace rankjump
