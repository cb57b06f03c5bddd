#include "rankjump/height.hpp"

#include <algorithm>
#include <array>

#include "rankjump/error.hpp"

namespace rankjump {

namespace {

Interval log_of_mpz(const mpz_class& z, mpfr_prec_t prec) {
  return Interval::from_mpz(::abs(z), prec).log();
}

// log max(|num|, den)
Interval log_height(const Rat& q, mpfr_prec_t prec) { return log_of_mpz(rat_height(q), prec); }

mpz_class bareiss_det(std::vector<std::vector<mpz_class>> m) {
  const std::size_t n = m.size();
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[r], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

struct DoublingForms {
  mpz_class a, b, a2;
};

// F = X^4 - 2a X^2 Z^2 - 8b X Z^3 + a^2 Z^4, G = 4Z (X^3 + a X Z^2 + b Z^3), mod m.
void forms_mod(const DoublingForms& f, const mpz_class& x, const mpz_class& z, const mpz_class& m,
               mpz_class& out_f, mpz_class& out_g) {
  mpz_class x2 = x * x % m;
  mpz_class z2 = z * z % m;
  mpz_class xz2 = x * z2 % m;
  mpz_class z3 = z * z2 % m;
  out_f = (x2 * x2 - 2 * f.a * (x2 * z2 % m) - 8 * f.b * (xz2 * z % m) + f.a2 * (z2 * z2 % m)) % m;
  out_g = (4 * z * ((x2 * x + f.a * xz2 + f.b * z3) % m)) % m;
  if (out_f < 0) out_f += m;
  if (out_g < 0) out_g += m;
}

struct IntervalForms {
  Interval a, b, a2;
};

void forms_interval(const IntervalForms& f, const Interval& x, const Interval& z, Interval& out_f,
                    Interval& out_g) {
  const Interval x2 = x * x;
  const Interval z2 = z * z;
  const Interval xz2 = x * z2;
  const Interval z3 = z * z2;
  out_f = x2 * x2 - (f.a * x2 * z2).mul_2si(1) - (f.b * xz2 * z).mul_2si(3) + f.a2 * z2 * z2;
  out_g = (z * (x2 * x + f.a * xz2 + f.b * z3)).mul_2si(2);
}

long top_exponent(const Interval& v) {
  long e = mpfr_get_exp(v.hi().get());
  if (mpfr_zero_p(v.hi().get()) != 0) e = mpfr_get_exp(v.lo().get());
  if (mpfr_zero_p(v.lo().get()) == 0) e = std::max<long>(e, mpfr_get_exp(v.lo().get()));
  return e;
}

struct DoublingOutcome {
  bool ok = false;
  Interval value;  // 4^-N log max(|X_N|, |Z_N|)
};

// One attempt at a fixed working precision.
DoublingOutcome doubling_limit(const CurveQ& integral, const PointQ& p, int doublings, mpfr_prec_t prec) {
  const mpz_class& a = integral.A().num();
  const mpz_class& b = integral.B().num();
  // equals |duplication_resultant(a, b)|
  const mpz_class disc = 4 * a * a * a + 27 * b * b;
  const mpz_class res = 256 * disc * disc;

  std::vector<mpz_class> res_pow(static_cast<std::size_t>(doublings) + 2);
  res_pow[0] = 1;
  for (std::size_t i = 1; i < res_pow.size(); ++i) res_pow[i] = res_pow[i - 1] * res;

  const DoublingForms exact{a, b, a * a};
  const IntervalForms approx{Interval::from_mpz(a, prec), Interval::from_mpz(b, prec),
                             Interval::from_mpz(mpz_class(a * a), prec)};

  const auto n_total = static_cast<std::size_t>(doublings);
  mpz_class xr = p.x().num() % res_pow[n_total + 1];
  mpz_class zr = p.x().den() % res_pow[n_total + 1];
  if (xr < 0) xr += res_pow[n_total + 1];

  Interval xi = Interval::from_mpz(p.x().num(), prec);
  Interval zi = Interval::from_mpz(p.x().den(), prec);
  long exponent = 0;  // (X, Z) = 2^exponent (xi, zi)
  {
    const long e = std::max(top_exponent(xi), top_exponent(zi));
    xi = xi.mul_2si(-e);
    zi = zi.mul_2si(-e);
    exponent = e;
  }

  mpz_class fr, gr, g;
  Interval fi(prec), gi(prec);
  for (std::size_t n = 0; n < n_total; ++n) {
    const mpz_class& modulus = res_pow[n_total + 1 - n];
    forms_mod(exact, xr, zr, modulus, fr, gr);
    mpz_class fr_small = fr % res;
    mpz_class gr_small = gr % res;
    g = gcd(gcd(fr_small, gr_small), res);
    mpz_divexact(fr.get_mpz_t(), fr.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(gr.get_mpz_t(), gr.get_mpz_t(), g.get_mpz_t());
    xr = fr % res_pow[n_total - n];
    zr = gr % res_pow[n_total - n];

    forms_interval(approx, xi, zi, fi, gi);
    if (g == 1) {
      xi = std::move(fi);
      zi = std::move(gi);
    } else {
      const Interval gdiv = Interval::from_mpz(g, prec);
      xi = fi / gdiv;
      zi = gi / gdiv;
    }
    exponent *= 4;
    if (xi.contains_zero() && zi.contains_zero()) return {};
    const long e = std::max(top_exponent(xi), top_exponent(zi));
    xi = xi.mul_2si(-e);
    zi = zi.mul_2si(-e);
    exponent += e;
  }

  const Interval mag = Interval::max(xi.abs(), zi.abs());
  if (!mag.strictly_positive()) return {};
  Interval logv = mag.log() + Interval::from_mpz(mpz_class(exponent), prec) * Interval::log2_constant(prec);
  return {true, logv.mul_2si(-2L * doublings)};
}

}  // namespace

BigFloat naive_height(const PointQ& p, mpfr_prec_t prec) {
  if (p.is_infinity()) return BigFloat(prec);
  BigFloat out(prec);
  const mpz_class h = rat_height(p.x());
  mpfr_set_z(out.get(), h.get_mpz_t(), MPFR_RNDN);
  mpfr_log(out.get(), out.get(), MPFR_RNDN);
  return out;
}

BigFloat height_difference_bound(const CurveQ& integral, mpfr_prec_t prec) {
  const Interval hj = log_height(integral.j_invariant(), prec);
  const Interval hd = log_height(integral.discriminant(), prec);
  const Interval mu = hj.div_ui(4) + hd.div_ui(6) + Interval::from_rat(Rat(214, 100), prec);
  return mu.hi();
}

mpz_class duplication_resultant(const mpz_class& a, const mpz_class& b) {
  // coefficients of X^4, X^3 Z, X^2 Z^2, X Z^3, Z^4
  const std::array<mpz_class, 5> f{1, 0, -2 * a, -8 * b, a * a};
  const std::array<mpz_class, 5> g{0, 4, 0, 4 * a, 4 * b};
  std::vector<std::vector<mpz_class>> m(8, std::vector<mpz_class>(8, 0));
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t i = 0; i < 5; ++i) {
      m[r][r + i] = f[i];
      m[r + 4][r + i] = g[i];
    }
  }
  return bareiss_det(std::move(m));
}

HeightEstimate canonical_height(const CurveQ& c, const PointQ& p, double tol) {
  if (!(tol > 0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  if (!on_curve(c, p)) throw Error(ErrorKind::PointNotOnCurve, p.to_string() + " is not on " + c.to_string());
  const IntegralModel model = integral_model(c);
  const PointQ q = model.map(p);

  HeightEstimate est;
  est.mu = height_difference_bound(model.curve, 64);  // an upper bound needs few bits

  // smallest N with mu / 4^N <= tol / 2
  BigFloat budget(kDefaultPrecision);
  mpfr_set_d(budget.get(), tol / 2, MPFR_RNDD);
  BigFloat tail = est.mu;
  int n = 0;
  while (budget < tail) {
    if (n == kMaxDoublings) {
      throw Error(ErrorKind::ToleranceUnreachable,
                  "tolerance needs more than " + std::to_string(kMaxDoublings) + " doublings (mu = " +
                      est.mu.to_string(8, 'U') + ")");
    }
    ++n;
    mpfr_div_2ui(tail.get(), tail.get(), 2, MPFR_RNDU);
  }
  est.doublings = n;

  if (q.is_infinity() || is_torsion_integral(model.curve, q)) {
    est.value = BigFloat(kDefaultPrecision);
    est.error = tail;
    return est;
  }

  BigFloat numeric_budget(kDefaultPrecision);
  mpfr_set_d(numeric_budget.get(), tol / 4, MPFR_RNDD);
  for (mpfr_prec_t prec = 128; prec <= 16384; prec *= 2) {
    const DoublingOutcome out = doubling_limit(model.curve, q, n, prec);
    if (!out.ok) continue;
    BigFloat rad = out.value.radius();
    if (numeric_budget < rad) continue;
    est.value = out.value.midpoint();
    est.error = BigFloat(kDefaultPrecision);
    mpfr_add(est.error.get(), rad.get(), tail.get(), MPFR_RNDU);
    if (est.value.precision() != kDefaultPrecision) {
      BigFloat v(kDefaultPrecision);
      mpfr_set(v.get(), est.value.get(), MPFR_RNDN);
      // rounding the midpoint costs at most one ulp at the default precision
      BigFloat slack(kDefaultPrecision);
      mpfr_sub(slack.get(), v.get(), est.value.get(), MPFR_RNDU);
      mpfr_abs(slack.get(), slack.get(), MPFR_RNDU);
      mpfr_add(est.error.get(), est.error.get(), slack.get(), MPFR_RNDU);
      est.value = v;
    }
    return est;
  }
  throw Error(ErrorKind::ToleranceUnreachable, "interval precision exhausted for " + p.to_string());
}

Interval height_pairing(const CurveQ& c, const PointQ& p, const PointQ& q, double tol) {
  const PointQ& first = q < p ? q : p;
  const PointQ& second = q < p ? p : q;
  const PointQ s = add(c, first, second);
  const Interval hs = canonical_height(c, s, tol).enclosure();
  const Interval h1 = canonical_height(c, first, tol).enclosure();
  const Interval h2 = canonical_height(c, second, tol).enclosure();
  return (hs - h1 - h2).mul_2si(-1);
}

namespace {

Interval cofactor_det(const std::vector<std::vector<Interval>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Interval acc = Interval::from_double(0.0, m[0][0].precision());
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::vector<Interval>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Interval> row;
      for (std::size_t cc = 0; cc < n; ++cc) {
        if (cc != col) row.push_back(m[r][cc]);
      }
      minor.push_back(std::move(row));
    }
    const Interval term = m[0][col] * cofactor_det(minor);
    acc = (col % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

Interval whole_line(mpfr_prec_t prec) {
  BigFloat lo(prec), hi(prec);
  mpfr_set_inf(lo.get(), -1);
  mpfr_set_inf(hi.get(), 1);
  return {lo, hi};
}

Interval bareiss_interval_det(std::vector<std::vector<Interval>> m) {
  const std::size_t n = m.size();
  const mpfr_prec_t prec = m[0][0].precision();
  Interval prev = Interval::from_double(1.0, prec);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    // Gram matrices have positive diagonal; a pivot that may vanish means
    // the enclosure is too wide to decide anything.
    if (m[k][k].contains_zero()) return whole_line(prec);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return m[n - 1][n - 1];
}

}  // namespace

Interval interval_determinant(const std::vector<std::vector<Interval>>& m) {
  if (m.empty()) throw Error(ErrorKind::EmptyInput, "determinant of an empty matrix");
  if (m.size() <= 4) return cofactor_det(m);
  if (m.size() <= 8) return bareiss_interval_det(m);
  throw Error(ErrorKind::InvalidArgument, "interval determinant supports at most 8x8");
}

GramCertificate gram_certify(const CurveQ& c, const std::vector<PointQ>& points, double tol) {
  if (points.empty()) throw Error(ErrorKind::EmptyInput, "gram_certify needs at least one point");
  if (points.size() > 8) throw Error(ErrorKind::InvalidArgument, "gram_certify supports at most 8 points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!on_curve(c, points[i])) {
      throw Error(ErrorKind::PointNotOnCurve, points[i].to_string() + " is not on " + c.to_string());
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (points[i] == points[j]) throw Error(ErrorKind::InvalidArgument, "repeated point " + points[i].to_string());
    }
  }
  GramCertificate cert;
  cert.points = points;
  cert.tol = tol;
  const std::size_t k = points.size();
  std::vector<Interval> diag;
  for (const auto& p : points) {
    cert.heights.push_back(canonical_height(c, p, tol));
    diag.push_back(cert.heights.back().enclosure());
  }
  cert.entries.assign(k, std::vector<Interval>(k));
  for (std::size_t i = 0; i < k; ++i) {
    cert.entries[i][i] = diag[i];
    for (std::size_t j = i + 1; j < k; ++j) {
      const PointQ& first = points[j] < points[i] ? points[j] : points[i];
      const PointQ& second = points[j] < points[i] ? points[i] : points[j];
      const Interval hs = canonical_height(c, add(c, first, second), tol).enclosure();
      const Interval pairing = (hs - diag[i] - diag[j]).mul_2si(-1);
      cert.entries[i][j] = pairing;
      cert.entries[j][i] = pairing;
    }
  }
  cert.determinant = interval_determinant(cert.entries);
  cert.det_lower_bound = cert.determinant.lo();
  cert.certified = cert.determinant.strictly_positive();
  return cert;
}

}  // namespace rankjump
