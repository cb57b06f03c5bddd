#include "rankjump/interval.hpp"

#include <algorithm>
#include <cstdlib>

#include "rankjump/error.hpp"

namespace rankjump {

namespace {

mpfr_rnd_t rounding(char mode) {
  switch (mode) {
    case 'U': return MPFR_RNDU;
    case 'D': return MPFR_RNDD;
    default: return MPFR_RNDN;
  }
}

std::string take(char* s) {
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

}  // namespace

std::string BigFloat::to_string(int digits, char mode) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*R*g", digits, rounding(mode), v_);
  return take(s);
}

std::string BigFloat::to_fixed(int decimals, char mode) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*R*f", decimals, rounding(mode), v_);
  return take(s);
}

Interval Interval::from_mpz(const mpz_class& z, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_rat(const Rat& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_.get(), q.mpq().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), q.mpq().get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_double(double d, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_d(r.lo_.get(), d, MPFR_RNDD);
  mpfr_set_d(r.hi_.get(), d, MPFR_RNDU);
  return r;
}

Interval Interval::around(const BigFloat& mid, const BigFloat& rad) {
  const mpfr_prec_t prec = std::max(mid.precision(), rad.precision());
  Interval r(prec);
  mpfr_sub(r.lo_.get(), mid.get(), rad.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), mid.get(), rad.get(), MPFR_RNDU);
  return r;
}

Interval Interval::log2_constant(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_log2(r.lo_.get(), MPFR_RNDD);
  mpfr_const_log2(r.hi_.get(), MPFR_RNDU);
  return r;
}

BigFloat Interval::midpoint() const {
  BigFloat m(precision());
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

BigFloat Interval::radius() const {
  const BigFloat m = midpoint();
  BigFloat a(precision()), b(precision());
  mpfr_sub(a.get(), m.get(), lo_.get(), MPFR_RNDU);
  mpfr_sub(b.get(), hi_.get(), m.get(), MPFR_RNDU);
  return a < b ? b : a;
}

BigFloat Interval::width() const {
  BigFloat w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()));
  mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()));
  mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t prec = std::max(a.precision(), b.precision());
  Interval r(prec);
  mpfr_srcptr al = a.lo_.get(), ah = a.hi_.get(), bl = b.lo_.get(), bh = b.hi_.get();
  auto set = [&](mpfr_srcptr x1, mpfr_srcptr y1, mpfr_srcptr x2, mpfr_srcptr y2) {
    mpfr_mul(r.lo_.get(), x1, y1, MPFR_RNDD);
    mpfr_mul(r.hi_.get(), x2, y2, MPFR_RNDU);
    return r;
  };
  const int sa = mpfr_sgn(al) >= 0 ? 1 : (mpfr_sgn(ah) <= 0 ? -1 : 0);
  const int sb = mpfr_sgn(bl) >= 0 ? 1 : (mpfr_sgn(bh) <= 0 ? -1 : 0);
  if (sa == 1 && sb == 1) return set(al, bl, ah, bh);
  if (sa == 1 && sb == -1) return set(ah, bl, al, bh);
  if (sa == 1) return set(ah, bl, ah, bh);
  if (sa == -1 && sb == 1) return set(al, bh, ah, bl);
  if (sa == -1 && sb == -1) return set(ah, bh, al, bl);
  if (sa == -1) return set(al, bh, al, bl);
  if (sb == 1) return set(al, bh, ah, bh);
  if (sb == -1) return set(ah, bl, al, bl);
  // both straddle zero
  BigFloat t(prec);
  mpfr_mul(r.lo_.get(), al, bh, MPFR_RNDD);
  mpfr_mul(t.get(), ah, bl, MPFR_RNDD);
  mpfr_min(r.lo_.get(), r.lo_.get(), t.get(), MPFR_RNDD);
  mpfr_mul(r.hi_.get(), al, bl, MPFR_RNDU);
  mpfr_mul(t.get(), ah, bh, MPFR_RNDU);
  mpfr_max(r.hi_.get(), r.hi_.get(), t.get(), MPFR_RNDU);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw Error(ErrorKind::InvalidArgument, "interval division by an interval containing 0");
  const mpfr_prec_t prec = std::max(a.precision(), b.precision());
  Interval r(prec);
  BigFloat t(prec);
  const mpfr_srcptr as[2] = {a.lo_.get(), a.hi_.get()};
  const mpfr_srcptr bs[2] = {b.lo_.get(), b.hi_.get()};
  bool first = true;
  for (const auto x : as) {
    for (const auto y : bs) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval Interval::mul_2si(long e) const {
  Interval r(precision());
  mpfr_mul_2si(r.lo_.get(), lo_.get(), e, MPFR_RNDD);
  mpfr_mul_2si(r.hi_.get(), hi_.get(), e, MPFR_RNDU);
  return r;
}

Interval Interval::div_ui(unsigned long d) const {
  Interval r(precision());
  mpfr_div_ui(r.lo_.get(), lo_.get(), d, MPFR_RNDD);
  mpfr_div_ui(r.hi_.get(), hi_.get(), d, MPFR_RNDU);
  return r;
}

Interval Interval::abs() const {
  if (lo_.sign() >= 0) return *this;
  if (hi_.sign() <= 0) return -*this;
  Interval r(precision());
  mpfr_set_zero(r.lo_.get(), 1);
  if (mpfr_cmpabs(lo_.get(), hi_.get()) > 0) {
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  } else {
    mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
  }
  return r;
}

Interval Interval::log() const {
  if (lo_.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "log of an interval not strictly positive");
  Interval r(precision());
  mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::max(const Interval& a, const Interval& b) {
  Interval r(std::max(a.precision(), b.precision()));
  mpfr_max(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

std::string Interval::to_string(int digits) const {
  return "[" + lo_.to_string(digits, 'D') + ", " + hi_.to_string(digits, 'U') + "]";
}

}  // namespace rankjump
