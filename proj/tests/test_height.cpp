#include <doctest.h>

#include <random>

#include "rankjump/error.hpp"
#include "rankjump/height.hpp"
#include "support/oracles.hpp"

using namespace rankjump;

namespace {

PointQ pt(long x, long y) { return PointQ(Rat(x), Rat(y)); }

double d(const BigFloat& v) { return mpfr_get_d(v.get(), MPFR_RNDN); }

// |a - b| <= bound, all in MPFR with upward rounding on the bound side
bool within(const BigFloat& a, const BigFloat& b, const BigFloat& bound) {
  BigFloat diff(512);
  mpfr_sub(diff.get(), a.get(), b.get(), MPFR_RNDN);
  mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
  return diff <= bound;
}

BigFloat sum_up(std::initializer_list<const BigFloat*> xs) {
  BigFloat s(512);
  for (const auto* x : xs) mpfr_add(s.get(), s.get(), x->get(), MPFR_RNDU);
  return s;
}

}  // namespace

TEST_CASE("interval arithmetic encloses exact rational results") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> n(-1000000, 1000000);
  for (int i = 0; i < 2000; ++i) {
    const Rat a(n(rng), 1 + std::abs(n(rng)) % 997), b(n(rng), 1 + std::abs(n(rng)) % 991);
    const Interval ia = Interval::from_rat(a, 64), ib = Interval::from_rat(b, 64);
    auto inside = [](const Interval& v, const Rat& q) {
      return mpfr_cmp_q(v.lo().get(), q.mpq().get_mpq_t()) <= 0 && mpfr_cmp_q(v.hi().get(), q.mpq().get_mpq_t()) >= 0;
    };
    REQUIRE(inside(ia + ib, a + b));
    REQUIRE(inside(ia - ib, a - b));
    REQUIRE(inside(ia * ib, a * b));
    REQUIRE(inside(ia * ia, a * a));
    if (!b.is_zero()) REQUIRE(inside(ia / ib, a / b));
  }
  CHECK_THROWS_AS(Interval::from_rat(Rat(1), 64) / Interval::around(BigFloat(0.0, 64), BigFloat(1.0, 64)), Error);
}

TEST_CASE("duplication resultant has the closed form 2^8 (4a^3 + 27b^2)^2") {
  for (long a = -6; a <= 6; ++a) {
    for (long b = -6; b <= 6; ++b) {
      const mpz_class core = 4 * a * a * a + 27 * b * b;
      CHECK(abs(duplication_resultant(a, b)) == 256 * core * core);
    }
  }
}

TEST_CASE("canonical height of (0,4) on Y^2 = X^3 - 16X + 16") {
  const CurveQ c(Rat(-16), Rat(16));
  const HeightEstimate h = canonical_height(c, pt(0, 4), 1e-5);
  CHECK(d(h.error) <= 1e-5);
  CHECK(std::fabs(d(h.value) - 0.0511114) <= 1e-5);
  // independent exact doubling oracle at N = 12
  const double ref = oracle::doubling_height(Rat(-16), Rat(16), Rat(0), 12);
  CHECK(std::fabs(ref - 0.0511114) <= 1e-6);
  CHECK(std::fabs(d(h.value) - ref) <= d(h.error) + d(h.mu) / std::pow(4.0, 12));
  // the same point on an isomorphic model, (X, Y) -> (X/4, Y/8)
  const CurveQ scaled(Rat(-1), Rat(1, 4));
  const HeightEstimate h2 = canonical_height(scaled, PointQ(Rat(0), Rat(1, 2)), 1e-5);
  CHECK(std::fabs(d(h2.value) - d(h.value)) <= d(h.error) + d(h2.error));
}

TEST_CASE("canonical height agrees with the exact doubling oracle") {
  struct Case {
    long a, b, x, y;
  };
  for (const Case& k : {Case{-36, 0, 12, 36}, Case{-36, 0, -3, 9}, Case{0, -2, 3, 5}, Case{1, -6, 2, 2},
                        Case{0, 8, 1, 3}, Case{-16, 16, 4, 4}}) {
    const CurveQ c(Rat(k.a), Rat(k.b));
    const HeightEstimate h = canonical_height(c, pt(k.x, k.y), 1e-6);
    const int n = 8;
    const double ref = oracle::doubling_height(Rat(k.a), Rat(k.b), Rat(k.x), n);
    INFO("point (" << k.x << ", " << k.y << ")");
    CHECK(std::fabs(d(h.value) - ref) <= d(h.error) + d(h.mu) / std::pow(4.0, n) + 1e-12);
  }
}

TEST_CASE("height edge cases") {
  const CurveQ tors(Rat(0), Rat(1));
  const HeightEstimate h = canonical_height(tors, pt(2, 3), 1e-6);
  CHECK(std::fabs(d(h.value)) <= d(h.error));
  CHECK(canonical_height(tors, PointQ(), 1e-6).value.sign() == 0);
  CHECK_THROWS_AS(canonical_height(tors, pt(2, 4), 1e-6), Error);
  try {
    canonical_height(CurveQ(Rat(-16), Rat(16)), pt(0, 4), 1e-12);
    FAIL("expected ToleranceUnreachable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ToleranceUnreachable);
  }
  const CurveQ c(Rat(-36), Rat(0));
  const HeightEstimate two = canonical_height(c, dbl(c, pt(12, 36)), 1e-6);
  const HeightEstimate one = canonical_height(c, pt(12, 36), 1e-6);
  CHECK(std::fabs(d(two.value) - 4 * d(one.value)) <= d(two.error) + 4 * d(one.error));
}

TEST_CASE("property: quadraticity and parallelogram law on random points") {
  std::mt19937_64 rng(42);
  int checked = 0;
  while (checked < 40) {
    const auto cp = oracle::random_curve_point(rng, 20);
    const CurveQ c{Rat(cp.a), Rat(cp.b)};
    if (is_torsion(c, cp.p)) continue;
    const PointQ P = cp.p;
    const HeightEstimate hp = canonical_height(c, P, 1e-4);
    const HeightEstimate h2p = canonical_height(c, dbl(c, P), 1e-4);
    BigFloat four_hp(512), bound(512);
    mpfr_mul_ui(four_hp.get(), hp.value.get(), 4, MPFR_RNDN);
    mpfr_mul_ui(bound.get(), hp.error.get(), 4, MPFR_RNDU);
    mpfr_add(bound.get(), bound.get(), h2p.error.get(), MPFR_RNDU);
    REQUIRE(within(h2p.value, four_hp, bound));

    // second point on the same curve, if one is near
    for (long x = -30; x <= 30; ++x) {
      const auto y = is_rational_square(c.rhs(Rat(x)));
      if (!y || y->is_zero()) continue;
      const PointQ Q(Rat(x), *y);
      if (Q == P || Q == neg(c, P)) continue;
      const HeightEstimate hq = canonical_height(c, Q, 1e-4);
      const HeightEstimate hs = canonical_height(c, add(c, P, Q), 1e-4);
      const HeightEstimate hd = canonical_height(c, sub(c, P, Q), 1e-4);
      BigFloat lhs(512), rhs(512);
      mpfr_add(lhs.get(), hs.value.get(), hd.value.get(), MPFR_RNDN);
      mpfr_add(rhs.get(), hp.value.get(), hq.value.get(), MPFR_RNDN);
      mpfr_mul_ui(rhs.get(), rhs.get(), 2, MPFR_RNDN);
      const BigFloat errs = sum_up({&hs.error, &hd.error, &hp.error, &hp.error, &hq.error, &hq.error});
      REQUIRE(within(lhs, rhs, errs));
      break;
    }
    ++checked;
  }
}

TEST_CASE("height pairing") {
  const CurveQ c(Rat(-36), Rat(0));
  const PointQ P = pt(12, 36), Q = pt(-3, 9);
  const Interval pp = height_pairing(c, P, P, 1e-6);
  const Interval hp = canonical_height(c, P, 1e-6).enclosure();
  // the two enclosures overlap
  CHECK_FALSE((pp - hp).strictly_positive());
  CHECK_FALSE((hp - pp).strictly_positive());
  const Interval pq = height_pairing(c, P, Q, 1e-6);
  const Interval qp = height_pairing(c, Q, P, 1e-6);
  CHECK(mpfr_equal_p(pq.lo().get(), qp.lo().get()));
  CHECK(mpfr_equal_p(pq.hi().get(), qp.hi().get()));
  CHECK(height_pairing(c, P, PointQ(), 1e-6).contains_zero());
}

TEST_CASE("gram_certify") {
  const CurveQ c(Rat(-36), Rat(0));
  const PointQ P = pt(12, 36);
  const GramCertificate g = gram_certify(c, {P}, 1e-4);
  CHECK(g.certified);
  CHECK(g.det_lower_bound.sign() > 0);
  CHECK_FALSE(gram_certify(c, {P, dbl(c, P)}, 1e-4).certified);
  CHECK_FALSE(gram_certify(c, {P, pt(-3, 9)}, 1e-4).certified);  // rank 1 curve
  try {
    gram_certify(c, {}, 1e-4);
    FAIL("expected EmptyInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyInput);
  }
  CHECK_THROWS_AS(gram_certify(c, {pt(1, 1)}, 1e-4), Error);
  CHECK_THROWS_AS(gram_certify(c, {P, P}, 1e-4), Error);
  // (1, 2) and (2, 2) are independent here, and 2 (1, 2) + (-1, 4) is torsion
  const CurveQ rank2(Rat(-7), Rat(10));
  const GramCertificate g2 = gram_certify(rank2, {pt(1, 2), pt(2, 2)}, 1e-4);
  CHECK(g2.certified);
  CHECK_FALSE(gram_certify(rank2, {pt(1, 2), pt(2, 2), pt(-1, 4)}, 1e-4).certified);
  for (std::size_t i = 0; i < g2.entries.size(); ++i) {
    for (std::size_t j = 0; j < g2.entries.size(); ++j) {
      CHECK(mpfr_equal_p(g2.entries[i][j].lo().get(), g2.entries[j][i].lo().get()));
    }
  }
}

TEST_CASE("interval determinant of small exact matrices") {
  auto iv = [](long v) { return Interval::from_rat(Rat(v), 128); };
  const std::vector<std::vector<Interval>> m3{{iv(2), iv(1), iv(0)}, {iv(1), iv(3), iv(1)}, {iv(0), iv(1), iv(4)}};
  const Interval det3 = interval_determinant(m3);
  CHECK(mpfr_cmp_si(det3.lo().get(), 18) <= 0);
  CHECK(mpfr_cmp_si(det3.hi().get(), 18) >= 0);
  std::vector<std::vector<Interval>> m6(6, std::vector<Interval>(6, iv(0)));
  for (int i = 0; i < 6; ++i) {
    m6[i][i] = iv(i + 2);
    if (i > 0) m6[i][i - 1] = m6[i - 1][i] = iv(1);
  }
  // tridiagonal determinant by recurrence
  long prev = 1, cur = 2;
  for (int i = 1; i < 6; ++i) {
    const long next = (i + 2) * cur - prev;
    prev = cur;
    cur = next;
  }
  const Interval det6 = interval_determinant(m6);
  CHECK(mpfr_cmp_si(det6.lo().get(), cur) <= 0);
  CHECK(mpfr_cmp_si(det6.hi().get(), cur) >= 0);
}
