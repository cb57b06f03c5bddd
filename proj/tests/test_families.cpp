#include <doctest.h>

#include <functional>
#include <set>

#include "rankjump/error.hpp"
#include "rankjump/family.hpp"

using namespace rankjump;

namespace {

PolyQ poly(std::initializer_list<long> c) {
  std::vector<Rat> v;
  for (long x : c) v.emplace_back(x);
  return PolyQ(std::move(v));
}

RatFunc rf(std::initializer_list<long> num) { return RatFunc(poly(num)); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

FamilySpec twist_linear() { return FamilySpec::make(TwistLinear{poly({0, -1, 0, 1})}, "tl"); }
FamilySpec twist_quadratic() { return FamilySpec::make(TwistQuadratic{Rat(1), Rat(-1), poly({1, 0, 0, 1})}, "tq"); }
FamilySpec cubic() { return FamilySpec::make(CubicPencil{}, "cubic"); }

// A = 1, B = l^2 - l^3 - l with section (l, l)
FamilySpec pencil() {
  return FamilySpec::make(WeierstrassPencil{rf({1}), rf({0, -1, 1, -1}), {{rf({0, 1}), rf({0, 1})}}}, "np");
}

bool mentions(const std::vector<Finding>& fs, const std::string& word) {
  for (const auto& f : fs) {
    if (f.message.find(word) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("validate_family") {
  CHECK(validate_family(twist_linear()).empty());
  CHECK(validate_family(twist_quadratic()).empty());
  CHECK(validate_family(pencil()).empty());
  CHECK(validate_family(cubic()).empty());
  CHECK(pencil().declared_generic_rank == 1);
  CHECK(twist_linear().declared_generic_rank == 0);

  const auto cusp = validate_family(FamilySpec::make(TwistLinear{poly({0, 0, 0, 1})}));
  CHECK(has_errors(cusp));
  CHECK(mentions(cusp, "separable"));
  CHECK(has_errors(validate_family(FamilySpec::make(TwistLinear{poly({0, -1, 0, 2})}))));
  CHECK(has_errors(validate_family(FamilySpec::make(TwistLinear{poly({0, -1, 1})}))));

  const auto a0 = validate_family(FamilySpec::make(TwistQuadratic{Rat(1), Rat(0), poly({1, 0, 0, 1})}));
  CHECK(has_errors(a0));
  CHECK(mentions(a0, "separable"));
  CHECK(has_errors(validate_family(FamilySpec::make(TwistQuadratic{Rat(0), Rat(2), poly({1, 0, 0, 1})}))));

  // a wrong section and a vanishing discriminant
  const auto bad = validate_family(
      FamilySpec::make(WeierstrassPencil{rf({1}), rf({0, -1, 1, -1}), {{rf({0, 1}), rf({1, 1})}}}));
  CHECK(has_errors(bad));
  CHECK(mentions(bad, "section 0"));
  CHECK(has_errors(validate_family(FamilySpec::make(WeierstrassPencil{rf({}), rf({}), {}}))));

  // warnings alone are not errors
  const auto flat = validate_family(FamilySpec::make(TwistPoly{poly({3}), poly({0, -1, 0, 1})}));
  CHECK_FALSE(flat.empty());
  CHECK_FALSE(has_errors(flat));
}

TEST_CASE("fiber_at") {
  CHECK(fiber_at(twist_linear(), Rat(6)).curve == CurveQ(Rat(-36), Rat(0)));
  CHECK(fiber_at(twist_quadratic(), Rat(1)).curve == CurveQ(Rat(0), Rat(8)));
  CHECK(fiber_at(cubic(), Rat(-5, 6)).curve == CurveQ(Rat(0), Rat(-8281, 108)));
  CHECK(fiber_at(pencil(), Rat(2)).curve == CurveQ(Rat(1), Rat(-6)));

  CHECK(kind_of([] { fiber_at(twist_linear(), Rat(0)); }) == ErrorKind::DegenerateFiber);
  CHECK(kind_of([] { fiber_at(cubic(), Rat(-1)); }) == ErrorKind::DegenerateFiber);
  // d(t) = t^2 - 1 vanishes at the roots
  const FamilySpec tq = FamilySpec::make(TwistQuadratic{Rat(1), Rat(1), poly({1, 0, 0, 1})});
  CHECK(kind_of([&] { fiber_at(tq, Rat(-1)); }) == ErrorKind::DegenerateFiber);
  // pole of A
  const FamilySpec pole =
      FamilySpec::make(WeierstrassPencil{RatFunc(poly({1}), poly({0, 1})), rf({1}), {}});
  CHECK(kind_of([&] { fiber_at(pole, Rat(0)); }) == ErrorKind::DegenerateFiber);
  // A = l - 3, B = 2 is singular exactly at l = 0
  const FamilySpec node = FamilySpec::make(WeierstrassPencil{rf({-3, 1}), rf({2}), {}});
  CHECK(kind_of([&] { fiber_at(node, Rat(0)); }) == ErrorKind::DegenerateFiber);
  CHECK_NOTHROW(fiber_at(node, Rat(1)));

  // depressed cubic: p = (x-1)(x-2)(x-3) shifts by 2
  const FamilySpec shifted = FamilySpec::make(TwistLinear{poly({-6, 11, -6, 1})});
  CHECK(fiber_at(shifted, Rat(1)).curve == CurveQ(Rat(-1), Rat(0)));
}

TEST_CASE("twist_witness") {
  const TotalSpacePoint w = twist_witness(twist_linear(), Rat(6), Rat(2), Rat(1));
  CHECK(w.witness == PointQ(Rat(12), Rat(36)));
  const TotalSpacePoint q = twist_witness(twist_quadratic(), Rat(1), Rat(1), Rat(1));
  CHECK(q.witness == PointQ(Rat(2), Rat(4)));
  CHECK(kind_of([] { twist_witness(twist_linear(), Rat(6), Rat(2), Rat(2)); }) == ErrorKind::NotOnTotalSpace);
  // shifted cubic: the witness picks up the depression shift
  const FamilySpec shifted = FamilySpec::make(TwistLinear{poly({-6, 11, -6, 1})});
  const TotalSpacePoint s = twist_witness(shifted, Rat(6), Rat(4), Rat(1));
  CHECK(on_curve(fiber_at(shifted, Rat(6)).curve, s.witness));
  CHECK(s.witness == PointQ(Rat(12), Rat(36)));
}

TEST_CASE("cubic_witness") {
  const TotalSpacePoint w = cubic_witness(Rat(-5, 6), Rat(-1, 2), Rat(-2, 3));
  CHECK(w.witness == PointQ(Rat(13, 3), Rat(13, 6)));
  const TotalSpacePoint v = cubic_witness(Rat(3, 4), Rat(5, 4), Rat(-3, 2));
  CHECK_FALSE(v.witness.is_infinity());
  CHECK(fiber_at(cubic(), Rat(3, 4)).curve == CurveQ(Rat(0), Rat(-432) * Rat(91, 64) * Rat(91, 64)));
  CHECK(on_curve(fiber_at(cubic(), Rat(3, 4)).curve, v.witness));
  CHECK(kind_of([] { cubic_witness(Rat(-5, 6), Rat(1), Rat(1)); }) == ErrorKind::NotOnTotalSpace);
  CHECK(kind_of([] { cubic_witness(Rat(-5, 6), Rat(1), Rat(-1)); }) == ErrorKind::LineAtInfinity);
  CHECK(kind_of([] { cubic_witness(Rat(-1), Rat(1), Rat(2)); }) == ErrorKind::DegenerateFiber);
}

TEST_CASE("euler_parametrize") {
  const auto e10 = euler_parametrize(1, 0);
  REQUIRE(e10.has_value());
  CHECK(e10->param == Rat(-5, 6));
  CHECK(e10->x == Rat(-1, 2));
  CHECK(e10->y == Rat(-2, 3));
  const auto e01 = euler_parametrize(0, 1);
  REQUIRE(e01.has_value());
  CHECK(e01->param == Rat(3, 4));
  CHECK(e01->x == Rat(5, 4));
  CHECK(e01->y == Rat(-3, 2));
  CHECK(kind_of([] { euler_parametrize(0, 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("property: Euler points lie on the total space") {
  for (long a = -15; a <= 15; ++a) {
    for (long b = -15; b <= 15; ++b) {
      if (a == 0 && b == 0) continue;
      const auto e = euler_parametrize(a, b);
      if (!e) continue;
      const Rat lhs = e->x * e->x * e->x + e->y * e->y * e->y;
      const Rat l3 = e->param * e->param * e->param;
      REQUIRE(lhs == Rat(0) - (l3 + Rat(1)));
    }
  }
}

TEST_CASE("specialize_sections") {
  CHECK(specialize_sections(pencil(), Rat(2)) == std::vector<PointQ>{PointQ(Rat(2), Rat(2))});
  CHECK(specialize_sections(pencil(), Rat(0)) == std::vector<PointQ>{PointQ(Rat(0), Rat(0))});
  CHECK(fiber_at(pencil(), Rat(0)).curve == CurveQ(Rat(1), Rat(0)));
  // X = 1/l has a pole at 0; A, B chosen so the section is valid: B = 1/l^2 - 1/l^3 - 1/l
  const RatFunc inv(poly({1}), poly({0, 1}));
  const FamilySpec p2 = FamilySpec::make(WeierstrassPencil{rf({1}), inv * inv - inv * inv * inv - inv, {{inv, inv}}});
  CHECK_FALSE(has_errors(validate_family(p2)));
  CHECK(kind_of([&] { specialize_sections(p2, Rat(0)); }) == ErrorKind::DegenerateFiber);
  // pole only in the section: 2 (l, l) meets the zero section at l = 0, where (0, 0) has order 2
  const RatFunc slope = RatFunc(poly({1, 0, 3}), poly({0, 2}));
  const RatFunc X2 = slope * slope - rf({0, 2});
  const RatFunc Y2 = slope * (rf({0, 1}) - X2) - rf({0, 1});
  const FamilySpec p4 = FamilySpec::make(WeierstrassPencil{rf({1}), rf({0, -1, 1, -1}), {{X2, Y2}}});
  CHECK(validate_family(p4).empty());
  CHECK_NOTHROW(fiber_at(p4, Rat(0)));
  CHECK(kind_of([&] { specialize_sections(p4, Rat(0)); }) == ErrorKind::PoleAtPoint);
}

TEST_CASE("property: specialized sections match direct evaluation") {
  const FamilySpec f = pencil();
  for (const Rat& l : enumerate_rationals(8)) {
    const auto pts = specialize_sections(f, l);
    REQUIRE(pts.size() == 1);
    const Rat A(1), B = l * l - l * l * l - l;
    const Rat x = l, y = l;
    REQUIRE(pts[0] == PointQ(x, y));
    REQUIRE(y * y == x * x * x + A * x + B);
  }
}

TEST_CASE("witness_stream examples") {
  const WitnessStream tl = witness_stream(twist_linear(), 2, SearchMode::TotalFirst);
  bool found = false;
  for (const auto& p : tl.points) {
    if (p.param == Rat(6) && p.witness == PointQ(Rat(12), Rat(36))) found = true;
  }
  CHECK(found);
  CHECK_FALSE(tl.stats.fell_back_to_fiber_first);

  const WitnessStream tq = witness_stream(twist_quadratic(), 2, SearchMode::FiberFirst);
  found = false;
  for (const auto& p : tq.points) {
    if (p.param == Rat(1) && p.witness == PointQ(Rat(2), Rat(4))) found = true;
  }
  CHECK(found);

  const WitnessStream cp = witness_stream(cubic(), 1, SearchMode::TotalFirst);
  std::set<Rat> params;
  for (const auto& p : cp.points) params.insert(p.param);
  CHECK(params.count(Rat(-5, 6)) == 1);
  CHECK(params.count(Rat(3, 4)) == 1);

  CHECK(witness_stream(pencil(), 2, SearchMode::TotalFirst).stats.fell_back_to_fiber_first);
  CHECK(kind_of([] { witness_stream(twist_linear(), 0, SearchMode::TotalFirst); }) == ErrorKind::InvalidArgument);
  CHECK(parse_search_mode("fiber-first") == SearchMode::FiberFirst);
  CHECK(to_string(SearchMode::TotalFirst) == "total-first");
  CHECK(kind_of([] { parse_search_mode("sideways"); }) == ErrorKind::ParseError);
}

TEST_CASE("property: every emitted witness lies on its fiber, streams are deterministic") {
  const std::vector<FamilySpec> fams{twist_linear(), twist_quadratic(), cubic(), pencil(),
                                     FamilySpec::make(TwistPoly{poly({-2, 0, 0, 1}), poly({0, -1, 0, 1})})};
  for (const auto& f : fams) {
    for (SearchMode mode : {SearchMode::TotalFirst, SearchMode::FiberFirst}) {
      const WitnessStream a = witness_stream(f, 5, mode);
      const WitnessStream b = witness_stream(f, 5, mode);
      REQUIRE(a.points.size() == b.points.size());
      std::set<std::pair<Rat, Rat>> keys;
      for (std::size_t i = 0; i < a.points.size(); ++i) {
        const auto& p = a.points[i];
        REQUIRE(p.param == b.points[i].param);
        REQUIRE(p.witness == b.points[i].witness);
        REQUIRE(on_curve(fiber_at(f, p.param).curve, p.witness));
        REQUIRE_FALSE(p.witness.is_infinity());
        REQUIRE(keys.insert({p.param, p.witness.x()}).second);
      }
      CHECK(a.stats.emitted == static_cast<long>(a.points.size()));
    }
  }
}

TEST_CASE("property: twist witnesses satisfy the defining equation") {
  const FamilySpec f = FamilySpec::make(TwistPoly{poly({-2, 0, 0, 1}), poly({0, -1, 0, 1})});
  const WitnessStream s = witness_stream(f, 6, SearchMode::FiberFirst);
  CHECK_FALSE(s.points.empty());
  for (const auto& p : s.points) {
    REQUIRE(p.raw.size() == 2);
    const Rat x0 = p.raw[0], y0 = p.raw[1];
    const Rat d0 = poly({-2, 0, 0, 1})(p.param);
    REQUIRE(d0 * y0 * y0 == poly({0, -1, 0, 1})(x0));
  }
}
