#ifndef RANKJUMP_FAMILY_HPP
#define RANKJUMP_FAMILY_HPP

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rankjump/curve.hpp"
#include "rankjump/poly.hpp"

namespace rankjump {

/// t0 * y^2 = p(x)
struct TwistLinear {
  PolyQ p;
};

/// c (t^2 - a) * y^2 = p(x)
struct TwistQuadratic {
  Rat c;
  Rat a;
  PolyQ p;
};

/// d(t) * y^2 = p(x)
struct TwistPoly {
  PolyQ d;
  PolyQ p;
};

/// x^3 + y^3 + (l^3 + 1) t^3 = 0, zero section (1 : -1 : 0)
struct CubicPencil {};

/// Y^2 = X^3 + A(l) X + B(l) with declared sections (X(l), Y(l)).
struct WeierstrassPencil {
  RatFunc A;
  RatFunc B;
  std::vector<std::pair<RatFunc, RatFunc>> sections;
};

using FamilyKind = std::variant<TwistLinear, TwistQuadratic, TwistPoly, CubicPencil, WeierstrassPencil>;

struct FamilySpec {
  FamilyKind kind;
  int declared_generic_rank = 0;
  std::string id;

  /// Defaults the generic rank to the number of declared sections.
  static FamilySpec make(FamilyKind kind, std::string id = {});

  std::string kind_name() const;
  bool is_twist() const;
  const WeierstrassPencil* pencil() const { return std::get_if<WeierstrassPencil>(&kind); }
};

struct Finding {
  enum class Severity { Error, Warning };
  Severity severity;
  std::string message;
};

/// Hypothesis checks; never throws on mathematical problems.
std::vector<Finding> validate_family(const FamilySpec& f);
bool has_errors(const std::vector<Finding>& findings);

struct Fiber {
  Rat param;
  CurveQ curve;
  std::string to_standard;
};

/// Throws DegenerateFiber.
Fiber fiber_at(const FamilySpec& f, const Rat& param);

struct TotalSpacePoint {
  Rat param;
  PointQ witness;
  std::vector<Rat> raw;  // coordinates before standardization
};

/// d(t0) y0^2 = p(x0) mapped to the standardized fiber. Throws NotOnTotalSpace.
TotalSpacePoint twist_witness(const FamilySpec& f, const Rat& param, const Rat& x0, const Rat& y0);

/// x^3 + y^3 = -(l0^3 + 1) mapped to Y^2 = X^3 - 432 c^2.
/// Throws NotOnTotalSpace, LineAtInfinity (x + y = 0), DegenerateFiber.
TotalSpacePoint cubic_witness(const Rat& param, const Rat& x, const Rat& y);

struct EulerPoint {
  Rat param;
  Rat x;
  Rat y;
};

/// Euler's parametrization of x^3 + y^3 + z^3 + t^3 = 0 cut by z = l t.
/// Absent on degenerate output; (0, 0) is a precondition violation.
std::optional<EulerPoint> euler_parametrize(long a, long b);

/// Exact evaluation of each declared section; throws DegenerateFiber, PoleAtPoint.
std::vector<PointQ> specialize_sections(const FamilySpec& f, const Rat& param);

enum class SearchMode { TotalFirst, FiberFirst };
std::string to_string(SearchMode m);
SearchMode parse_search_mode(const std::string& s);

struct StreamStats {
  long examined = 0;    // raw candidates looked at
  long degenerate = 0;  // skipped: degenerate fiber, pole, line at infinity
  long duplicates = 0;  // same (param, witness x) seen before
  long emitted = 0;
  bool fell_back_to_fiber_first = false;
};

struct WitnessStream {
  std::vector<TotalSpacePoint> points;
  StreamStats stats;
};

/// Deterministic search for rational points of the total space.
WitnessStream witness_stream(const FamilySpec& f, long bound, SearchMode mode);

}  // namespace rankjump

#endif  // RANKJUMP_FAMILY_HPP
