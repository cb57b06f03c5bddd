#include "rankjump/family.hpp"

#include <numeric>
#include <set>

#include "rankjump/error.hpp"

namespace rankjump {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// d(t) for the three twist kinds.
PolyQ twist_denominator(const FamilyKind& kind) {
  return std::visit(overloaded{
                        [](const TwistLinear&) { return PolyQ::x(); },
                        [](const TwistQuadratic& k) { return PolyQ({-k.c * k.a, Rat(0), k.c}); },
                        [](const TwistPoly& k) { return k.d; },
                        [](const auto&) -> PolyQ { throw Error(ErrorKind::WrongFamilyKind, "not a twist family"); },
                    },
                    kind);
}

const PolyQ& twist_cubic(const FamilyKind& kind) {
  if (const auto* k = std::get_if<TwistLinear>(&kind)) return k->p;
  if (const auto* k = std::get_if<TwistQuadratic>(&kind)) return k->p;
  if (const auto* k = std::get_if<TwistPoly>(&kind)) return k->p;
  throw Error(ErrorKind::WrongFamilyKind, "not a twist family");
}

Rat cubic_pencil_c(const Rat& param) { return -(param * param * param + Rat(1)); }

CurveQ curve_or_degenerate(const Rat& A, const Rat& B, const Rat& param) {
  try {
    return CurveQ(A, B);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SingularCurve) {
      throw Error(ErrorKind::DegenerateFiber, "singular fiber at " + param.to_string());
    }
    throw;
  }
}

}  // namespace

FamilySpec FamilySpec::make(FamilyKind kind, std::string id) {
  FamilySpec f{std::move(kind), 0, std::move(id)};
  if (const auto* w = f.pencil()) f.declared_generic_rank = static_cast<int>(w->sections.size());
  if (f.id.empty()) f.id = f.kind_name();
  return f;
}

std::string FamilySpec::kind_name() const {
  return std::visit(overloaded{
                        [](const TwistLinear&) { return std::string("twist_linear"); },
                        [](const TwistQuadratic&) { return std::string("twist_quadratic"); },
                        [](const TwistPoly&) { return std::string("twist_poly"); },
                        [](const CubicPencil&) { return std::string("cubic_pencil"); },
                        [](const WeierstrassPencil&) { return std::string("weierstrass_pencil"); },
                    },
                    kind);
}

bool FamilySpec::is_twist() const {
  return std::holds_alternative<TwistLinear>(kind) || std::holds_alternative<TwistQuadratic>(kind) ||
         std::holds_alternative<TwistPoly>(kind);
}

bool has_errors(const std::vector<Finding>& findings) {
  for (const auto& f : findings) {
    if (f.severity == Finding::Severity::Error) return true;
  }
  return false;
}

std::vector<Finding> validate_family(const FamilySpec& f) {
  std::vector<Finding> out;
  auto error = [&out](std::string m) { out.push_back({Finding::Severity::Error, std::move(m)}); };
  auto warning = [&out](std::string m) { out.push_back({Finding::Severity::Warning, std::move(m)}); };

  if (f.declared_generic_rank < 0) error("generic_rank must be nonnegative");

  if (f.is_twist()) {
    const PolyQ& p = twist_cubic(f.kind);
    if (p.degree() != 3) {
      error("p must be a separable cubic; got degree " + std::to_string(p.degree()));
    } else if (p.leading() != Rat(1)) {
      error("p must be monic (non-monic cubics are not normalized); leading coefficient " + p.leading().to_string());
    } else if (!is_separable_cubic(p)) {
      error("p = " + p.to_string() + " is not separable (discriminant 0)");
    }
  }

  std::visit(overloaded{
                 [&](const TwistQuadratic& k) {
                   if (k.c.is_zero()) error("c must be nonzero");
                   if (k.a.is_zero()) error("d(t) = c(t^2 - a) must be separable: a = 0 gives a double root");
                 },
                 [&](const TwistPoly& k) {
                   if (k.d.is_zero()) {
                     error("d must be a nonzero polynomial");
                   } else if (k.d.degree() == 0) {
                     warning("d is constant: every fiber is the same twist");
                   } else if (gcd(k.d, k.d.derivative()).degree() > 0) {
                     warning("d(t) has a repeated root");
                   }
                 },
                 [&](const WeierstrassPencil& k) {
                   const RatFunc A = k.A, B = k.B;
                   const RatFunc core = RatFunc(PolyQ::constant(4)) * A * A * A + RatFunc(PolyQ::constant(27)) * B * B;
                   if (core.is_zero()) error("pencil discriminant -16(4A^3 + 27B^2) vanishes identically");
                   for (std::size_t i = 0; i < k.sections.size(); ++i) {
                     const auto& [X, Y] = k.sections[i];
                     const RatFunc residual = Y * Y - (X * X * X + A * X + B);
                     if (!residual.is_zero()) {
                       error("section " + std::to_string(i) + " (" + X.to_string() + ", " + Y.to_string() +
                             ") does not satisfy Y^2 = X^3 + A X + B; residual " + residual.to_string());
                     }
                   }
                   if (f.declared_generic_rank > static_cast<int>(k.sections.size())) {
                     warning("declared generic rank exceeds the number of declared sections");
                   }
                 },
                 [](const auto&) {},
             },
             f.kind);
  return out;
}

Fiber fiber_at(const FamilySpec& f, const Rat& param) {
  if (f.is_twist()) {
    const Rat d0 = twist_denominator(f.kind)(param);
    if (d0.is_zero()) throw Error(ErrorKind::DegenerateFiber, "d vanishes at " + param.to_string());
    const DepressedCubic dep = depress_cubic(twist_cubic(f.kind));
    CurveQ curve = curve_or_degenerate(dep.A * d0 * d0, dep.B * d0 * d0 * d0, param);
    return {param, std::move(curve),
            "X = " + d0.to_string() + "*(x + " + dep.shift.to_string() + "), Y = " + (d0 * d0).to_string() + "*y"};
  }
  if (std::holds_alternative<CubicPencil>(f.kind)) {
    const Rat c = cubic_pencil_c(param);
    if (c.is_zero()) throw Error(ErrorKind::DegenerateFiber, "l^3 + 1 vanishes at " + param.to_string());
    CurveQ curve = curve_or_degenerate(Rat(0), Rat(-432) * c * c, param);
    return {param, std::move(curve), "c = " + c.to_string() + ", X = 12c/(x+y), Y = 36c(x-y)/(x+y)"};
  }
  const auto& w = std::get<WeierstrassPencil>(f.kind);
  Rat A, B;
  try {
    A = w.A(param);
    B = w.B(param);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::PoleAtPoint) {
      throw Error(ErrorKind::DegenerateFiber, "coefficient pole at " + param.to_string());
    }
    throw;
  }
  CurveQ curve = curve_or_degenerate(A, B, param);
  return {param, std::move(curve), "identity"};
}

TotalSpacePoint twist_witness(const FamilySpec& f, const Rat& param, const Rat& x0, const Rat& y0) {
  const Rat d0 = twist_denominator(f.kind)(param);
  const PolyQ& p = twist_cubic(f.kind);
  if (d0 * y0 * y0 != p(x0)) {
    throw Error(ErrorKind::NotOnTotalSpace, "d(" + param.to_string() + ")*y^2 != p(x) at (" + x0.to_string() + ", " +
                                                y0.to_string() + ")");
  }
  const Fiber fiber = fiber_at(f, param);
  const DepressedCubic dep = depress_cubic(p);
  PointQ w(d0 * (x0 + dep.shift), d0 * d0 * y0);
  if (!on_curve(fiber.curve, w)) throw Error(ErrorKind::NotOnTotalSpace, "standardized point off the fiber");
  return {param, std::move(w), {x0, y0}};
}

TotalSpacePoint cubic_witness(const Rat& param, const Rat& x, const Rat& y) {
  // the line x + y = 0 is reported first, whatever the fiber
  const Rat s = x + y;
  if (s.is_zero()) throw Error(ErrorKind::LineAtInfinity, "x + y = 0 maps to the zero section");
  const Rat c = cubic_pencil_c(param);
  if (c.is_zero()) throw Error(ErrorKind::DegenerateFiber, "l^3 + 1 vanishes at " + param.to_string());
  if (x * x * x + y * y * y != c) {
    throw Error(ErrorKind::NotOnTotalSpace,
                "x^3 + y^3 != " + c.to_string() + " at (" + x.to_string() + ", " + y.to_string() + ")");
  }
  PointQ w(Rat(12) * c / s, Rat(36) * c * (x - y) / s);
  const CurveQ curve(Rat(0), Rat(-432) * c * c);
  if (!on_curve(curve, w)) throw Error(ErrorKind::NotOnTotalSpace, "standardized point off the fiber");
  return {param, std::move(w), {x, y}};
}

std::optional<EulerPoint> euler_parametrize(long a, long b) {
  if (a == 0 && b == 0) throw Error(ErrorKind::InvalidArgument, "euler_parametrize needs (a, b) != (0, 0)");
  const mpz_class A(a), B(b);
  const mpz_class X = 3 * A * A + 5 * A * B - 5 * B * B;
  const mpz_class Y = 4 * A * A - 4 * A * B + 6 * B * B;
  const mpz_class Z = 5 * A * A - 5 * A * B - 3 * B * B;
  const mpz_class T = -(6 * A * A - 4 * A * B + 4 * B * B);
  if (X * X * X + Y * Y * Y + Z * Z * Z + T * T * T != 0) {
    throw Error(ErrorKind::InvalidArgument, "Euler identity failed");  // unreachable for integer input
  }
  if (T == 0) return std::nullopt;
  EulerPoint pt{Rat(Z, T), Rat(X, T), Rat(Y, T)};
  if (cubic_pencil_c(pt.param).is_zero()) return std::nullopt;
  return pt;
}

std::vector<PointQ> specialize_sections(const FamilySpec& f, const Rat& param) {
  const auto* w = f.pencil();
  if (w == nullptr) return {};
  const Fiber fiber = fiber_at(f, param);
  std::vector<PointQ> out;
  for (const auto& [X, Y] : w->sections) {
    PointQ p(X(param), Y(param));
    // second path: the fiber equation evaluated on the specialized coordinates
    if (!on_curve(fiber.curve, p)) {
      throw Error(ErrorKind::PointNotOnCurve, "section specializes off the fiber at " + param.to_string());
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::string to_string(SearchMode m) { return m == SearchMode::TotalFirst ? "total-first" : "fiber-first"; }

SearchMode parse_search_mode(const std::string& s) {
  if (s == "total-first") return SearchMode::TotalFirst;
  if (s == "fiber-first") return SearchMode::FiberFirst;
  throw Error(ErrorKind::ParseError, "mode must be total-first or fiber-first, got '" + s + "'");
}

namespace {

class Collector {
 public:
  explicit Collector(WitnessStream& out) : out_(out) {}

  void emit(TotalSpacePoint p) {
    auto key = std::make_pair(p.param, p.witness.x());
    if (!seen_.insert(std::move(key)).second) {
      ++out_.stats.duplicates;
      return;
    }
    ++out_.stats.emitted;
    out_.points.push_back(std::move(p));
  }
  void degenerate() { ++out_.stats.degenerate; }
  void examined() { ++out_.stats.examined; }

 private:
  WitnessStream& out_;
  std::set<std::pair<Rat, Rat>> seen_;
};

bool is_degenerate_kind(const Error& e) {
  return e.kind() == ErrorKind::DegenerateFiber || e.kind() == ErrorKind::LineAtInfinity ||
         e.kind() == ErrorKind::PoleAtPoint;
}

std::vector<Rat> positive_part(const std::vector<Rat>& qs) {
  std::vector<Rat> out;
  for (const auto& q : qs) {
    if (q.sign() > 0) out.push_back(q);
  }
  return out;
}

// Rational roots t of d(t) = value when deg d <= 2.
std::vector<Rat> solve_twist_denominator(const PolyQ& d, const Rat& value) {
  if (d.degree() == 1) return {(value - d.coeff(0)) / d.coeff(1)};
  const Rat a2 = d.coeff(2), a1 = d.coeff(1), a0 = d.coeff(0) - value;
  const auto root = is_rational_square(a1 * a1 - Rat(4) * a2 * a0);
  if (!root) return {};
  if (root->is_zero()) return {-a1 / (Rat(2) * a2)};
  return {(-a1 + *root) / (Rat(2) * a2), (-a1 - *root) / (Rat(2) * a2)};
}

// Pairs (x0, y0) level by level in max(H(x0), H(y0)), then x0, then y0.
void twist_total_first(const FamilySpec& f, long bound, Collector& out) {
  const PolyQ d = twist_denominator(f.kind);
  const PolyQ& p = twist_cubic(f.kind);
  const std::vector<Rat> xs = enumerate_rationals(bound);
  const std::vector<Rat> ys = positive_part(xs);
  std::vector<Rat> px;
  std::vector<long> hx, hy;
  for (const auto& x0 : xs) {
    px.push_back(p(x0));
    hx.push_back(rat_height(x0).get_si());
  }
  for (const auto& y0 : ys) hy.push_back(rat_height(y0).get_si());
  for (long h = 1; h <= bound; ++h) {
    for (std::size_t i = 0; i < xs.size() && hx[i] <= h; ++i) {
      for (std::size_t j = 0; j < ys.size() && hy[j] <= h; ++j) {
        if (hx[i] != h && hy[j] != h) continue;
        out.examined();
        if (px[i].is_zero()) {
          out.degenerate();
          continue;
        }
        const Rat value = px[i] / (ys[j] * ys[j]);  // required value of d(t0)
        for (const auto& t : solve_twist_denominator(d, value)) {
          try {
            out.emit(twist_witness(f, t, xs[i], ys[j]));
          } catch (const Error& e) {
            if (!is_degenerate_kind(e)) throw;
            out.degenerate();
          }
        }
      }
    }
  }
}

void cubic_total_first(long bound, Collector& out) {
  for (long h = 1; h <= bound; ++h) {
    std::vector<std::pair<long, long>> level;
    for (long a = 0; a <= h; ++a) {
      for (long b = -h; b <= h; ++b) {
        if (std::max(a, b < 0 ? -b : b) != h) continue;
        if (a == 0 && b <= 0) continue;  // (a, b) and (-a, -b) give the same point
        if (std::gcd(a, b < 0 ? -b : b) != 1) continue;
        level.emplace_back(a, b);
      }
    }
    for (const auto& [a, b] : level) {
      out.examined();
      const auto pt = euler_parametrize(a, b);
      if (!pt) {
        out.degenerate();
        continue;
      }
      try {
        out.emit(cubic_witness(pt->param, pt->x, pt->y));
      } catch (const Error& e) {
        if (!is_degenerate_kind(e)) throw;
        out.degenerate();
      }
    }
  }
}

void fiber_first(const FamilySpec& f, long bound, Collector& out) {
  const std::vector<Rat> qs = enumerate_rationals(bound);
  const bool twist = f.is_twist();
  const bool cubic = std::holds_alternative<CubicPencil>(f.kind);
  for (const auto& param : qs) {
    std::optional<Fiber> fiber;
    try {
      fiber = fiber_at(f, param);
    } catch (const Error& e) {
      if (!is_degenerate_kind(e)) throw;
      out.examined();
      out.degenerate();
      continue;
    }
    Rat d0;
    if (twist) d0 = twist_denominator(f.kind)(param);
    for (const auto& x0 : qs) {
      out.examined();
      if (twist) {
        const auto y0 = is_rational_square(twist_cubic(f.kind)(x0) / d0);
        if (y0) out.emit(twist_witness(f, param, x0, *y0));
        continue;
      }
      const auto y0 = is_rational_square(fiber->curve.rhs(x0));
      if (!y0) continue;
      if (cubic) {
        if (x0.is_zero()) {
          out.degenerate();
          continue;
        }
        // invert X = 12c/(x+y), Y = 36c(x-y)/(x+y)
        const Rat c = cubic_pencil_c(param);
        const Rat s = Rat(12) * c / x0;
        const Rat diff = *y0 / (Rat(3) * x0);
        const Rat two(2);
        out.emit(cubic_witness(param, (s + diff) / two, (s - diff) / two));
        continue;
      }
      out.emit({param, PointQ(x0, *y0), {x0, *y0}});
    }
  }
}

}  // namespace

WitnessStream witness_stream(const FamilySpec& f, long bound, SearchMode mode) {
  if (bound < 1) throw Error(ErrorKind::InvalidArgument, "witness_stream needs bound >= 1");
  WitnessStream ws;
  Collector out(ws);
  if (mode == SearchMode::TotalFirst) {
    if (std::holds_alternative<TwistLinear>(f.kind) || std::holds_alternative<TwistQuadratic>(f.kind)) {
      twist_total_first(f, bound, out);
      return ws;
    }
    if (const auto* k = std::get_if<TwistPoly>(&f.kind); k != nullptr && (k->d.degree() == 1 || k->d.degree() == 2)) {
      twist_total_first(f, bound, out);
      return ws;
    }
    if (std::holds_alternative<CubicPencil>(f.kind)) {
      cubic_total_first(bound, out);
      return ws;
    }
    ws.stats.fell_back_to_fiber_first = true;
  }
  fiber_first(f, bound, out);
  return ws;
}

}  // namespace rankjump
