#include "rankjump/poly.hpp"

#include <sstream>

#include "rankjump/error.hpp"

namespace rankjump {

PolyQ::PolyQ(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { strip(); }

void PolyQ::strip() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rat PolyQ::operator()(const Rat& at) const {
  mpq_class acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= at.mpq();
    acc += it->mpq();
  }
  return Rat(std::move(acc));
}

PolyQ PolyQ::derivative() const {
  std::vector<Rat> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * Rat(static_cast<long>(i)));
  return PolyQ(std::move(d));
}

PolyQ PolyQ::monic() const {
  if (is_zero()) return *this;
  const Rat lc = leading();
  std::vector<Rat> c;
  c.reserve(coeffs_.size());
  for (const auto& a : coeffs_) c.push_back(a / lc);
  return PolyQ(std::move(c));
}

PolyQ PolyQ::shifted(const Rat& shift) const {
  // Horner in the polynomial ring: p(x + s)
  const PolyQ lin({shift, Rat(1)});
  PolyQ acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lin + PolyQ::constant(*it);
  return acc;
}

std::string PolyQ::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rat& c = coeffs_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    const Rat mag = abs(c);
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == Rat(1);
    if (i == 0 || !unit) {
      os << mag.to_string();
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

PolyQ PolyQ::operator-() const {
  std::vector<Rat> c;
  for (const auto& a : coeffs_) c.push_back(-a);
  return PolyQ(std::move(c));
}

PolyQ operator+(const PolyQ& a, const PolyQ& b) {
  std::vector<Rat> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return PolyQ(std::move(c));
}

PolyQ operator-(const PolyQ& a, const PolyQ& b) { return a + (-b); }

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i].mpq() * b.coeffs_[j].mpq();
  }
  std::vector<Rat> out;
  out.reserve(c.size());
  for (auto& v : c) out.emplace_back(std::move(v));
  return PolyQ(std::move(out));
}

PolyQ operator*(const Rat& c, const PolyQ& a) { return PolyQ::constant(c) * a; }

std::pair<PolyQ, PolyQ> divmod(const PolyQ& a, const PolyQ& b) {
  if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
  if (a.degree() < b.degree()) return {PolyQ(), a};
  std::vector<Rat> rem = a.coeffs();
  std::vector<Rat> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const Rat lc = b.leading();
  const auto db = static_cast<std::size_t>(b.degree());
  for (std::size_t k = quo.size(); k-- > 0;) {
    const Rat t = rem[k + db] / lc;
    quo[k] = t;
    if (t.is_zero()) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= t * b.coeffs()[j];
  }
  rem.resize(db);
  return {PolyQ(std::move(quo)), PolyQ(std::move(rem))};
}

PolyQ gcd(const PolyQ& a, const PolyQ& b) {
  PolyQ x = a, y = b;
  while (!y.is_zero()) {
    PolyQ r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Rat poly_eval(const PolyQ& p, const Rat& at) { return p(at); }

RatFunc::RatFunc(PolyQ num, PolyQ den) {
  if (den.is_zero()) throw Error(ErrorKind::InvalidArgument, "rational function with zero denominator");
  if (num.is_zero()) {
    num_ = PolyQ();
    den_ = PolyQ::constant(1);
    return;
  }
  const PolyQ g = gcd(num, den);
  num = divmod(num, g).first;
  den = divmod(den, g).first;
  const Rat lc = den.leading();
  num_ = (Rat(1) / lc) * num;
  den_ = den.monic();
}

Rat RatFunc::operator()(const Rat& at) const {
  const Rat d = den_(at);
  if (d.is_zero()) throw Error(ErrorKind::PoleAtPoint, "denominator vanishes at " + at.to_string());
  return num_(at) / d;
}

std::string RatFunc::to_string(const std::string& var) const {
  if (den_ == PolyQ::constant(1)) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}
RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}
RatFunc operator*(const RatFunc& a, const RatFunc& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "rational function division by zero");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

Rat ratfunc_eval(const RatFunc& f, const Rat& at) { return f(at); }

DepressedCubic depress_cubic(const PolyQ& p) {
  if (p.degree() != 3) throw Error(ErrorKind::WrongDegree, "expected a cubic, got degree " + std::to_string(p.degree()));
  if (p.leading() != Rat(1)) throw Error(ErrorKind::NotMonic, "cubic " + p.to_string() + " is not monic");
  const Rat a2 = p.coeff(2), a1 = p.coeff(1), a0 = p.coeff(0);
  DepressedCubic d;
  d.shift = a2 / Rat(3);
  d.A = a1 - a2 * a2 / Rat(3);
  d.B = Rat(2) * a2 * a2 * a2 / Rat(27) - a2 * a1 / Rat(3) + a0;
  return d;
}

Rat cubic_discriminant(const PolyQ& p) {
  const DepressedCubic d = depress_cubic(p);
  return Rat(-4) * d.A * d.A * d.A - Rat(27) * d.B * d.B;
}

bool is_separable_cubic(const PolyQ& p) { return !cubic_discriminant(p).is_zero(); }

}  // namespace rankjump
