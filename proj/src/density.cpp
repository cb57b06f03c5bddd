#include "rankjump/density.hpp"

#include <functional>
#include <set>

#include "rankjump/error.hpp"

namespace rankjump {

namespace {

mpz_class floor_rat(const Rat& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
  return out;
}

double ratio(long a, long b) { return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b); }

}  // namespace

Rat Histogram::bin_lo(int i) const { return lo + (hi - lo) * Rat(i, bins); }
Rat Histogram::bin_hi(int i) const { return lo + (hi - lo) * Rat(i + 1, bins); }

Histogram real_histogram(const std::vector<Rat>& params, const Rat& lo, const Rat& hi, int bins) {
  if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "histogram needs lo < hi");
  if (bins < 1) throw Error(ErrorKind::InvalidArgument, "histogram needs bins >= 1");
  Histogram h{lo, hi, bins, std::vector<long>(static_cast<std::size_t>(bins), 0)};
  const Rat scale = Rat(bins) / (hi - lo);
  for (const auto& t : params) {
    if (t < lo || !(t < hi)) continue;
    const long idx = floor_rat((t - lo) * scale).get_si();
    ++h.counts[static_cast<std::size_t>(idx)];
    ++h.in_range;
  }
  long nonempty = 0;
  for (long c : h.counts) nonempty += c > 0 ? 1 : 0;
  h.coverage = ratio(nonempty, bins);
  return h;
}

PadicCoverage padic_coverage(const std::vector<Rat>& params, unsigned long p, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "padic_coverage needs k >= 1");
  if (p < 2 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0) {
    throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  }
  PadicCoverage out;
  out.p = p;
  out.k = k;
  mpz_ui_pow_ui(out.modulus.get_mpz_t(), p, static_cast<unsigned long>(k));
  for (const auto& t : params) {
    if (mpz_divisible_ui_p(t.den().get_mpz_t(), p) != 0) {
      ++out.non_integral;
      continue;
    }
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), t.den().get_mpz_t(), out.modulus.get_mpz_t());
    mpz_class r = t.num() * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), out.modulus.get_mpz_t());
    ++out.residues[r];
  }
  out.coverage = static_cast<double>(out.residues.size()) / out.modulus.get_d();
  return out;
}

ComponentReport component_report(const FamilySpec& f, const std::vector<Rat>& params, const Rat& lo, const Rat& hi,
                                 int bins) {
  const auto* tq = std::get_if<TwistQuadratic>(&f.kind);
  if (tq == nullptr) throw Error(ErrorKind::WrongFamilyKind, "component_report needs a twist_quadratic family");
  const Rat& a = tq->a;
  const int cs = tq->c.sign();

  // region index of t, or -1 on a root of d
  std::function<int(const Rat&)> locate;
  ComponentReport rep;
  if (a.sign() < 0) {
    rep.regions.push_back({"all t", cs});
    locate = [](const Rat&) { return 0; };
  } else {
    std::string root;
    if (a.is_zero()) {
      root = "0";
    } else if (auto r = is_rational_square(a)) {
      root = r->to_string();
    } else {
      root = "sqrt(" + a.to_string() + ")";
    }
    const std::string neg = a.is_zero() ? "0" : "-" + root;
    rep.regions.push_back({"t < " + neg, cs});
    if (!a.is_zero()) rep.regions.push_back({neg + " < t < " + root, -cs});
    rep.regions.push_back({"t > " + root, cs});
    const bool zero = a.is_zero();
    locate = [a, zero](const Rat& t) {
      const Rat t2 = t * t;
      if (t2 == a) return -1;
      if (t2 < a) return 1;
      if (t.sign() < 0) return 0;
      return zero ? 1 : 2;
    };
  }

  for (const auto& t : params) {
    const int r = locate(t);
    if (r < 0) {
      ++rep.on_boundary;
      continue;
    }
    ++rep.regions[static_cast<std::size_t>(r)].count;
  }

  // grid coverage: a bin belongs to the region holding its midpoint
  const Histogram grid = real_histogram({}, lo, hi, bins);
  std::vector<std::set<int>> hit_bins(rep.regions.size());
  const Rat scale = Rat(bins) / (hi - lo);
  for (const auto& t : params) {
    if (t < lo || !(t < hi)) continue;
    const int r = locate(t);
    if (r < 0) continue;
    const int idx = static_cast<int>(floor_rat((t - lo) * scale).get_si());
    hit_bins[static_cast<std::size_t>(r)].insert(idx);
  }
  for (int i = 0; i < bins; ++i) {
    const Rat mid = (grid.bin_lo(i) + grid.bin_hi(i)) / Rat(2);
    const int r = locate(mid);
    if (r < 0) continue;
    auto& region = rep.regions[static_cast<std::size_t>(r)];
    ++region.grid_bins;
    if (hit_bins[static_cast<std::size_t>(r)].count(i) != 0) ++region.grid_hit;
  }
  for (auto& region : rep.regions) region.coverage = ratio(region.grid_hit, region.grid_bins);
  return rep;
}

DensityReport density_report(const FamilySpec& f, const std::vector<Rat>& params, const DensityOptions& opts) {
  DensityReport rep;
  rep.distinct_params = static_cast<long>(std::set<Rat>(params.begin(), params.end()).size());
  rep.real = real_histogram(params, opts.lo, opts.hi, opts.bins);
  for (const unsigned long p : opts.primes) {
    for (int k = 1; k <= opts.max_k; ++k) rep.padic.push_back(padic_coverage(params, p, k));
  }
  if (std::holds_alternative<TwistQuadratic>(f.kind)) {
    rep.components = component_report(f, params, opts.lo, opts.hi, opts.bins);
  }
  return rep;
}

}  // namespace rankjump
