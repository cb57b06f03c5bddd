#ifndef RANKJUMP_DENSITY_HPP
#define RANKJUMP_DENSITY_HPP

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rankjump/arith.hpp"
#include "rankjump/family.hpp"

namespace rankjump {

/// Equal-width bins over [lo, hi).
struct Histogram {
  Rat lo, hi;
  int bins = 0;
  std::vector<long> counts;
  long in_range = 0;
  double coverage = 0;  // fraction of nonempty bins

  Rat bin_lo(int i) const;
  Rat bin_hi(int i) const;
};

/// Throws InvalidArgument unless lo < hi and bins >= 1.
Histogram real_histogram(const std::vector<Rat>& params, const Rat& lo, const Rat& hi, int bins);

struct PadicCoverage {
  unsigned long p = 0;
  int k = 0;
  mpz_class modulus;                     // p^k
  std::map<mpz_class, long> residues;    // u v^-1 mod p^k -> count
  long non_integral = 0;                 // params with p | v
  double coverage = 0;                   // distinct residues / p^k
};

/// Throws InvalidArgument unless p is prime and k >= 1.
PadicCoverage padic_coverage(const std::vector<Rat>& params, unsigned long p, int k);

/// Open interval of the real line on which c (t^2 - a) keeps one sign.
struct SignRegion {
  std::string description;  // e.g. "t < -sqrt(2)"
  int sign = 0;             // sign of d(t) on the region
  long count = 0;           // params inside
  int grid_bins = 0;        // histogram bins whose midpoint lies inside
  int grid_hit = 0;
  double coverage = 0;
};

struct ComponentReport {
  std::vector<SignRegion> regions;
  long on_boundary = 0;  // params at a real root of d
};

/// Throws WrongFamilyKind unless f is a TwistQuadratic family.
ComponentReport component_report(const FamilySpec& f, const std::vector<Rat>& params, const Rat& lo = Rat(-10),
                                 const Rat& hi = Rat(10), int bins = 20);

struct DensityOptions {
  Rat lo = Rat(-10);
  Rat hi = Rat(10);
  int bins = 20;
  std::vector<unsigned long> primes = {2, 3, 5, 7};
  int max_k = 2;
};

struct DensityReport {
  long distinct_params = 0;
  Histogram real;
  std::vector<PadicCoverage> padic;  // ordered by (p, k)
  std::optional<ComponentReport> components;
};

DensityReport density_report(const FamilySpec& f, const std::vector<Rat>& params, const DensityOptions& opts = {});

}  // namespace rankjump

#endif  // RANKJUMP_DENSITY_HPP
