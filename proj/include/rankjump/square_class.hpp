#ifndef RANKJUMP_SQUARE_CLASS_HPP
#define RANKJUMP_SQUARE_CLASS_HPP

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

#include "rankjump/arith.hpp"

namespace rankjump {

/// Element of Q*/Q*^2, represented by its squarefree integer.
struct SquareClass {
  mpz_class squarefree;         // nonzero, squarefree, carries the sign
  bool negative = false;
  std::vector<mpz_class> primes;  // ascending prime factors of |squarefree|

  bool is_unit() const { return squarefree == 1; }
  std::string to_string() const { return squarefree.get_str(); }

  friend bool operator==(const SquareClass& a, const SquareClass& b) { return a.squarefree == b.squarefree; }
};

/// n = s * m^2 with s squarefree and sign(s) = sign(n). Throws ZeroInput on 0.
SquareClass squarefree_part(const mpz_class& n);

/// Square class of a nonzero rational num/den, i.e. of num * den.
SquareClass squarefree_part(const Rat& q);

/// Squarefree s with q = s * w^2; returns the rational w >= 0 alongside.
struct SquareDecomposition {
  SquareClass cls;
  Rat root;
};
SquareDecomposition square_decompose(const Rat& q);

/// Exponent vectors over F2 (sign bit, then one bit per prime) and the
/// outcome of elimination.
struct IndependenceResult {
  bool independent = false;
  std::size_t rank = 0;
  std::vector<std::string> coordinates;        // "-1", then primes in ascending order
  std::vector<std::vector<int>> vectors;       // one row per input class
  std::vector<std::size_t> dependent_subset;   // indices whose product is a square (when dependent)
};

/// Throws UnitClass if some class is 1.
IndependenceResult square_class_independent(const std::vector<SquareClass>& classes);

}  // namespace rankjump

#endif  // RANKJUMP_SQUARE_CLASS_HPP
