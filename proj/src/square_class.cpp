#include "rankjump/square_class.hpp"

#include <algorithm>
#include <map>

#include "rankjump/error.hpp"

namespace rankjump {

SquareClass squarefree_part(const mpz_class& n) {
  if (n == 0) throw Error(ErrorKind::ZeroInput, "squarefree part of 0");
  SquareClass out;
  out.negative = n < 0;
  out.squarefree = out.negative ? -1 : 1;
  for (const auto& [p, e] : factor(n)) {
    if (e % 2 == 1) {
      out.squarefree *= p;
      out.primes.push_back(p);
    }
  }
  return out;
}

SquareClass squarefree_part(const Rat& q) {
  if (q.is_zero()) throw Error(ErrorKind::ZeroInput, "squarefree part of 0");
  return squarefree_part(mpz_class(q.num() * q.den()));
}

SquareDecomposition square_decompose(const Rat& q) {
  SquareClass cls = squarefree_part(q);
  const Rat quotient = q / Rat(cls.squarefree);
  auto root = is_rational_square(quotient);
  if (!root) throw Error(ErrorKind::InvalidArgument, "square decomposition failed for " + q.to_string());
  return {std::move(cls), *root};
}

IndependenceResult square_class_independent(const std::vector<SquareClass>& classes) {
  IndependenceResult res;
  std::map<mpz_class, std::size_t> prime_index;
  for (const auto& c : classes) {
    if (c.is_unit()) throw Error(ErrorKind::UnitClass, "square class 1 is the identity");
    for (const auto& p : c.primes) prime_index.emplace(p, 0);
  }
  res.coordinates.push_back("-1");
  std::size_t next = 1;
  for (auto& [p, idx] : prime_index) {
    idx = next++;
    res.coordinates.push_back(p.get_str());
  }
  const std::size_t width = next;
  const std::size_t k = classes.size();

  for (const auto& c : classes) {
    std::vector<int> row(width, 0);
    row[0] = c.negative ? 1 : 0;
    for (const auto& p : c.primes) row[prime_index.at(p)] = 1;
    res.vectors.push_back(std::move(row));
  }

  // Row reduction with combination tracking: work[i] = sum of inputs in combo[i].
  std::vector<std::vector<int>> work = res.vectors;
  std::vector<std::vector<int>> combo(k, std::vector<int>(k, 0));
  for (std::size_t i = 0; i < k; ++i) combo[i][i] = 1;

  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < k; ++col) {
    std::size_t pivot = rank;
    while (pivot < k && work[pivot][col] == 0) ++pivot;
    if (pivot == k) continue;
    std::swap(work[pivot], work[rank]);
    std::swap(combo[pivot], combo[rank]);
    for (std::size_t i = 0; i < k; ++i) {
      if (i != rank && work[i][col] == 1) {
        for (std::size_t j = 0; j < width; ++j) work[i][j] ^= work[rank][j];
        for (std::size_t j = 0; j < k; ++j) combo[i][j] ^= combo[rank][j];
      }
    }
    ++rank;
  }
  res.rank = rank;
  res.independent = rank == k;
  if (!res.independent) {
    // Rows past the rank are zero; their combination is a square product.
    for (std::size_t j = 0; j < k; ++j) {
      if (combo[rank][j] == 1) res.dependent_subset.push_back(j);
    }
  }
  return res;
}

}  // namespace rankjump
