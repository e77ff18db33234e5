#pragma once

// Seeded test matrices for the path-count suite.

#include <cstdint>
#include <random>
#include <vector>

#include "pacert/spectral.hpp"

namespace pacert {

inline TransitionMatrix fibonacci_matrix() { return TransitionMatrix::from_dense({{1, 1}, {1, 0}}); }

/// Rejection-samples an irreducible matrix of dimension in [1, max_dim] with
/// entries in [0, max_entry]; roughly half the entries are zero.
template <class Rng>
TransitionMatrix random_strongly_connected(Rng& rng, int max_dim = 8, std::int64_t max_entry = 5) {
  std::uniform_int_distribution<int> dim_dist(1, max_dim);
  std::uniform_int_distribution<std::int64_t> entry_dist(1, max_entry);
  std::bernoulli_distribution nonzero(0.5);
  const int d = dim_dist(rng);
  for (;;) {
    std::vector<std::vector<std::int64_t>> dense(static_cast<std::size_t>(d), std::vector<std::int64_t>(static_cast<std::size_t>(d), 0));
    for (auto& row : dense) {
      for (auto& x : row) x = nonzero(rng) ? entry_dist(rng) : 0;
    }
    TransitionMatrix t = TransitionMatrix::from_dense(dense);
    if (is_irreducible(t)) return t;
  }
}

/// The default corpus: `count` matrices from a fixed seed.
inline std::vector<TransitionMatrix> random_corpus(std::size_t count = 100, std::uint64_t seed = 20240521,
                                                   int max_dim = 8, std::int64_t max_entry = 5) {
  std::mt19937_64 rng(seed);
  std::vector<TransitionMatrix> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_strongly_connected(rng, max_dim, max_entry));
  return out;
}

}  // namespace pacert
