// Random inputs for property tests.
#pragma once

#include <random>

#include "onerel/automorphism.hpp"
#include "onerel/presentation.hpp"
#include "oracles.hpp"

namespace gen {

inline onerel::Automorphism random_automorphism(std::mt19937_64& rng, int rank, int max_moves) {
  std::uniform_int_distribution<int> count(0, max_moves);
  std::uniform_int_distribution<int> index(1, rank);
  std::bernoulli_distribution coin(0.5);
  std::vector<onerel::NielsenMove> moves;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    int r = index(rng);
    if (rank == 1 || coin(rng) && coin(rng)) {
      moves.push_back(onerel::NielsenMove::invert(r));
      continue;
    }
    int s = index(rng);
    while (s == r) s = index(rng);
    moves.push_back(onerel::NielsenMove::multiply(r, s, coin(rng) ? 1 : -1));
  }
  return onerel::Automorphism::from_moves(rank, std::move(moves));
}

/// Cyclically reduced non-empty relator.
inline onerel::Word random_relator(std::mt19937_64& rng, int rank, std::size_t max_len) {
  for (;;) {
    onerel::Word w = onerel::cyclically_reduce(oracle::random_word(rng, rank, max_len)).core;
    if (!w.empty()) return w;
  }
}

}  // namespace gen
