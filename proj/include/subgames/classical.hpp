#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

#include "subgames/game.hpp"
#include "subgames/oracle.hpp"

namespace subgames {

struct SolveReport {
  ValueVector values;
  std::uint64_t queries = 0;
  std::string solver_id;
};

// Full dynamic-programming solve. Reads every triangle bit exactly once, in
// row-major order, so the count is n(n+1)/2 on every input. No early exits:
// this is the classical baseline the scaling benchmark anchors on.
inline SolveReport classical_dp(CountingOracle& oracle) {
  const std::uint32_t n = oracle.n(), k = oracle.k();
  const std::uint64_t start = oracle.count();
  ValueVector values(n + 1, 0);
  for (std::uint32_t j = 1; j <= n; ++j) {
    std::uint32_t best = 0;
    for (std::uint32_t i = 0; i < j; ++i) {
      if (!oracle.query(j, i)) continue;
      const std::uint32_t payoff = (values[i] + k - 1) % k;
      if (payoff > best) best = payoff;
    }
    values[j] = best;
  }
  return {std::move(values), oracle.count() - start, "dp"};
}

struct WalkReport {
  std::uint32_t value = 0;
  std::uint64_t queries = 0;
};

// n-query walker for restricted games: scan i = n-1 .. 0, querying only the
// current row; each hit is the row's unique move, so the play is traced
// directly and the final payoff is (0 - moves) mod k.
inline WalkReport restricted_walk(CountingOracle& oracle) {
  const std::uint32_t n = oracle.n(), k = oracle.k();
#ifndef NDEBUG
  {
    CountingOracle::Superposition scope(oracle);
    assert(is_restricted(oracle.superposed()) &&
           "restricted_walk: game violates the weight<=1 promise");
  }
#endif
  const std::uint64_t start = oracle.count();
  std::uint32_t j = n;
  std::uint32_t value = 0;
  for (std::uint32_t i = n; i-- > 0;) {
    if (oracle.query(j, i)) {
      j = i;
      value = (value + k - 1) % k;
    }
  }
  return {value, oracle.count() - start};
}

}  // namespace subgames
