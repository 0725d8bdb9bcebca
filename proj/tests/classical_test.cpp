#include "subgames/classical.hpp"

#include <gtest/gtest.h>

#include <chrono>

#include "subgames/generate.hpp"
#include "support/reference.hpp"

namespace subgames {
namespace {

TEST(ClassicalDp, QueryCountIsAlwaysTriangleSize) {
  SplitRng master(3);
  for (const std::uint32_t n : {1u, 2u, 17u, 64u, 100u}) {
    SplitRng rng = master.split(n);
    const Game g = testing::random_game(rng, n, 3, 0.5);
    CountingOracle o(g);
    const SolveReport r = classical_dp(o);
    EXPECT_EQ(r.queries, std::uint64_t(n) * (n + 1) / 2);
    EXPECT_EQ(r.queries, o.count());
  }
}

TEST(ClassicalDp, MatchesPureWinValues) {
  SplitRng master(15);
  for (int t = 0; t < 200; ++t) {
    SplitRng rng = master.split(t);
    const std::uint32_t n = 1 + std::uint32_t(rng.below(40));
    const Game g = testing::random_game(rng, n, 2 + std::uint32_t(rng.below(4)), 0.4);
    CountingOracle o(g);
    ASSERT_EQ(classical_dp(o).values, win_values(g));
  }
}

TEST(ClassicalDp, ThousandStonesWellUnderASecond) {
  const Game g = gen_dense_uniform(1000, 3, 8);
  CountingOracle o(g);
  const auto start = std::chrono::steady_clock::now();
  const SolveReport r = classical_dp(o);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(r.queries, 1000u * 1001u / 2u);
  EXPECT_LT(seconds, 1.0);
}

TEST(RestrictedWalk, AllZeroGame) {
  const Game g(12, 3);
  CountingOracle o(g);
  const WalkReport r = restricted_walk(o);
  EXPECT_EQ(r.value, 0u);
  EXPECT_EQ(r.queries, 12u);
}

TEST(RestrictedWalk, ChainGameCountsEveryMove) {
  // n forced moves of one stone each: payoff (0 - n) mod k
  for (const auto& [n, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {5, 2}, {7, 3}, {9, 4}}) {
    Game g(n, k);
    for (std::uint32_t j = 1; j <= n; ++j) g.set_bit(j, j - 1, true);
    CountingOracle o(g);
    const WalkReport r = restricted_walk(o);
    EXPECT_EQ(r.value, (k - n % k) % k);
    EXPECT_EQ(r.queries, n);
  }
}

TEST(RestrictedWalk, MatchesDpOnRandomRestrictedGames) {
  SplitRng master(21);
  for (int t = 0; t < 300; ++t) {
    SplitRng rng = master.split(t);
    const std::uint32_t n = 1 + std::uint32_t(rng.below(60));
    const double move_prob = rng.unit();
    const Game g = gen_restricted(n, 3, rng.next_u64(), move_prob);
    CountingOracle o(g);
    const WalkReport r = restricted_walk(o);
    EXPECT_EQ(r.value, win_values(g)[n]);
    EXPECT_EQ(r.queries, n);
  }
}

}  // namespace
}  // namespace subgames
