#include "subgames/game.hpp"

#include <gtest/gtest.h>

#include "subgames/rng.hpp"
#include "support/reference.hpp"

namespace subgames {
namespace {

Game chain_game(std::uint32_t n, std::uint32_t k) {
  Game g(n, k);
  for (std::uint32_t j = 1; j <= n; ++j) g.set_bit(j, j - 1, true);
  return g;
}

TEST(WinValues, SingleMoveGame) {
  Game g(1, 2);
  g.set_bit(1, 0, true);
  EXPECT_EQ(win_values(g), (ValueVector{0, 1}));
}

TEST(WinValues, EmptyRowsAreWorthZero) {
  Game g(2, 3);
  EXPECT_EQ(win_values(g), (ValueVector{0, 0, 0}));
}

TEST(WinValues, ChainOfThreePlayers) {
  EXPECT_EQ(win_values(chain_game(3, 3)), (ValueVector{0, 2, 1, 0}));
}

TEST(WinValues, MoverTakesBestPayoffNotDisplayedFormula) {
  // position 2 may move to 0 (payoff 1) or 1 (payoff 0); the mover takes 1
  Game g(2, 2);
  g.set_bit(1, 0, true);
  g.set_bit(2, 0, true);
  g.set_bit(2, 1, true);
  EXPECT_EQ(win_values(g), (ValueVector{0, 1, 1}));
}

TEST(WinValues, WinIsLastPosition) {
  Game g(1, 3);
  g.set_bit(1, 0, true);
  EXPECT_EQ(win(g), 2u);
  EXPECT_EQ(win(Game(1, 3)), 0u);
}

TEST(WinValues, AgreesWithReferenceRecursionOnRandomGames) {
  SplitRng master(2024);
  for (int t = 0; t < 2000; ++t) {
    SplitRng rng = master.split(t);
    const std::uint32_t n = 1 + std::uint32_t(rng.below(16));
    const std::uint32_t k = std::uint32_t{2} << rng.below(2);  // 2 or 4
    const double density = 0.1 + 0.8 * rng.unit();
    const Game g = testing::random_game(rng, n, k, density);
    ASSERT_EQ(win_values(g), testing::reference_win_values(g)) << "trial " << t;
  }
}

TEST(WinValues, TwoPlayerNimCondition) {
  // k = 2: a position wins iff it has a move to a losing position
  SplitRng master(7);
  for (int t = 0; t < 200; ++t) {
    SplitRng rng = master.split(t);
    const std::uint32_t n = 1 + std::uint32_t(rng.below(24));
    const Game g = testing::random_game(rng, n, 2, 0.4);
    const ValueVector v = win_values(g);
    for (std::uint32_t j = 1; j <= n; ++j) {
      bool move_to_zero = false;
      g.for_each_edge(j, [&](std::uint32_t i) { move_to_zero |= v[i] == 0; });
      EXPECT_EQ(v[j] == 1, move_to_zero);
    }
  }
}

TEST(WinValues, PrefixDependsOnlyOnPrefixRows) {
  SplitRng master(9);
  for (int t = 0; t < 100; ++t) {
    SplitRng rng = master.split(t);
    const std::uint32_t n = 2 + std::uint32_t(rng.below(30));
    const Game g = testing::random_game(rng, n, 3, 0.5);
    const std::uint32_t cut = 1 + std::uint32_t(rng.below(n - 1));
    Game truncated(cut, 3);
    for (std::uint32_t j = 1; j <= cut; ++j)
      g.for_each_edge(j, [&](std::uint32_t i) { truncated.set_bit(j, i, true); });
    const ValueVector full = win_values(g);
    const ValueVector prefix = win_values(truncated);
    for (std::uint32_t j = 0; j <= cut; ++j) EXPECT_EQ(full[j], prefix[j]);
  }
}

TEST(Classify, AllZeroGame) {
  const Game g(6, 3);
  const GameClassReport r = classify(g, win_values(g));
  EXPECT_TRUE(r.is_restricted);
  EXPECT_TRUE(r.is_losing);
  EXPECT_DOUBLE_EQ(r.balance_deviation, 6.0 * (1.0 - 1.0 / 3.0));
}

TEST(Classify, ChainIsRestrictedLosingPerfectlyBalanced) {
  const Game g = chain_game(3, 3);
  const GameClassReport r = classify(g, win_values(g));
  EXPECT_TRUE(r.is_restricted);
  EXPECT_TRUE(r.is_losing);
  EXPECT_DOUBLE_EQ(r.balance_deviation, 0.0);
}

TEST(Classify, TakeAllStonesMoveNeverLosing) {
  SplitRng master(13);
  for (int t = 0; t < 100; ++t) {
    SplitRng rng = master.split(t);
    Game g = testing::random_game(rng, 8, 3, 0.5);
    g.set_bit(8, 0, true);
    EXPECT_FALSE(classify(g, win_values(g)).is_losing);
  }
}

TEST(Serialize, RoundTripsBitExactly) {
  SplitRng master(99);
  for (int t = 0; t < 100; ++t) {
    SplitRng rng = master.split(t);
    const std::uint32_t n = 1 + std::uint32_t(rng.below(80));
    const Game g = testing::random_game(rng, n, 2 + std::uint32_t(rng.below(7)), 0.5);
    EXPECT_EQ(Game::parse(g.serialize()), g);
  }
}

TEST(Serialize, SmallGameFormat) {
  Game g(2, 3);
  g.set_bit(1, 0, true);
  g.set_bit(2, 0, true);
  EXPECT_EQ(g.serialize(), "3 2\n1\n10\n");
  EXPECT_EQ(Game::parse("3 2\n1\n10\n"), g);
}

TEST(Parse, RowBlockIsAuthoritativeForN) {
  const Game g = Game::parse("3 2\n1\n10\n100\n");
  EXPECT_EQ(g.n(), 3u);
  EXPECT_EQ(g.k(), 3u);
  EXPECT_TRUE(g.bit(3, 0));
}

TEST(Parse, WrongRowLengthNamesTheRow) {
  try {
    Game::parse("2 3\n1\n10\n10\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos);
  }
}

TEST(Parse, RejectsNonBinaryCharacter) {
  EXPECT_THROW(Game::parse("2 2\n1\n1x\n"), ParseError);
}

TEST(Parse, RejectsMalformedHeader) {
  EXPECT_THROW(Game::parse("abc\n1\n"), ParseError);
  EXPECT_THROW(Game::parse("1 3\n1\n10\n100\n"), ParseError);  // k < 2
  EXPECT_THROW(Game::parse(""), ParseError);
  EXPECT_THROW(Game::parse("2 1\n"), ParseError);  // no rows
}

TEST(Game, BitAccessAcrossWordBoundaries) {
  const std::uint32_t n = 40;  // triangle spans several words
  Game g(n, 2);
  std::vector<std::vector<bool>> mirror(n + 1);
  SplitRng rng(512);
  for (std::uint32_t j = 1; j <= n; ++j) {
    mirror[j].resize(j);
    for (std::uint32_t i = 0; i < j; ++i) {
      const bool bit = rng.bernoulli(0.5);
      mirror[j][i] = bit;
      g.set_bit(j, i, bit);
    }
  }
  for (std::uint32_t j = 1; j <= n; ++j) {
    std::uint32_t weight = 0;
    std::uint32_t last = 0;
    bool ordered = true;
    g.for_each_edge(j, [&](std::uint32_t i) {
      EXPECT_TRUE(mirror[j][i]);
      if (weight > 0 && i <= last) ordered = false;
      last = i;
      ++weight;
    });
    EXPECT_TRUE(ordered);
    std::uint32_t expected_weight = 0;
    for (std::uint32_t i = 0; i < j; ++i) {
      EXPECT_EQ(g.bit(j, i), bool(mirror[j][i]));
      expected_weight += mirror[j][i];
    }
    EXPECT_EQ(g.row_weight(j), expected_weight);
  }
}

TEST(Game, OrRowBitsMatchesSetBit) {
  for (std::uint32_t n : {63u, 64u, 65u, 130u}) {
    Game a(n, 2), b(n, 2);
    SplitRng rng(n);
    std::vector<std::uint64_t> words(n / 64 + 1);
    for (std::uint32_t j = 1; j <= n; ++j) {
      for (auto& w : words) w = rng.next_u64();
      a.or_row_bits(j, words.data());
      for (std::uint32_t i = 0; i < j; ++i)
        if ((words[i >> 6] >> (i & 63)) & 1) b.set_bit(j, i, true);
    }
    EXPECT_EQ(a, b);
  }
}

TEST(Game, RejectsOutOfTriangleAccess) {
  Game g(3, 2);
  EXPECT_THROW(g.bit(2, 2), std::out_of_range);
  EXPECT_THROW(g.bit(0, 0), std::out_of_range);
  EXPECT_THROW(g.bit(4, 0), std::out_of_range);
  EXPECT_THROW(g.set_bit(1, 1, true), std::out_of_range);
}

TEST(Game, RejectsDegenerateShapes) {
  EXPECT_THROW(Game(0, 2), std::invalid_argument);
  EXPECT_THROW(Game(3, 1), std::invalid_argument);
}

}  // namespace
}  // namespace subgames
