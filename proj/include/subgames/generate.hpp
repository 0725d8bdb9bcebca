#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "subgames/game.hpp"
#include "subgames/rng.hpp"

namespace subgames {

enum class GenVariant { rejection_base, deterministic_base };

struct GenConfig {
  std::uint32_t n = 0;
  std::uint32_t k = 2;
  std::uint64_t seed = 0;
  GenVariant variant = GenVariant::rejection_base;
  bool pin_losing = false;
  double edge_prob = 0.5;
  std::uint32_t restart_cap = 1000;
};

class GenerationFailure : public std::runtime_error {
 public:
  explicit GenerationFailure(const std::string& what) : std::runtime_error(what) {}
};

struct BalancedGame {
  Game game;
  // the value each position was built to have; win_values(game) equals this
  std::vector<std::uint32_t> assigned;
  std::uint32_t restarts = 0;
};

// Balanced-game sampler. Draws a value for every position, wires row j only
// to positions whose value v satisfies (v - 1) mod k <= w_j (the targets a
// value-w_j mover may legally profit from), and forces one edge per position
// to a target valued (w_j + 1) mod k so the intended value is attained.
//
// Feasibility of the forcing step depends only on the drawn values, never on
// the edge coins, so the rejection variant redraws just the value vector
// until it passes and then lays edges once. The resulting (values, edges)
// distribution is the same as redrawing everything.
inline BalancedGame gen_balanced(const GenConfig& cfg) {
  const std::uint32_t n = cfg.n, k = cfg.k;
  if (n < 1) throw std::invalid_argument("gen_balanced: n must be >= 1");
  if (k < 2) throw std::invalid_argument("gen_balanced: k must be >= 2");
  if (cfg.edge_prob <= 0.0 || cfg.edge_prob > 1.0)
    throw std::invalid_argument("gen_balanced: edge_prob must be in (0,1]");
  if (cfg.variant == GenVariant::deterministic_base && n < k)
    throw std::invalid_argument("gen_balanced: deterministic base needs n >= k");

  SplitRng rng(cfg.seed);
  std::vector<std::uint32_t> values(n + 1, 0);

  auto draw_values = [&] {
    values[0] = 0;
    std::uint32_t first_free = 1;
    if (cfg.variant == GenVariant::deterministic_base) {
      for (std::uint32_t w = 1; w < k; ++w) values[w] = k - w;
      first_free = k;
    }
    for (std::uint32_t j = first_free; j <= n; ++j)
      values[j] = static_cast<std::uint32_t>(rng.below(k));
    if (cfg.pin_losing) values[n] = 0;
  };

  // Every position j needs some earlier position valued (w_j + 1) mod k.
  auto feasible = [&] {
    std::vector<char> seen(k, 0);
    seen[values[0]] = 1;
    for (std::uint32_t j = 1; j <= n; ++j) {
      if (!seen[(values[j] + 1) % k]) return false;
      seen[values[j]] = 1;
    }
    return true;
  };

  std::uint32_t restarts = 0;
  draw_values();
  if (cfg.variant == GenVariant::rejection_base) {
    while (!feasible()) {
      if (++restarts >= cfg.restart_cap)
        throw GenerationFailure("gen_balanced: no feasible value assignment after " +
                                std::to_string(cfg.restart_cap) + " restarts (n=" +
                                std::to_string(n) + ", k=" + std::to_string(k) + ")");
      draw_values();
    }
  }

  Game g(n, k);
  if (cfg.edge_prob == 0.5) {
    // word-parallel path: an eligible bit with a fair coin is one random bit
    // masked by eligibility, so whole rows come from (OR of per-value
    // position masks) AND fresh random words
    const std::uint32_t word_count = n / 64 + 1;
    std::vector<std::vector<std::uint64_t>> value_mask(k);
    for (auto& m : value_mask) m.assign(word_count, 0);
    for (std::uint32_t i = 0; i <= n; ++i)
      value_mask[values[i]][i >> 6] |= 1ull << (i & 63);

    std::vector<std::uint64_t> row(word_count);
    for (std::uint32_t j = 1; j <= n; ++j) {
      const std::uint32_t w = values[j];
      const std::uint32_t forced_value = (w + 1) % k;
      const std::uint32_t row_words = (j + 63) / 64;
      for (std::uint32_t t = 0; t < row_words; ++t) {
        std::uint64_t eligible = 0;
        for (std::uint32_t v = 0; v < k; ++v)
          if ((v + k - 1) % k <= w) eligible |= value_mask[v][t];
        row[t] = eligible & rng.next_u64();
      }
      if (j & 63) row[row_words - 1] &= ~0ull >> (64 - (j & 63));

      bool have_forced = false;
      std::uint64_t forced_candidates = 0;
      for (std::uint32_t t = 0; t < row_words; ++t) {
        std::uint64_t f = value_mask[forced_value][t];
        if (t == row_words - 1 && (j & 63)) f &= ~0ull >> (64 - (j & 63));
        if (row[t] & f) have_forced = true;
        forced_candidates += std::uint64_t(std::popcount(f));
      }
      if (!have_forced) {
        std::uint64_t pick = rng.below(forced_candidates);
        for (std::uint32_t t = 0; t < row_words; ++t) {
          std::uint64_t f = value_mask[forced_value][t];
          if (t == row_words - 1 && (j & 63)) f &= ~0ull >> (64 - (j & 63));
          const auto in_word = std::uint64_t(std::popcount(f));
          if (pick >= in_word) {
            pick -= in_word;
            continue;
          }
          while (pick--) f &= f - 1;
          row[t] |= f & (~f + 1);  // lowest remaining candidate bit
          break;
        }
      }
      g.or_row_bits(j, row.data());
    }
    return {std::move(g), std::move(values), restarts};
  }

  for (std::uint32_t j = 1; j <= n; ++j) {
    const std::uint32_t w = values[j];
    const std::uint32_t forced_value = (w + 1) % k;
    bool have_forced = false;
    std::uint32_t forced_candidates = 0;
    for (std::uint32_t i = 0; i < j; ++i) {
      const std::uint32_t v = values[i];
      if (v == forced_value) ++forced_candidates;
      if ((v + k - 1) % k > w) continue;  // target not allowed for value w
      if (rng.bernoulli(cfg.edge_prob)) {
        g.set_bit(j, i, true);
        if (v == forced_value) have_forced = true;
      }
    }
    if (!have_forced) {
      std::uint64_t pick = rng.below(forced_candidates);
      for (std::uint32_t i = 0; i < j; ++i) {
        if (values[i] != forced_value) continue;
        if (pick-- == 0) {
          g.set_bit(j, i, true);
          break;
        }
      }
    }
  }
  return {std::move(g), std::move(values), restarts};
}

// Every row independently gets one edge (uniform column) with probability
// move_prob, otherwise stays empty. Output always satisfies is_restricted.
inline Game gen_restricted(std::uint32_t n, std::uint32_t k, std::uint64_t seed,
                           double move_prob = 1.0) {
  if (move_prob < 0.0 || move_prob > 1.0)
    throw std::invalid_argument("gen_restricted: move_prob must be in [0,1]");
  SplitRng rng(seed);
  Game g(n, k);
  for (std::uint32_t j = 1; j <= n; ++j)
    if (rng.bernoulli(move_prob))
      g.set_bit(j, static_cast<std::uint32_t>(rng.below(j)), true);
  return g;
}

// Every lower-triangle bit iid Bernoulli(1/2).
inline Game gen_dense_uniform(std::uint32_t n, std::uint32_t k, std::uint64_t seed) {
  SplitRng rng(seed);
  std::vector<std::uint64_t> words((Game::bit_count(n) + 63) / 64);
  for (auto& w : words) w = rng.next_u64();
  return Game::from_packed_words(n, k, std::move(words));
}

// Copy of the game differing in exactly bit (j, i).
inline Game flip_bit(const Game& game, std::uint32_t j, std::uint32_t i) {
  if (j < 1 || j > game.n() || i >= j)
    throw std::out_of_range("flip_bit: (" + std::to_string(j) + "," +
                            std::to_string(i) + ") is outside the lower triangle");
  Game flipped = game;
  flipped.set_bit(j, i, !game.bit(j, i));
  return flipped;
}

}  // namespace subgames
