#pragma once

// Test-side oracles and statistics helpers. The winning-function reference
// here is a memoized top-down recursion written straight from the
// definition; it shares no code path with the library's bottom-up solver,
// which is the point.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "subgames/game.hpp"
#include "subgames/rng.hpp"

namespace subgames::testing {

inline std::uint32_t reference_win(const Game& g, std::uint32_t j,
                                   std::vector<std::int64_t>& memo) {
  if (j == 0) return 0;
  if (memo[j] >= 0) return std::uint32_t(memo[j]);
  std::int64_t best = -1;
  for (std::uint32_t i = 0; i < j; ++i) {
    if (!g.bit(j, i)) continue;
    const std::uint32_t payoff = (reference_win(g, i, memo) + g.k() - 1) % g.k();
    if (std::int64_t(payoff) > best) best = payoff;
  }
  memo[j] = best < 0 ? 0 : best;
  return std::uint32_t(memo[j]);
}

inline ValueVector reference_win_values(const Game& g) {
  std::vector<std::int64_t> memo(g.n() + 1, -1);
  ValueVector values(g.n() + 1);
  for (std::uint32_t j = 0; j <= g.n(); ++j) values[j] = reference_win(g, j, memo);
  return values;
}

inline Game random_game(SplitRng& rng, std::uint32_t n, std::uint32_t k,
                        double density) {
  Game g(n, k);
  for (std::uint32_t j = 1; j <= n; ++j)
    for (std::uint32_t i = 0; i < j; ++i)
      if (rng.bernoulli(density)) g.set_bit(j, i, true);
  return g;
}

// Regularized upper incomplete gamma Q(a, x): series for small x,
// continued fraction otherwise.
inline double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  const double log_prefix = -x + a * std::log(x) - std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a, del = 1.0 / a, sum = del;
    for (int i = 0; i < 1000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(log_prefix);
  }
  double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(log_prefix) * h;
}

inline double chi_square_pvalue(double stat, double df) {
  return gamma_q(df / 2.0, stat / 2.0);
}

// Chi-square goodness of fit for per-bin binomial counts: bin b saw
// successes[b] hits in totals[b] draws at expected probability probs[b].
// Bins with expected hit or miss counts under 5 are skipped (standard
// validity rule); each kept bin contributes one degree of freedom.
struct BinnedChiSquare {
  double stat = 0.0;
  std::uint64_t df = 0;
};

inline BinnedChiSquare binomial_chi_square(const std::vector<std::uint64_t>& successes,
                                           const std::vector<std::uint64_t>& totals,
                                           const std::vector<double>& probs) {
  BinnedChiSquare out;
  for (std::size_t b = 0; b < totals.size(); ++b) {
    const double n = double(totals[b]);
    const double expected_hit = n * probs[b];
    const double expected_miss = n * (1.0 - probs[b]);
    if (expected_hit < 5.0 || expected_miss < 5.0) continue;
    const double dev = double(successes[b]) - expected_hit;
    out.stat += dev * dev / (expected_hit * (1.0 - probs[b]));
    out.df += 1;
  }
  return out;
}

}  // namespace subgames::testing
