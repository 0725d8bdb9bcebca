#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "subgames/classical.hpp"
#include "subgames/game.hpp"
#include "subgames/oracle.hpp"
#include "subgames/rng.hpp"

namespace subgames {

// Event-exact simulation of the Grover-family subroutines: instead of
// evolving amplitudes, each measurement outcome is drawn from the exact
// closed-form distribution, and oracle cost is charged per the convention
// that one Grover iteration costs one query and each measurement check
// costs one more. Outcome distributions and query counts match the real
// algorithms; per-round simulation cost is O(1).

class PromiseViolation : public std::runtime_error {
 public:
  explicit PromiseViolation(std::uint32_t row)
      : std::runtime_error("row " + std::to_string(row) +
                           " has Hamming weight >= 2; exact search is only "
                           "defined on restricted games") {}
};

struct SearchOutcome {
  std::optional<std::uint32_t> found;
  std::uint64_t queries = 0;
};

// Probability that measuring after t Grover iterations over m items with M
// marked yields a marked item: sin^2((2t+1) * theta), sin^2(theta) = M/m.
inline double grover_success_prob(std::uint64_t m, std::uint64_t M, std::uint64_t t) {
  if (M == 0) return 0.0;
  if (M >= m) return 1.0;
  const double theta = std::asin(std::sqrt(double(M) / double(m)));
  const double s = std::sin(double(2 * t + 1) * theta);
  return s * s;
}

// A marked set materialized as an index list. count()/pick() is all the
// search schedule needs; conditioned on success the measured item is
// uniform over the marked set.
struct ExplicitMarkedSet {
  std::vector<std::uint32_t> items;
  std::uint64_t count() const { return items.size(); }
  std::uint32_t pick(SplitRng& rng) const { return items[rng.below(items.size())]; }
};

using RoundHook = std::function<void(std::uint64_t t, bool success)>;

struct BbhtOptions {
  // max charged queries before declaring no solution; < 0 means 4.5 * sqrt(m)
  double budget = -1.0;
  // run the whole schedule even after a hit (fixed-cost existence search)
  bool exhaust = false;
  const RoundHook* round_hook = nullptr;
};

// Grover search with unknown marked count: rounds r = 0, 1, ... draw an
// iteration count t uniform in [0, min(1.2^r, sqrt(m))) and charge t + 1
// (t iterations plus the measurement check). A round succeeds with
// probability sin^2((2t+1) theta). With nothing marked the schedule runs
// until the budget is spent; iteration counts are clamped to the remaining
// budget so the total never exceeds it by more than the final check.
template <class MarkedView>
SearchOutcome bbht_search(CountingOracle& oracle, std::uint64_t m,
                          const MarkedView& marked, SplitRng& rng,
                          const BbhtOptions& opt = {}) {
  if (m == 0) return {std::nullopt, 0};
  const double cap = std::sqrt(double(m));
  const double budget = opt.budget < 0.0 ? 4.5 * cap : opt.budget;
  double round_budget = 1.0;
  std::uint64_t spent = 0;
  std::optional<std::uint32_t> hit;
  while (double(spent) < budget) {
    const auto t_range = std::uint64_t(std::ceil(round_budget));
    std::uint64_t t = rng.below(t_range < 1 ? 1 : t_range);
    const double remaining = budget - double(spent);
    if (double(t + 1) > remaining && remaining > 1.0)
      t = std::uint64_t(remaining - 1.0);
    else if (double(t + 1) > remaining)
      t = 0;
    oracle.charge(t + 1);
    spent += t + 1;
    const std::uint64_t M = marked.count();
    const bool success = M > 0 && rng.unit() < grover_success_prob(m, M, t);
    if (opt.round_hook) (*opt.round_hook)(t, success);
    if (success) {
      if (!hit) hit = marked.pick(rng);
      if (!opt.exhaust) break;
    }
    round_budget = std::min(round_budget * 1.2, cap);
  }
  return {hit, spent};
}

namespace detail {

// Row edges bucketed by payoff; marked = edges with payoff above a moving
// threshold (every edge while no threshold is set).
struct BucketedRow {
  std::vector<std::vector<std::uint32_t>> by_payoff;

  template <class PayoffFn>
  BucketedRow(CountingOracle& oracle, std::uint32_t row, std::uint32_t k,
              PayoffFn&& payoff_of)
      : by_payoff(k) {
    CountingOracle::Superposition scope(oracle);
    oracle.superposed().for_each_edge(
        row, [&](std::uint32_t i) { by_payoff[payoff_of(i)].push_back(i); });
  }
};

struct AboveThresholdView {
  const BucketedRow* row;
  // edges strictly better than this payoff are marked; nullopt marks all
  std::optional<std::uint32_t> threshold;

  std::uint64_t count() const {
    std::uint64_t total = 0;
    const std::uint32_t floor = threshold ? *threshold + 1 : 0;
    for (std::uint32_t w = floor; w < row->by_payoff.size(); ++w)
      total += row->by_payoff[w].size();
    return total;
  }

  std::uint32_t pick(SplitRng& rng) const {
    std::uint64_t u = rng.below(count());
    const std::uint32_t floor = threshold ? *threshold + 1 : 0;
    for (std::uint32_t w = floor; w < row->by_payoff.size(); ++w) {
      const auto& bucket = row->by_payoff[w];
      if (u < bucket.size()) return bucket[u];
      u -= bucket.size();
    }
    throw std::logic_error("AboveThresholdView::pick on empty marked set");
  }
};

}  // namespace detail

// Durr-Hoyer maximum search over row `row` of the oracle's game.
// payoff_of(i) is consulted only for edges (it is derived from already
// computed position values). One charged query samples a random starting
// index; afterwards the threshold climbs through repeated searches for a
// strictly better edge, stopping on a no-result or when 22.5 * sqrt(row)
// total queries are spent. Returns an index attaining the maximal payoff
// with probability >= 0.5 (empirically much better), or nothing for an
// empty row.
template <class PayoffFn>
SearchOutcome dh_max(CountingOracle& oracle, std::uint32_t row, std::uint32_t k,
                     PayoffFn&& payoff_of, SplitRng& rng) {
  const std::uint64_t start = oracle.count();
  const double budget = 22.5 * std::sqrt(double(row));
  const detail::BucketedRow buckets(oracle, row, k, payoff_of);

  std::optional<std::uint32_t> best;
  detail::AboveThresholdView view{&buckets, std::nullopt};
  {
    const auto probe = static_cast<std::uint32_t>(rng.below(row));
    if (oracle.query(row, probe)) {
      best = probe;
      view.threshold = payoff_of(probe);
    }
  }
  for (;;) {
    const double remaining = budget - double(oracle.count() - start);
    if (remaining <= 0.0) break;
    BbhtOptions opt;
    opt.budget = std::min(4.5 * std::sqrt(double(row)), remaining);
    const SearchOutcome found = bbht_search(oracle, row, view, rng, opt);
    if (!found.found) break;
    best = found.found;
    view.threshold = payoff_of(*found.found);
  }
  return {best, oracle.count() - start};
}

// Iteration count of the phase-matched exact Grover search for a unique
// marked item among m: ceil(pi / (4 asin(1/sqrt(m))) - 1/2); 0 for m = 1.
inline std::uint64_t exact_grover_iterations(std::uint64_t m) {
  if (m <= 1) return 0;
  const double beta = std::asin(1.0 / std::sqrt(double(m)));
  return std::uint64_t(std::ceil(std::numbers::pi / (4.0 * beta) - 0.5));
}

// Exact Grover search on a row promised to have Hamming weight <= 1.
// Deterministic: charges T(row) iterations plus one verification query,
// returns the unique set column or nothing. Weight >= 2 is a promise
// violation and throws.
inline SearchOutcome exact_grover_row(CountingOracle& oracle, std::uint32_t row) {
  const std::uint64_t start = oracle.count();
  std::optional<std::uint32_t> unique;
  {
    CountingOracle::Superposition scope(oracle);
    std::uint32_t weight = 0;
    oracle.superposed().for_each_edge(row, [&](std::uint32_t i) {
      ++weight;
      unique = i;
    });
    if (weight >= 2) throw PromiseViolation(row);
  }
  oracle.charge(exact_grover_iterations(row));
  const std::uint32_t candidate = unique.value_or(0);
  const bool hit = oracle.query(row, candidate);
  return {hit ? std::optional<std::uint32_t>(candidate) : std::nullopt,
          oracle.count() - start};
}

// Quantum solver for arbitrary k: position by position, take the best
// payoff over ceil(2 log2 n) Durr-Hoyer maximum searches (at least one).
// Found payoffs are always genuinely attainable, so repetition can only
// under-, never overestimate; per-position error is at most 2^-(2 log2 n).
inline SolveReport solve_balanced(CountingOracle& oracle, SplitRng& rng) {
  const std::uint32_t n = oracle.n(), k = oracle.k();
  const std::uint64_t start = oracle.count();
  const auto reps =
      std::max<std::uint32_t>(1, std::uint32_t(std::ceil(2.0 * std::log2(double(n)))));
  ValueVector values(n + 1, 0);
  for (std::uint32_t j = 1; j <= n; ++j) {
    const auto payoff_of = [&](std::uint32_t i) { return (values[i] + k - 1) % k; };
    for (std::uint32_t z = 0; z < reps; ++z) {
      const SearchOutcome out = dh_max(oracle, j, k, payoff_of, rng);
      if (out.found) {
        const std::uint32_t payoff = payoff_of(*out.found);
        if (payoff > values[j]) values[j] = payoff;
      }
    }
  }
  return {std::move(values), oracle.count() - start, "quantum"};
}

// Small-k solver with a fixed-cost schedule: for each position, scan payoff
// targets t = k-1 .. 1 and run ceil(2 log2 n log2 k) existence searches for
// an edge worth exactly t; the first confirmed t is the position's value.
// Every search runs its whole schedule whether or not it hits early, so the
// query count is worst-case bounded, not just in expectation.
inline SolveReport solve_small_k(CountingOracle& oracle, SplitRng& rng) {
  const std::uint32_t n = oracle.n(), k = oracle.k();
  if (k > 16)
    throw std::invalid_argument("solve_small_k: k must be <= 16, got " +
                                std::to_string(k));
  const std::uint64_t start = oracle.count();
  const auto reps = std::max<std::uint32_t>(
      1, std::uint32_t(std::ceil(2.0 * std::log2(double(n)) * std::log2(double(k)))));
  ValueVector values(n + 1, 0);
  for (std::uint32_t j = 1; j <= n; ++j) {
    const auto payoff_of = [&](std::uint32_t i) { return (values[i] + k - 1) % k; };
    const detail::BucketedRow buckets(oracle, j, k, payoff_of);
    for (std::uint32_t t = k - 1; t >= 1 && values[j] == 0; --t) {
      const ExplicitMarkedSet marked{buckets.by_payoff[t]};
      BbhtOptions opt;
      opt.exhaust = true;
      for (std::uint32_t z = 0; z < reps; ++z)
        if (bbht_search(oracle, j, marked, rng, opt).found) values[j] = t;
    }
  }
  return {std::move(values), oracle.count() - start, "quantum-exactish"};
}

// Restricted-game solver: one exact Grover search per row, no randomness,
// no error. Query count is sum_j (T(j) + 1), a function of n alone.
inline SolveReport solve_restricted(CountingOracle& oracle) {
  const std::uint32_t n = oracle.n(), k = oracle.k();
  const std::uint64_t start = oracle.count();
  ValueVector values(n + 1, 0);
  for (std::uint32_t j = 1; j <= n; ++j) {
    const SearchOutcome out = exact_grover_row(oracle, j);
    values[j] = out.found ? (values[*out.found] + k - 1) % k : 0;
  }
  return {std::move(values), oracle.count() - start, "quantum-restricted"};
}

}  // namespace subgames
