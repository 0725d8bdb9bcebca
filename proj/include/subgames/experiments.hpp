#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "subgames/classical.hpp"
#include "subgames/game.hpp"
#include "subgames/generate.hpp"
#include "subgames/oracle.hpp"
#include "subgames/quantum.hpp"
#include "subgames/rng.hpp"
#include "subgames/stats.hpp"

namespace subgames {

// Runs body(0..total-1) across `jobs` worker threads (0 = all cores). Each
// index derives everything it needs from its own seed, so results do not
// depend on how indices land on workers.
inline void parallel_for(std::uint64_t total, unsigned jobs,
                         const std::function<void(std::uint64_t)>& body) {
  if (jobs == 0) jobs = std::thread::hardware_concurrency();
  if (jobs == 0) jobs = 1;
  if (jobs == 1 || total <= 1) {
    for (std::uint64_t i = 0; i < total; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= total) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// ---------------------------------------------------------------------------
// Sensitivity experiment: flip one random bit of a losing balanced game and
// see whether the game value moves.

// The four (j, i) regimes, in the order their change probabilities are
// known: (n,0) flips always change the value, (n,i>0) with rate 2/3,
// (j<n,0) with rate 1/6, interior bits with rate >= 1/18 (k = 3).
inline int sensitivity_case(std::uint32_t n, std::uint32_t j, std::uint32_t i) {
  if (j == n) return i == 0 ? 1 : 2;
  return i == 0 ? 3 : 4;
}

struct SensitivityRow {
  std::uint64_t trial = 0;
  std::uint32_t j = 0;
  std::uint32_t i = 0;
  int case_id = 0;
  bool changed = false;
};

// One trial: generate, flip, re-solve. force_case = 0 samples (j, i)
// uniformly over the triangle; 1..4 sample uniformly inside that regime.
inline SensitivityRow sensitivity_trial(std::uint32_t n, std::uint32_t k,
                                        std::uint64_t seed,
                                        GenVariant variant = GenVariant::rejection_base,
                                        int force_case = 0) {
  if (force_case != 0 && n < 3)
    throw std::invalid_argument("sensitivity_trial: forced cases need n >= 3");
  SplitRng rng(seed);
  GenConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.seed = rng.split(0).seed();
  cfg.variant = variant;
  cfg.pin_losing = true;
  const BalancedGame sample = gen_balanced(cfg);

  SplitRng pick = rng.split(1);
  std::uint32_t j = 0, i = 0;
  switch (force_case) {
    case 1:
      j = n, i = 0;
      break;
    case 2:
      j = n, i = 1 + std::uint32_t(pick.below(n - 1));
      break;
    case 3:
      j = 1 + std::uint32_t(pick.below(n - 1)), i = 0;
      break;
    case 4: {
      // interior bits: 2 <= j <= n-1, 1 <= i <= j-1
      std::uint64_t u = pick.below(std::uint64_t(n - 1) * (n - 2) / 2);
      j = 2;
      while (u >= j - 1) u -= j - 1, ++j;
      i = 1 + std::uint32_t(u);
      break;
    }
    default: {
      const std::uint64_t u = pick.below(Game::bit_count(n));
      j = std::uint32_t((std::sqrt(8.0 * double(u) + 1.0) + 1.0) / 2.0);
      while (Game::bit_count(j - 1) > u) --j;
      while (Game::bit_count(j) <= u) ++j;
      i = std::uint32_t(u - Game::bit_count(j - 1));
      break;
    }
  }

  const Game flipped = flip_bit(sample.game, j, i);
  CountingOracle oracle(flipped);
  const SolveReport report = classical_dp(oracle);
  // the unflipped game is losing by construction (position n pinned to 0)
  const bool changed = report.values[n] != 0;
  return {0, j, i, sensitivity_case(n, j, i), changed};
}

struct CaseStats {
  std::uint64_t trials = 0;
  std::uint64_t changed = 0;
  double rate() const { return trials ? double(changed) / double(trials) : 0.0; }
};

struct SensitivityResult {
  std::uint64_t trials = 0;
  std::uint64_t changed = 0;
  double p_hat = 0.0;
  Interval ci;
  std::array<CaseStats, 4> cases;  // indexed by case_id - 1
  std::vector<SensitivityRow> rows;
};

inline SensitivityResult run_sensitivity(std::uint32_t n, std::uint32_t k,
                                         std::uint64_t trials, std::uint64_t master_seed,
                                         GenVariant variant = GenVariant::rejection_base,
                                         int force_case = 0, unsigned jobs = 0) {
  SensitivityResult result;
  result.trials = trials;
  result.rows.resize(trials);
  const SplitRng base(master_seed);
  parallel_for(trials, jobs, [&](std::uint64_t t) {
    result.rows[t] = sensitivity_trial(n, k, base.split(t).seed(), variant, force_case);
    result.rows[t].trial = t;
  });
  for (const SensitivityRow& row : result.rows) {
    auto& c = result.cases[row.case_id - 1];
    ++c.trials;
    if (row.changed) {
      ++c.changed;
      ++result.changed;
    }
  }
  result.p_hat = trials ? double(result.changed) / double(trials) : 0.0;
  result.ci = wilson_interval(result.changed, trials);
  return result;
}

// ---------------------------------------------------------------------------
// Query-scaling benchmark.

enum class GameFamily { dense, restricted, balanced };

inline const char* family_name(GameFamily f) {
  switch (f) {
    case GameFamily::dense: return "dense";
    case GameFamily::restricted: return "restricted";
    case GameFamily::balanced: return "balanced";
  }
  return "?";
}

// walk and the exact solver only make sense on weight<=1 games, whatever
// family the benchmark was asked for
inline bool solver_needs_restricted(const std::string& id) {
  return id == "walk" || id == "quantum-restricted";
}

inline Game make_family_game(GameFamily family, std::uint32_t n, std::uint32_t k,
                             std::uint64_t seed) {
  switch (family) {
    case GameFamily::dense:
      return gen_dense_uniform(n, k, seed);
    case GameFamily::restricted:
      return gen_restricted(n, k, seed, 1.0);
    case GameFamily::balanced: {
      GenConfig cfg;
      cfg.n = n, cfg.k = k, cfg.seed = seed;
      return gen_balanced(cfg).game;
    }
  }
  throw std::invalid_argument("make_family_game: bad family");
}

inline SolveReport run_solver(const std::string& id, const Game& game, SplitRng& rng) {
  CountingOracle oracle(game);
  if (id == "dp") return classical_dp(oracle);
  if (id == "walk") {
    const WalkReport wr = restricted_walk(oracle);
    return {{wr.value}, wr.queries, "walk"};
  }
  if (id == "quantum") return solve_balanced(oracle, rng);
  if (id == "quantum-exactish") return solve_small_k(oracle, rng);
  if (id == "quantum-restricted") return solve_restricted(oracle);
  throw std::invalid_argument("unknown solver: " + id);
}

struct ScalingRow {
  std::string family;
  std::string solver;
  std::uint32_t n = 0;
  std::uint64_t trial = 0;
  std::uint64_t queries = 0;
  bool correct = false;
};

struct ScalingCell {
  std::string solver;
  std::uint32_t n = 0;
  std::uint64_t trials = 0;
  double mean_queries = 0.0;
  double stddev_queries = 0.0;
};

struct SolverFit {
  std::string solver;
  LogLogFit fit;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  std::vector<ScalingCell> cells;
  std::vector<SolverFit> fits;
};

inline ScalingResult run_scaling(const std::vector<std::uint32_t>& sizes,
                                 std::uint64_t trials,
                                 const std::vector<std::string>& solvers,
                                 std::uint64_t master_seed,
                                 GameFamily family = GameFamily::dense,
                                 unsigned jobs = 0, std::uint32_t k = 3) {
  if (sizes.empty() || solvers.empty() || trials == 0)
    throw std::invalid_argument("run_scaling: sizes, solvers and trials must be nonempty");
  ScalingResult result;
  result.rows.resize(solvers.size() * sizes.size() * trials);
  const SplitRng base(master_seed);
  parallel_for(result.rows.size(), jobs, [&](std::uint64_t flat) {
    const std::uint64_t trial = flat % trials;
    const std::uint64_t size_index = (flat / trials) % sizes.size();
    const std::uint64_t solver_index = flat / (trials * sizes.size());
    const std::string& solver = solvers[solver_index];
    const std::uint32_t n = sizes[size_index];
    const GameFamily effective =
        solver_needs_restricted(solver) ? GameFamily::restricted : family;
    const std::uint64_t game_seed = base.split(std::uint64_t(effective))
                                        .split(size_index)
                                        .split(trial)
                                        .seed();
    const Game game = make_family_game(effective, n, k, game_seed);
    SplitRng solver_rng =
        base.split(100 + solver_index).split(size_index).split(trial);
    const SolveReport report = run_solver(solver, game, solver_rng);
    const ValueVector reference = win_values(game);
    const bool correct = report.values.size() == reference.size()
                             ? report.values == reference
                             : report.values.back() == reference.back();
    result.rows[flat] = {family_name(effective), solver, n, trial, report.queries,
                         correct};
  });

  for (std::size_t s = 0; s < solvers.size(); ++s) {
    std::vector<std::pair<double, double>> points;
    for (std::size_t si = 0; si < sizes.size(); ++si) {
      std::vector<double> queries;
      queries.reserve(trials);
      for (std::uint64_t t = 0; t < trials; ++t)
        queries.push_back(
            double(result.rows[(s * sizes.size() + si) * trials + t].queries));
      ScalingCell cell;
      cell.solver = solvers[s];
      cell.n = sizes[si];
      cell.trials = trials;
      cell.mean_queries = mean(queries);
      cell.stddev_queries = sample_stddev(queries);
      result.cells.push_back(cell);
      points.emplace_back(double(sizes[si]), cell.mean_queries);
    }
    if (sizes.size() >= 3)
      result.fits.push_back({solvers[s], fit_loglog_slope(points)});
  }
  return result;
}

// ---------------------------------------------------------------------------
// Whole-vector error rate of the bounded-error solver on fresh dense games.

struct ErrorRateResult {
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double fraction = 0.0;
  Interval ci;
};

inline ErrorRateResult run_error_rate(std::uint32_t n, std::uint64_t trials,
                                      std::uint64_t master_seed, unsigned jobs = 0,
                                      std::uint32_t k = 3) {
  std::vector<char> wrong(trials, 0);
  const SplitRng base(master_seed);
  parallel_for(trials, jobs, [&](std::uint64_t t) {
    const SplitRng stream = base.split(t);
    const Game game = gen_dense_uniform(n, k, stream.split(0).seed());
    CountingOracle dp_oracle(game);
    const SolveReport reference = classical_dp(dp_oracle);
    CountingOracle oracle(game);
    SplitRng rng = stream.split(1);
    const SolveReport report = solve_balanced(oracle, rng);
    wrong[t] = report.values != reference.values;
  });
  ErrorRateResult result;
  result.trials = trials;
  for (char w : wrong) result.errors += w;
  result.fraction = trials ? double(result.errors) / double(trials) : 0.0;
  result.ci = wilson_interval(result.errors, trials);
  return result;
}

// ---------------------------------------------------------------------------
// CSV emission (RFC 4180: quote only when needed, LF line endings).

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline void write_scaling_csv(std::ostream& out, const std::vector<ScalingRow>& rows) {
  out << "family,solver,n,trial,queries,correct\n";
  for (const ScalingRow& r : rows)
    out << csv_field(r.family) << ',' << csv_field(r.solver) << ',' << r.n << ','
        << r.trial << ',' << r.queries << ',' << (r.correct ? 1 : 0) << '\n';
}

inline void write_sensitivity_csv(std::ostream& out,
                                  const std::vector<SensitivityRow>& rows) {
  out << "trial,j,i,case,changed\n";
  for (const SensitivityRow& r : rows)
    out << r.trial << ',' << r.j << ',' << r.i << ',' << r.case_id << ','
        << (r.changed ? 1 : 0) << '\n';
}

}  // namespace subgames
