// Command-line front end: generate game files, solve them with any of the
// implemented solvers, and run the sensitivity / scaling experiments with
// reproducible seeds and CSV output.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "subgames/subgames.hpp"

namespace {

constexpr const char* kToolVersion = "subgames 1.0.0";

// flag misuse that CLI11 cannot catch on its own; mapped to exit code 2
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

subgames::GenVariant parse_variant(const std::string& name) {
  if (name == "rejection") return subgames::GenVariant::rejection_base;
  if (name == "deterministic") return subgames::GenVariant::deterministic_base;
  throw UsageError("unknown variant: " + name);
}

subgames::GameFamily parse_family(const std::string& name) {
  if (name == "dense") return subgames::GameFamily::dense;
  if (name == "restricted") return subgames::GameFamily::restricted;
  if (name == "balanced") return subgames::GameFamily::balanced;
  throw UsageError("unknown family: " + name);
}

struct GenArgs {
  std::string family;
  std::uint32_t n = 0;
  std::uint32_t k = 3;
  std::uint64_t seed = 0;
  std::uint32_t count = 1;
  std::string out_dir;
  std::string variant = "rejection";
  bool pin_losing = false;
  double move_prob = 1.0;
  bool move_prob_set = false;
  bool variant_set = false;
  bool pin_losing_set = false;
};

int cmd_gen(const GenArgs& args) {
  const subgames::GameFamily family = parse_family(args.family);
  if (family != subgames::GameFamily::balanced && (args.variant_set || args.pin_losing_set))
    throw UsageError("--variant/--pin-losing only apply to --family balanced");
  if (family != subgames::GameFamily::restricted && args.move_prob_set)
    throw UsageError("--move-prob only applies to --family restricted");

  std::filesystem::create_directories(args.out_dir);
  const subgames::SplitRng master(args.seed);
  std::vector<std::string> outputs;
  for (std::uint32_t idx = 0; idx < args.count; ++idx) {
    const std::uint64_t seed = master.split(idx).seed();
    subgames::Game game = [&] {
      switch (family) {
        case subgames::GameFamily::dense:
          return subgames::gen_dense_uniform(args.n, args.k, seed);
        case subgames::GameFamily::restricted:
          return subgames::gen_restricted(args.n, args.k, seed, args.move_prob);
        default: {
          subgames::GenConfig cfg;
          cfg.n = args.n, cfg.k = args.k, cfg.seed = seed;
          cfg.variant = parse_variant(args.variant);
          cfg.pin_losing = args.pin_losing;
          subgames::BalancedGame sample = subgames::gen_balanced(cfg);
          if (cfg.pin_losing &&
              !subgames::classify(sample.game, subgames::win_values(sample.game)).is_losing)
            throw std::logic_error("generator produced a non-losing pinned game");
          return std::move(sample.game);
        }
      }
    }();
    char name[128];
    std::snprintf(name, sizeof name, "%s_n%u_k%u_s%llu_%03u.subgame",
                  args.family.c_str(), args.n, args.k,
                  static_cast<unsigned long long>(args.seed), idx);
    const std::string path = (std::filesystem::path(args.out_dir) / name).string();
    write_file(path, game.serialize());
    outputs.push_back(name);
  }

  nlohmann::json flags{{"family", args.family}, {"n", args.n},     {"k", args.k},
                       {"seed", args.seed},     {"count", args.count},
                       {"out_dir", args.out_dir}};
  if (family == subgames::GameFamily::balanced) {
    flags["variant"] = args.variant;
    flags["pin_losing"] = args.pin_losing;
  }
  if (family == subgames::GameFamily::restricted) flags["move_prob"] = args.move_prob;
  nlohmann::json manifest{{"command", "gen"},
                          {"flags", flags},
                          {"master_seed", args.seed},
                          {"outputs", outputs},
                          {"tool_version", kToolVersion}};
  write_file((std::filesystem::path(args.out_dir) / "manifest.json").string(),
             manifest.dump(2) + "\n");
  std::cout << "wrote " << outputs.size() << " game(s) to " << args.out_dir << "\n";
  return 0;
}

struct SolveArgs {
  std::string game_path;
  std::string solver;
  std::uint64_t seed = 0;
  bool full_vector = false;
  bool verify = false;
  std::string csv_path;
};

int cmd_solve(const SolveArgs& args) {
  const subgames::Game game = subgames::Game::parse(read_file(args.game_path));
  if (subgames::solver_needs_restricted(args.solver) && !subgames::is_restricted(game))
    throw std::runtime_error("precondition violation: solver '" + args.solver +
                             "' needs a restricted game (every row weight <= 1)");
  if (args.full_vector && args.solver == "walk")
    throw UsageError("--full-vector is not available for the walk solver "
                     "(it only computes the final value)");

  subgames::SplitRng rng(args.seed);
  const subgames::SolveReport report = subgames::run_solver(args.solver, game, rng);
  const std::uint32_t value = report.values.back();

  std::cout << "game: " << args.game_path << " n=" << game.n() << " k=" << game.k()
            << "\n";
  std::cout << "solver: " << args.solver << " seed=" << args.seed << "\n";
  std::cout << "value: " << value << "\n";
  std::cout << "queries: " << report.queries << "\n";

  std::string correct_field;
  if (args.verify) {
    const subgames::ValueVector reference = subgames::win_values(game);
    const bool correct = report.values.size() == reference.size()
                             ? report.values == reference
                             : value == reference.back();
    std::cout << "correct: " << (correct ? "true" : "false") << "\n";
    correct_field = correct ? "1" : "0";
  }
  if (args.full_vector) {
    std::cout << "values:";
    for (std::uint32_t v : report.values) std::cout << ' ' << v;
    std::cout << "\n";
  }
  if (!args.csv_path.empty()) {
    std::ostringstream csv;
    csv << "solver,n,value,queries,correct\n"
        << args.solver << ',' << game.n() << ',' << value << ',' << report.queries
        << ',' << correct_field << '\n';
    write_file(args.csv_path, csv.str());
  }
  return 0;
}

struct BenchArgs {
  std::vector<std::uint32_t> sizes{64, 128, 256, 512, 1024};
  std::uint64_t trials = 50;
  std::vector<std::string> solvers{"dp", "quantum"};
  std::uint64_t seed = 0;
  std::string csv_path;
  std::string family = "dense";
  std::uint32_t k = 3;
  unsigned jobs = 0;
};

int cmd_bench(const BenchArgs& args) {
  for (const std::string& s : args.solvers)
    if (s != "dp" && s != "walk" && s != "quantum" && s != "quantum-exactish" &&
        s != "quantum-restricted")
      throw UsageError("unknown solver: " + s);
  const subgames::GameFamily family = parse_family(args.family);
  const subgames::ScalingResult result = subgames::run_scaling(
      args.sizes, args.trials, args.solvers, args.seed, family, args.jobs, args.k);

  if (!args.csv_path.empty()) {
    std::ostringstream csv;
    subgames::write_scaling_csv(csv, result.rows);
    write_file(args.csv_path, csv.str());
  }

  std::cout << "bench: family=" << args.family << " k=" << args.k
            << " trials=" << args.trials << " seed=" << args.seed << "\n";
  std::cout << std::fixed;
  std::cout << "solver              n        mean-queries        stddev\n";
  for (const subgames::ScalingCell& cell : result.cells)
    std::cout << std::left << std::setw(20) << cell.solver << std::setw(9) << cell.n
              << std::setw(20) << std::setprecision(1) << cell.mean_queries
              << std::setprecision(2) << cell.stddev_queries << "\n";
  std::cout << "solver              slope     r2\n";
  for (const subgames::SolverFit& fit : result.fits)
    std::cout << std::left << std::setw(20) << fit.solver << std::setw(10)
              << std::setprecision(3) << fit.fit.slope << std::setprecision(4)
              << fit.fit.r2 << "\n";
  return 0;
}

struct SensitivityArgs {
  std::uint32_t n = 100;
  std::uint32_t k = 3;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  std::string csv_path;
  int force_case = 0;
  std::string variant = "rejection";
  unsigned jobs = 0;
};

int cmd_sensitivity(const SensitivityArgs& args) {
  const subgames::SensitivityResult result =
      subgames::run_sensitivity(args.n, args.k, args.trials, args.seed,
                                parse_variant(args.variant), args.force_case, args.jobs);
  if (!args.csv_path.empty()) {
    std::ostringstream csv;
    subgames::write_sensitivity_csv(csv, result.rows);
    write_file(args.csv_path, csv.str());
  }
  std::cout << "sensitivity: n=" << args.n << " k=" << args.k << " trials=" << args.trials
            << " seed=" << args.seed << " variant=" << args.variant
            << " force-case=" << args.force_case << "\n";
  std::cout << std::fixed << std::setprecision(6);
  std::cout << "p_hat: " << result.p_hat << "\n";
  std::cout << "wilson95: [" << result.ci.lo << ", " << result.ci.hi << "]\n";
  static const char* kCaseNames[] = {"j=n, i=0", "j=n, i>0", "j<n, i=0",
                                     "0<i<j<n"};
  for (int c = 0; c < 4; ++c) {
    const subgames::CaseStats& stats = result.cases[c];
    std::cout << "case " << c + 1 << " (" << kCaseNames[c] << "): trials=" << stats.trials
              << " changed=" << stats.changed << " rate="
              << (stats.trials ? stats.rate() : 0.0) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-player Subtraction game solvers and query-complexity benchmarks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate .subgame files");
  gen_cmd->add_option("--family", gen.family, "dense | restricted | balanced")
      ->required()
      ->check(CLI::IsMember({"dense", "restricted", "balanced"}));
  gen_cmd->add_option("--n", gen.n, "heap size")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--k", gen.k, "player count")->check(CLI::Range(2u, 1u << 20));
  gen_cmd->add_option("--seed", gen.seed, "master seed");
  gen_cmd->add_option("--count", gen.count, "number of games")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--out-dir", gen.out_dir, "output directory")->required();
  gen_cmd->add_option("--variant", gen.variant, "rejection | deterministic (balanced)")
      ->check(CLI::IsMember({"rejection", "deterministic"}))
      ->trigger_on_parse()
      ->each([&](const std::string&) { gen.variant_set = true; });
  gen_cmd->add_flag("--pin-losing", gen.pin_losing, "pin position n to value 0 (balanced)")
      ->each([&](const std::string&) { gen.pin_losing_set = true; });
  gen_cmd->add_option("--move-prob", gen.move_prob, "per-row move probability (restricted)")
      ->check(CLI::Range(0.0, 1.0))
      ->each([&](const std::string&) { gen.move_prob_set = true; });

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve a .subgame file");
  solve_cmd->add_option("--game", solve.game_path, "path to .subgame file")->required();
  solve_cmd
      ->add_option("--solver", solve.solver,
                   "dp | walk | quantum | quantum-exactish | quantum-restricted")
      ->required()
      ->check(CLI::IsMember(
          {"dp", "walk", "quantum", "quantum-exactish", "quantum-restricted"}));
  solve_cmd->add_option("--seed", solve.seed, "rng seed for randomized solvers");
  solve_cmd->add_flag("--full-vector", solve.full_vector, "print all position values");
  solve_cmd->add_flag("--verify", solve.verify, "check the result against the DP solver");
  solve_cmd->add_option("--csv", solve.csv_path, "write a one-row CSV");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "query-scaling benchmark");
  bench_cmd->add_option("--sizes", bench.sizes, "heap sizes")->delimiter(',');
  bench_cmd->add_option("--trials", bench.trials, "trials per (solver, n) cell")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--solvers", bench.solvers, "solvers to benchmark")->delimiter(',');
  bench_cmd->add_option("--seed", bench.seed, "master seed");
  bench_cmd->add_option("--csv", bench.csv_path, "write per-trial rows");
  bench_cmd->add_option("--family", bench.family, "dense | balanced (restricted solvers always use restricted games)")
      ->check(CLI::IsMember({"dense", "balanced", "restricted"}));
  bench_cmd->add_option("--k", bench.k, "player count")->check(CLI::Range(2u, 1u << 20));
  bench_cmd->add_option("--jobs", bench.jobs, "worker threads (0 = all cores)");

  SensitivityArgs sens;
  CLI::App* sens_cmd = app.add_subcommand("sensitivity", "one-bit-flip Monte Carlo");
  sens_cmd->add_option("--n", sens.n, "heap size")->check(CLI::PositiveNumber);
  sens_cmd->add_option("--k", sens.k, "player count")->check(CLI::Range(2u, 1u << 20));
  sens_cmd->add_option("--trials", sens.trials, "trial count")->check(CLI::PositiveNumber);
  sens_cmd->add_option("--seed", sens.seed, "master seed");
  sens_cmd->add_option("--csv", sens.csv_path, "write per-trial rows");
  sens_cmd->add_option("--force-case", sens.force_case,
                       "condition (j,i) on one of the four regimes (1..4)")
      ->check(CLI::Range(1, 4));
  sens_cmd->add_option("--variant", sens.variant, "rejection | deterministic")
      ->check(CLI::IsMember({"rejection", "deterministic"}));
  sens_cmd->add_option("--jobs", sens.jobs, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
    if (*gen_cmd) return cmd_gen(gen);
    if (*solve_cmd) return cmd_solve(solve);
    if (*bench_cmd) return cmd_bench(bench);
    if (*sens_cmd) return cmd_sensitivity(sens);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
