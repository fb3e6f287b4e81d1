// hqcqp: solve, generate, benchmark and inspect homogeneous QCQP instances.
//
// Exit codes: 0 success, 1 parse/solver/IO error, 2 infeasible (solve only).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hqcqp/bench.hpp"
#include "hqcqp/generator.hpp"
#include "hqcqp/io.hpp"
#include "hqcqp/oracle.hpp"
#include "hqcqp/problem.hpp"

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("HQCQP_SEED")) {
    try {
      return std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparsable HQCQP_SEED='" << env << "'\n";
    }
  }
  return 0x5EED;
}

struct SolveArgs {
  std::string input;
  double threshold = 1e-4;
  int max_iter = 200;
  bool json = false;
  bool csv_trace = false;
};

int cmd_solve(const SolveArgs& a) {
  hqcqp::SearchConfig cfg;
  cfg.interval_threshold = a.threshold;
  cfg.max_iterations = a.max_iter;
  try {
    const hqcqp::HqcqpProblem prob = hqcqp::read_problem_file(a.input);
    const hqcqp::Solution sol = hqcqp::solve(prob, cfg);
    if (a.csv_trace)
      hqcqp::write_trace_csv(std::cout, sol.trace);
    else
      std::cout << hqcqp::solution_to_json(sol).dump(2) << '\n';
    return 0;
  } catch (const hqcqp::InfeasibleError& e) {
    std::cerr << e.what();
    if (e.limit_case()) std::cerr << " (c* vanishes: feasible only in the limit p -> inf)";
    std::cerr << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

struct GenerateArgs {
  int dim = 9;
  int constraints = 2;
  int count = 1;
  std::uint64_t seed = 0;
  double margin = 0.5;
  std::string out_dir = ".";
};

int cmd_generate(const GenerateArgs& a) {
  namespace fs = std::filesystem;
  try {
    hqcqp::GeneratorSpec probe{a.dim, a.constraints, a.margin, a.seed};
    probe.validate();
    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    if (ec) throw hqcqp::Error("cannot create " + a.out_dir + ": " + ec.message());
    for (int k = 0; k < a.count; ++k) {
      hqcqp::GeneratorSpec spec = probe;
      spec.seed = hqcqp::derive_seed(a.seed, static_cast<std::uint64_t>(a.dim),
                                     static_cast<std::uint64_t>(a.constraints),
                                     static_cast<std::uint64_t>(k));
      const fs::path path = fs::path(a.out_dir) / ("problem_" + std::to_string(k) + ".json");
      hqcqp::write_problem_file(path, hqcqp::random_feasible_problem(spec));
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

struct BenchArgs {
  std::vector<int> dims{9, 16, 25};
  std::vector<int> constraints{2, 3};
  int count = 100;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_bench(const BenchArgs& a) {
  try {
    hqcqp::BenchConfig cfg;
    cfg.dims = a.dims;
    cfg.constraints = a.constraints;
    cfg.count = a.count;
    cfg.seed = a.seed;
    const hqcqp::BenchReport report = hqcqp::run_bench(cfg);
    if (a.out.empty()) {
      hqcqp::write_bench_csv(std::cout, report.rows);
    } else {
      std::ofstream f(a.out);
      if (!f) throw hqcqp::Error("cannot write " + a.out);
      hqcqp::write_bench_csv(f, report.rows);
    }
    hqcqp::write_timing_summary(std::cerr, report);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

struct RangeArgs {
  std::string input;
  std::size_t count = 10000;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_range(const RangeArgs& a) {
  try {
    const hqcqp::HqcqpProblem prob = hqcqp::read_problem_file(a.input);
    if (prob.num_constraints() < 2) throw hqcqp::Error("range export requires m >= 2");
    const hqcqp::ReducedProblem red = hqcqp::reduce(prob);
    const hqcqp::RangeSample s = hqcqp::sample_numerical_range(red.constraints(), a.count, a.seed);
    if (a.out.empty()) {
      hqcqp::write_range_csv(std::cout, s);
    } else {
      std::ofstream f(a.out);
      if (!f) throw hqcqp::Error("cannot write " + a.out);
      hqcqp::write_range_csv(f, s);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homogeneous QCQP eigen solver (1 to 3 quadratic constraints)"};
  app.require_subcommand(1);
  const std::uint64_t seed = default_seed();

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve a problem file and print the solution as JSON");
  solve->add_option("input", solve_args.input, "Problem JSON file")->required();
  solve->add_option("--threshold", solve_args.threshold, "Final search interval width")
      ->check(CLI::PositiveNumber);
  solve->add_option("--max-iter", solve_args.max_iter, "Dichotomous iteration budget")
      ->check(CLI::PositiveNumber);
  auto* json_flag = solve->add_flag("--json", solve_args.json, "Print the solution JSON (default)");
  solve->add_flag("--csv-trace", solve_args.csv_trace, "Print the iteration trace as CSV instead")
      ->excludes(json_flag);

  GenerateArgs gen_args;
  gen_args.seed = seed;
  auto* gen = app.add_subcommand("generate", "Write random feasible problem files");
  gen->add_option("--dim", gen_args.dim, "Problem dimension N")->required();
  gen->add_option("--constraints", gen_args.constraints, "Number of constraints (1-3)")->required();
  gen->add_option("--count", gen_args.count, "Number of files")->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", gen_args.seed, "Batch seed (default $HQCQP_SEED or 0x5EED)");
  gen->add_option("--margin", gen_args.margin, "Planted constraint margin")->check(CLI::PositiveNumber);
  gen->add_option("--out-dir", gen_args.out_dir, "Output directory")->required();

  BenchArgs bench_args;
  bench_args.seed = seed;
  auto* bench = app.add_subcommand("bench", "Average relative error per iteration against the oracle");
  bench->add_option("--dims", bench_args.dims, "Dimensions")->delimiter(',');
  bench->add_option("--constraints", bench_args.constraints, "Constraint counts")->delimiter(',');
  bench->add_option("--count", bench_args.count, "Instances per (dim, m)")
      ->check(CLI::NonNegativeNumber);
  bench->add_option("--seed", bench_args.seed, "Batch seed");
  bench->add_option("--out", bench_args.out, "CSV output file (default stdout)");

  RangeArgs range_args;
  range_args.seed = seed;
  auto* range = app.add_subcommand("range", "Sample the joint numerical range of the whitened constraints");
  range->add_option("input", range_args.input, "Problem JSON file")->required();
  range->add_option("--count", range_args.count, "Number of samples");
  range->add_option("--seed", range_args.seed, "Sampling seed");
  range->add_option("--out", range_args.out, "CSV output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*solve) return cmd_solve(solve_args);
  if (*gen) return cmd_generate(gen_args);
  if (*bench) return cmd_bench(bench_args);
  if (*range) return cmd_range(range_args);
  return 1;
}
