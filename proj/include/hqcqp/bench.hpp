// Convergence benchmark: relative error of the per-iteration incumbent
// against the sampling oracle, averaged over generated instances.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hqcqp/generator.hpp"
#include "hqcqp/problem.hpp"
#include "hqcqp/search.hpp"

namespace hqcqp {

struct BenchRecord {
  int instance = 0;
  /// eps_i = |p_oracle - p_i| / p_oracle for i = 0 .. trace length - 1.
  std::vector<double> rel_err;
  /// Relative error of the returned solution.
  double final_rel_err = 0.0;
  double p_oracle = 0.0;
  double p_solver = 0.0;
  double solve_seconds = 0.0;
  double oracle_seconds = 0.0;
  CaseTag tag;
  Diagnostics diagnostics;
};

/// Solves one instance and compares against the oracle. Returns nothing when
/// the oracle finds no feasible point or the solver fails.
std::optional<BenchRecord> bench_instance(const HqcqpProblem& prob, const SearchConfig& cfg,
                                          int instance);

struct BenchGroup {
  int dim = 0;
  int m = 0;
  std::vector<BenchRecord> records;
  int skipped = 0;
  double solve_seconds = 0.0;
  double oracle_seconds = 0.0;
};

/// Benchmarks the given problems, running instances on worker threads; record
/// order follows input order.
BenchGroup bench_problems(int dim, int m, const std::vector<HqcqpProblem>& problems,
                          const SearchConfig& cfg);

struct BenchRow {
  int dim = 0;
  int m = 0;
  int iteration = 0;
  double avg_rel_err = 0.0;
  int n_instances = 0;
  int skipped = 0;
};

/// One row per iteration up to the longest trace; shorter traces contribute
/// their final relative error.
std::vector<BenchRow> aggregate(const BenchGroup& group);

struct BenchConfig {
  std::vector<int> dims{9, 16, 25};
  std::vector<int> constraints{2, 3};
  int count = 100;
  std::uint64_t seed = 0x5EED;
  double margin = 0.5;
  SearchConfig search;
};

struct BenchReport {
  std::vector<BenchGroup> groups;
  /// Sorted by (dim, m, iteration).
  std::vector<BenchRow> rows;
};

BenchReport run_bench(const BenchConfig& cfg);

/// Header `dim,m,iteration,avg_rel_err,n_instances,skipped`.
void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);

/// Human-readable per-group timing lines.
void write_timing_summary(std::ostream& os, const BenchReport& report);

}  // namespace hqcqp
