#include "hqcqp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ostream>
#include <thread>
#include <tuple>

#include "hqcqp/oracle.hpp"

namespace hqcqp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// An incumbent c >= 0 carries no finite power estimate; count it as 100% error.
double rel_err(double p_ref, double c) {
  if (!(c < 0.0)) return 1.0;
  return std::abs(p_ref - (-1.0 / c)) / p_ref;
}

}  // namespace

std::optional<BenchRecord> bench_instance(const HqcqpProblem& prob, const SearchConfig& cfg,
                                          int instance) {
  BenchRecord rec;
  rec.instance = instance;
  const ReducedProblem red = reduce(prob);

  auto t0 = Clock::now();
  const OracleEstimate est = oracle_cstar(red.constraints(), cfg);
  rec.oracle_seconds = seconds_since(t0);
  if (!(est.c_hat < 0.0)) return std::nullopt;
  rec.p_oracle = -1.0 / est.c_hat;

  t0 = Clock::now();
  Solution sol;
  try {
    sol = solve(prob, cfg);
  } catch (const Error&) {
    return std::nullopt;
  }
  rec.solve_seconds = seconds_since(t0);
  rec.p_solver = sol.p_star;
  rec.tag = sol.tag;
  rec.diagnostics = sol.diagnostics;
  rec.final_rel_err = std::abs(rec.p_oracle - sol.p_star) / rec.p_oracle;
  for (const TracePoint& tp : sol.trace) rec.rel_err.push_back(rel_err(rec.p_oracle, tp.value));
  return rec;
}

BenchGroup bench_problems(int dim, int m, const std::vector<HqcqpProblem>& problems,
                          const SearchConfig& cfg) {
  const std::size_t n = problems.size();
  std::vector<std::optional<BenchRecord>> slots(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < n; k = next++)
      slots[k] = bench_instance(problems[k], cfg, static_cast<int>(k));
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<unsigned>(std::min<std::size_t>(hw, n));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  BenchGroup g;
  g.dim = dim;
  g.m = m;
  for (auto& s : slots) {
    if (!s) {
      ++g.skipped;
      continue;
    }
    g.solve_seconds += s->solve_seconds;
    g.oracle_seconds += s->oracle_seconds;
    g.records.push_back(std::move(*s));
  }
  return g;
}

std::vector<BenchRow> aggregate(const BenchGroup& group) {
  std::size_t len = 0;
  for (const auto& r : group.records) len = std::max(len, r.rel_err.size());
  std::vector<BenchRow> rows;
  for (std::size_t i = 0; i < len; ++i) {
    double sum = 0.0;
    for (const auto& r : group.records)
      sum += i < r.rel_err.size() ? r.rel_err[i] : r.final_rel_err;
    const int count = static_cast<int>(group.records.size());
    rows.push_back({group.dim, group.m, static_cast<int>(i), sum / count, count, group.skipped});
  }
  return rows;
}

BenchReport run_bench(const BenchConfig& cfg) {
  cfg.search.validate();
  BenchReport report;
  for (int dim : cfg.dims) {
    for (int m : cfg.constraints) {
      std::vector<HqcqpProblem> problems;
      problems.reserve(static_cast<std::size_t>(std::max(cfg.count, 0)));
      for (int k = 0; k < cfg.count; ++k) {
        GeneratorSpec spec{dim, m, cfg.margin, derive_seed(cfg.seed, dim, m, k)};
        problems.push_back(random_feasible_problem(spec));
      }
      report.groups.push_back(bench_problems(dim, m, problems, cfg.search));
      auto rows = aggregate(report.groups.back());
      report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    }
  }
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.dim, a.m, a.iteration) < std::tie(b.dim, b.m, b.iteration);
  });
  return report;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "dim,m,iteration,avg_rel_err,n_instances,skipped\n";
  const auto old = os.precision(10);
  for (const auto& r : rows)
    os << r.dim << ',' << r.m << ',' << r.iteration << ',' << r.avg_rel_err << ','
       << r.n_instances << ',' << r.skipped << '\n';
  os.precision(old);
}

void write_timing_summary(std::ostream& os, const BenchReport& report) {
  for (const auto& g : report.groups) {
    const auto n = std::max<std::size_t>(g.records.size(), 1);
    os << "dim=" << g.dim << " m=" << g.m << " instances=" << g.records.size()
       << " skipped=" << g.skipped << " solver_ms_avg=" << 1e3 * g.solve_seconds / n
       << " oracle_ms_avg=" << 1e3 * g.oracle_seconds / n << '\n';
  }
}

}  // namespace hqcqp
