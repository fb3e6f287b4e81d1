// Acceptance run: one PASS/FAIL line per criterion, with the measured numbers.
// Usage: acceptance [criterion ...]   (default: all of 1-9)

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hqcqp/bench.hpp"
#include "hqcqp/generator.hpp"
#include "hqcqp/oracle.hpp"
#include "hqcqp/solver2.hpp"
#include "hqcqp/solver3.hpp"
#include "support.hpp"

using namespace hqcqp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

constexpr std::uint64_t kSeed = 0x5EED;

std::vector<HermitianMatrix> whitened_constraints(int n, int m, std::uint64_t seed) {
  return reduce(random_feasible_problem({n, m, 0.5, seed})).constraints();
}

// 1. Closed-form optima.
Verdict analytic() {
  const auto t0 = Clock::now();
  const double p2 = solve(testing::whitened(testing::sym_pair())).p_star;
  const double p3 = solve(testing::whitened(testing::sym_triple())).p_star;
  const double c1 = solve(testing::whitened(testing::dominated_triple())).c_star;
  const double secs = seconds_since(t0);
  const bool ok = std::abs(p2 - 2.0 / 3.0) <= 1e-4 && std::abs(p3 - 0.6) <= 1e-4 &&
                  std::abs(c1 + 1.0) <= 1e-6 && secs < 0.1;
  return {ok, fmt("p2=%.9f p3=%.9f c_single=%.12f runtime=%.4fs (limit 0.1s)", p2, p3, c1, secs)};
}

// 2. Oracle agreement on 200 generated instances per m, N cycling over 3..10.
Verdict oracle_equivalence() {
  const auto t0 = Clock::now();
  const SearchConfig cfg;
  bool ok = true;
  std::string detail;
  for (int m = 2; m <= 3; ++m) {
    int within = 0, flagged = 0, unexplained = 0, skipped = 0;
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const int n = 3 + k % 8;
      const auto rec = bench_instance(random_feasible_problem({n, m, 0.5, derive_seed(kSeed, n, m, k)}),
                                      cfg, k);
      if (!rec) {
        ++skipped;
        continue;
      }
      const double gap = std::abs(rec->p_solver - rec->p_oracle) / rec->p_oracle;
      worst = std::max(worst, gap);
      if (gap <= 2e-2)
        ++within;
      else if (rec->diagnostics.flagged)
        ++flagged;
      else
        ++unexplained;
    }
    ok = ok && within >= 196 && unexplained == 0 && skipped == 0;
    detail += fmt("m=%d within=%d/200 flagged=%d unflagged_misses=%d skipped=%d max_gap=%.2e; ", m,
                  within, flagged, unexplained, skipped, worst);
  }
  const double secs = seconds_since(t0);
  ok = ok && secs <= 60.0;
  return {ok, detail + fmt("runtime=%.1fs (limit 60s)", secs)};
}

// 3. Average relative error at iteration 10 over 100 instances per (m, N = M^2).
Verdict convergence_shape() {
  BenchConfig cfg;
  cfg.seed = kSeed;
  const BenchReport rep = run_bench(cfg);
  bool ok = rep.groups.size() == 6;
  std::string detail;
  for (const BenchGroup& g : rep.groups) {
    double sum = 0.0;
    for (const BenchRecord& r : g.records) sum += r.rel_err.size() > 10 ? r.rel_err[10] : r.final_rel_err;
    const double avg = g.records.empty() ? 1.0 : sum / static_cast<double>(g.records.size());
    ok = ok && avg <= 0.1 && g.records.size() + static_cast<std::size_t>(g.skipped) == 100;
    detail += fmt("%sN=%d m=%d eps10=%.2e n=%zu", detail.empty() ? "" : "; ", g.dim, g.m, avg,
                  g.records.size());
  }
  return {ok, detail};
}

// 4. Primal feasibility and at least one binding constraint.
Verdict feasibility_binding() {
  double worst_slack = -INFINITY, worst_binding = 0.0;
  int solved = 0;
  auto check = [&](const HqcqpProblem& prob) {
    const Solution s = solve(prob);
    double tightest = INFINITY;
    for (const auto& p : prob.constraints()) {
      const double v = quadratic_form(p, s.x) + 1.0;
      worst_slack = std::max(worst_slack, v);
      tightest = std::min(tightest, std::abs(v));
    }
    worst_binding = std::max(worst_binding, tightest);
    ++solved;
  };
  check(testing::whitened(testing::sym_pair()));
  check(testing::whitened(testing::sym_triple()));
  check(testing::whitened(testing::dominated_triple()));
  for (int m = 1; m <= 3; ++m)
    for (int k = 0; k < 150; ++k) {
      const int n = 3 + k % 23;
      check(random_feasible_problem({n, m, 0.5, derive_seed(kSeed + 4, n, m, k)}));
    }
  const bool ok = worst_slack <= 1e-6 && worst_binding <= 1e-4;
  return {ok, fmt("solutions=%d max(x^H P x + 1)=%.2e max_tightest=%.2e", solved, worst_slack,
                  worst_binding)};
}

// 5. Strong and weak duality on Case3 pairs.
Verdict duality() {
  const SearchConfig cfg;
  std::mt19937_64 rng(kSeed + 5);
  std::uniform_real_distribution<double> ut(-3.0, 2.0);
  int pairs = 0;
  double worst_gap = 0.0, worst_weak = -INFINITY;
  for (int k = 0; pairs < 50; ++k) {
    const int n = 3 + k % 8;
    const auto cs = whitened_constraints(n, 2, derive_seed(kSeed + 5, n, 2, k));
    if (classify_case(cs[0], cs[1]).tag != TwoCase::Case3) continue;
    ++pairs;
    const ReducedSolution r = solve_two(cs[0], cs[1], cfg);
    const double oracle = oracle_cstar(cs, cfg).c_hat;
    worst_gap = std::max(worst_gap, std::abs(r.dual_value.value_or(INFINITY) - oracle) / std::abs(oracle));
    const HermitianMatrix a2 = cs[0] - cs[1];
    for (int s = 0; s < 20; ++s)
      worst_weak = std::max(worst_weak, lambda_of_t(cs[0], a2, ut(rng)).value - oracle);
  }
  const bool ok = worst_gap <= 2e-2 && worst_weak <= 1e-6;
  return {ok, fmt("pairs=%d max |dual - oracle|/|oracle|=%.2e max(lambda(t) - oracle)=%.2e", pairs,
                  worst_gap, worst_weak)};
}

// 6. Midpoint concavity of lambda(t) and lambda(t1, t2).
Verdict concavity() {
  std::mt19937_64 rng(kSeed + 6);
  std::uniform_real_distribution<double> ut(-5.0, 5.0);
  double worst1 = INFINITY, worst2 = INFINITY;
  for (int k = 0; k < 100; ++k) {
    const int n = 3 + k % 8;
    const auto cs = whitened_constraints(n, 3, derive_seed(kSeed + 6, n, 3, k));
    const HermitianMatrix a2 = cs[0] - cs[1];
    const HermitianMatrix a3 = cs[0] - cs[2];
    const double ta = ut(rng), tb = ut(rng);
    const double mid1 = lambda_of_t(cs[0], a2, 0.5 * (ta + tb)).value;
    worst1 = std::min(worst1, mid1 - 0.5 * (lambda_of_t(cs[0], a2, ta).value +
                                            lambda_of_t(cs[0], a2, tb).value));
    auto lam = [&](double t1, double t2) {
      return min_eigenvalue(HermitianMatrix(cs[0].matrix() + t1 * a2.matrix() + t2 * a3.matrix()));
    };
    const double a1 = ut(rng), a2v = ut(rng), b1 = ut(rng), b2 = ut(rng);
    worst2 = std::min(worst2, lam(0.5 * (a1 + b1), 0.5 * (a2v + b2)) -
                                  0.5 * (lam(a1, a2v) + lam(b1, b2)));
  }
  const bool ok = worst1 >= -1e-9 && worst2 >= -1e-9;
  return {ok, fmt("min slack 1-D=%.2e 2-D=%.2e over 100 instances each", worst1, worst2)};
}

// 7. Joint numerical range geometry.
Verdict range_geometry() {
  std::mt19937_64 rng(kSeed + 7);
  double worst_bound = -INFINITY;
  bool exact = true, extremal = true;
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 9;
    const std::vector<HermitianMatrix> cs{testing::random_herm(n, rng), testing::random_herm(n, rng)};
    const RangeSample s = sample_numerical_range(cs, 5000, derive_seed(kSeed + 7, k));
    Eigen::VectorXd ev[2] = {testing::reference_eigenvalues(cs[0]), testing::reference_eigenvalues(cs[1])};
    const CVector x1 = min_eigenpair(cs[0]).vector;
    const CVector x2 = min_eigenpair(cs[1]).vector;
    double min_c1 = INFINITY, min_c2 = INFINITY;
    for (const RangePoint& p : s.points) {
      for (int i = 0; i < 2; ++i)
        worst_bound = std::max({worst_bound, ev[i](0) - p.c[i], p.c[i] - ev[i](n - 1)});
      if (p.tag == RangeTag::Sample) {
        min_c1 = std::min(min_c1, p.c[0]);
        min_c2 = std::min(min_c2, p.c[1]);
      } else if (p.tag == RangeTag::Leftmost) {
        exact = exact && p.c[0] == min_eigenvalue(cs[0]) &&
                std::abs(p.c[1] - quadratic_form(cs[1], x1)) <= 1e-12 * (1.0 + std::abs(p.c[1])) &&
                std::abs(p.c[0] - ev[0](0)) <= 1e-10;
        extremal = extremal && p.c[0] <= min_c1 + 1e-12;
      } else {
        exact = exact && p.c[1] == min_eigenvalue(cs[1]) &&
                std::abs(p.c[0] - quadratic_form(cs[0], x2)) <= 1e-12 * (1.0 + std::abs(p.c[0])) &&
                std::abs(p.c[1] - ev[1](0)) <= 1e-10;
        extremal = extremal && p.c[1] <= min_c2 + 1e-12;
      }
    }
  }

  const std::vector<HermitianMatrix> cs{testing::random_herm(4, rng), testing::random_herm(4, rng)};
  std::vector<testing::Point> cloud;
  for (const RangePoint& p : sample_numerical_range(cs, 10000, kSeed + 71).points)
    if (p.tag == RangeTag::Sample) cloud.push_back({p.c[0], p.c[1]});
  const auto hull = testing::convex_hull(cloud);
  const RangeSample fresh = sample_numerical_range(cs, 2000, kSeed + 72);
  int inside = 0;
  for (std::size_t k = 0; k < 1000; ++k) {
    const auto& a = fresh.points[2 * k].c;
    const auto& b = fresh.points[2 * k + 1].c;
    inside += testing::inside_hull(hull, {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])});
  }
  const bool ok = worst_bound <= 1e-10 && inside >= 990 && exact && extremal;
  return {ok, fmt("max Rayleigh violation=%.2e midpoints inside hull=%d/1000 distinguished exact=%s "
                  "extremal=%s",
                  worst_bound, inside, exact ? "yes" : "no", extremal ? "yes" : "no")};
}

// 8. Dichotomous termination bound and monotone alternating incumbent.
Verdict search_contract() {
  const SearchConfig cfg;
  int searches = 0, over_budget = 0, expanded = 0;
  double widest = 0.0;
  auto audit = [&](const ScalarObjective& f, Interval iv) {
    const LineSearchResult r = dichotomous_max(f, iv, cfg);
    // Iterations bisect the (possibly expanded) bracket.
    const double width = (iv.hi - iv.lo) * std::pow(cfg.scale_factor, r.expansions);
    const int bound = static_cast<int>(std::ceil(std::log2(width / cfg.interval_threshold))) + 5;
    ++searches;
    over_budget += r.iterations > bound;
    expanded += r.expansions > 0;
    widest = std::max(widest, r.bracket.width());
  };
  for (int k = 0; k < 100; ++k) {
    const int n = 3 + k % 8;
    const auto cs = whitened_constraints(n, 2, derive_seed(kSeed + 8, n, 2, k));
    const HermitianMatrix a2 = cs[0] - cs[1];
    const ScalarObjective f = [&](double t) { return lambda_of_t(cs[0], a2, t).value; };
    audit(f, initial_interval(cs[0], cfg, f));
  }
  std::mt19937_64 rng(kSeed + 8);
  std::uniform_real_distribution<double> uc(-50.0, 50.0);
  for (int k = 0; k < 100; ++k) {
    const double c = uc(rng);
    audit([c](double t) { return -std::abs(t - c); }, {-1.0, 0.0});
  }

  int traces = 0, non_monotone = 0;
  for (int k = 0; k < 50; ++k) {
    const int n = 3 + k % 8;
    const Candidate3 a = candidate_all(whitened_constraints(n, 3, derive_seed(kSeed + 81, n, 3, k)), cfg);
    if (!a.available) continue;
    ++traces;
    for (std::size_t s = 1; s < a.trace.size(); ++s)
      non_monotone += a.trace[s].value < a.trace[s - 1].value - 1e-12;
  }
  const bool ok = over_budget == 0 && widest <= cfg.interval_threshold && non_monotone == 0 && traces == 50;
  return {ok, fmt("line searches=%d (expanded %d) over iteration bound=%d max final width=%.2e; "
                  "alternating traces=%d decreases=%d",
                  searches, expanded, over_budget, widest, traces, non_monotone)};
}

// 9. Eigen residuals and whitening.
Verdict linear_algebra() {
  std::mt19937_64 rng(kSeed + 9);
  double worst_res = 0.0, worst_white = 0.0, worst_spec = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const int n = 1 + k % 16;
    const HermitianMatrix a = testing::random_herm(n, rng);
    const EigenDecomposition d = eigen_decompose(a);
    const double scale = 1.0 + a.frobenius_norm();
    for (Eigen::Index j = 0; j < n; ++j)
      worst_res = std::max(worst_res, (a.matrix() * d.vectors.col(j) - d.values(j) * d.vectors.col(j)).norm() / scale);
    worst_spec = std::max(worst_spec, (d.values - testing::reference_eigenvalues(a)).cwiseAbs().maxCoeff() / scale);

    const HermitianMatrix t = testing::random_pd(n, rng);
    const CMatrix f = inverse_sqrt_factor(t);
    worst_white = std::max(worst_white, (f * t.matrix() * f.adjoint() - CMatrix::Identity(n, n)).norm());
  }
  const bool ok = worst_res <= 1e-9 && worst_white <= 1e-10;
  return {ok, fmt("max residual/(1+|A|_F)=%.2e max |F T F^H - I|_F=%.2e spectrum vs reference=%.2e",
                  worst_res, worst_white, worst_spec)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"analytic optima", analytic},
      {"oracle equivalence", oracle_equivalence},
      {"convergence at iteration 10", convergence_shape},
      {"feasibility and binding", feasibility_binding},
      {"duality on Case3 pairs", duality},
      {"concavity", concavity},
      {"numerical-range geometry", range_geometry},
      {"search contract", search_contract},
      {"linear-algebra core", linear_algebra},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!wanted.empty() && !wanted.count(id)) continue;
    Verdict v;
    const auto t0 = Clock::now();
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s %d %s: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", id, criteria[k].first,
                v.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
