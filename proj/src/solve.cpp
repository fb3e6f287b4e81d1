#include <cmath>

#include "hqcqp/oracle.hpp"
#include "hqcqp/problem.hpp"
#include "hqcqp/solver2.hpp"
#include "hqcqp/solver3.hpp"

namespace hqcqp {

namespace {

double constraint_scale(const std::vector<HermitianMatrix>& cs) {
  double s = 0.0;
  for (const auto& c : cs) s = std::max(s, c.frobenius_norm());
  return s;
}

bool vanishing(double c_star, const std::vector<HermitianMatrix>& cs) {
  return std::abs(c_star) <= 1e-12 * (1.0 + constraint_scale(cs));
}

}  // namespace

ReducedSolution solve_reduced(const ReducedProblem& red, const SearchConfig& cfg) {
  cfg.validate();
  const auto& cs = red.constraints();
  ReducedSolution r;
  switch (cs.size()) {
    case 1:
      return solve_one(cs[0]);
    case 2:
      r = solve_two(cs[0], cs[1], cfg);
      break;
    case 3:
      r = solve_three(cs, cfg);
      break;
    default:
      throw DimensionError("expected 1 to 3 constraints, got " + std::to_string(cs.size()));
  }
  // The eigenspace could not equalize the binding forms; polish u directly on
  // the sphere. The flag stays set so callers can see it happened.
  if (r.diagnostics.flagged) {
    const OracleEstimate polished = refine_on_sphere(cs, r.u);
    if (polished.c_hat < r.c_star) {
      r.u = polished.u_hat;
      r.c_star = polished.c_hat;
    }
  }
  return r;
}

Feasibility check_feasible(const ReducedProblem& red, const SearchConfig& cfg) {
  Feasibility out;
  out.c_star = INFINITY;
  try {
    const ReducedSolution r = solve_reduced(red, cfg);
    out.c_star = r.c_star;
    if (r.feasible()) {
      out.feasible = true;
      out.witness = r.u;
      return out;
    }
  } catch (const SearchError&) {
  } catch (const ConvergenceError&) {
  }
  const OracleEstimate est = oracle_cstar(red.constraints(), cfg);
  if (est.c_hat < 0.0) {
    out.feasible = true;
    out.witness = est.u_hat;
    out.c_star = est.c_hat;
    return out;
  }
  out.c_star = std::min(out.c_star, est.c_hat);
  out.limit_case = vanishing(out.c_star, red.constraints());
  return out;
}

Solution solve(const HqcqpProblem& prob, const SearchConfig& cfg) {
  const ReducedProblem red = reduce(prob);
  ReducedSolution r = solve_reduced(red, cfg);
  if (!r.feasible()) throw InfeasibleError(r.c_star, vanishing(r.c_star, red.constraints()));

  Solution s;
  s.c_star = r.c_star;
  s.p_star = -1.0 / r.c_star;
  s.u = std::move(r.u);
  s.x = recover(s.p_star, s.u, red);
  s.tag = r.tag;
  for (int i = 0; i < prob.num_constraints(); ++i) {
    const double slack = quadratic_form(prob.constraints()[i], s.x) + 1.0;
    if (std::abs(slack) <= kBindingTol) s.binding.push_back(i);
  }
  s.multipliers = std::move(r.multipliers);
  s.trace = std::move(r.trace);
  s.iterations = r.iterations;
  s.dual_value = r.dual_value;
  s.diagnostics = r.diagnostics;
  return s;
}

}  // namespace hqcqp
