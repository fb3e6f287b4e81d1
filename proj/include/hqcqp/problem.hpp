// Problem data model: the original homogeneous QCQP
//
//   min x^H T x   s.t.  x^H P_i x + 1 <= 0,  i = 1..m,  m <= 3,
//
// its whitened form with C_i = F^{-1} P_i F^{-H} (T = F F^H), and the solution
// record shared by all solvers.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hqcqp/errors.hpp"
#include "hqcqp/hermitian.hpp"
#include "hqcqp/search.hpp"

namespace hqcqp {

inline constexpr double kFeasibilityTol = 1e-6;
inline constexpr double kBindingTol = 1e-4;

class HqcqpProblem {
 public:
  /// Validates T positive definite, 1 <= |P| <= 3, matching dimensions,
  /// N >= 2, and N >= 3 when three constraints are present.
  HqcqpProblem(HermitianMatrix objective, std::vector<HermitianMatrix> constraints);

  int dim() const noexcept { return objective_.dim(); }
  int num_constraints() const noexcept { return static_cast<int>(constraints_.size()); }
  const HermitianMatrix& objective() const noexcept { return objective_; }
  const std::vector<HermitianMatrix>& constraints() const noexcept { return constraints_; }

 private:
  HermitianMatrix objective_;
  std::vector<HermitianMatrix> constraints_;
};

class ReducedProblem {
 public:
  ReducedProblem(std::vector<HermitianMatrix> constraints, CMatrix whitener);

  int dim() const noexcept { return static_cast<int>(whitener_.rows()); }
  int num_constraints() const noexcept { return static_cast<int>(constraints_.size()); }
  const std::vector<HermitianMatrix>& constraints() const noexcept { return constraints_; }
  /// F^{-1}, lower triangular.
  const CMatrix& whitener() const noexcept { return whitener_; }

 private:
  std::vector<HermitianMatrix> constraints_;
  CMatrix whitener_;
};

struct CaseTag {
  enum class Kind { OneConstraint, TwoCase1, TwoCase2, TwoCase3, ThreeSingle, ThreePair, ThreeAll };

  Kind kind = Kind::OneConstraint;
  /// Constraint indices (0-based) for ThreeSingle / ThreePair.
  int i = -1;
  int j = -1;

  /// "one", "two-case1", "three-pair(0,2)", ...
  std::string to_string() const;
  static CaseTag parse(const std::string& s);

  friend bool operator==(const CaseTag&, const CaseTag&) = default;
};

/// Eigenstructure at the returned point of a search-based case.
struct Diagnostics {
  /// Number of eigenvalues of the final pencil treated as tied with the
  /// minimum (1 for a simple eigenvalue; 0 when no search ran).
  int multiplicity = 0;
  /// Distance from lambda_min to the first eigenvalue outside the cluster.
  double eigen_gap = 0.0;
  /// Largest |c_1(u) - c_k(u)| over the constraints the case makes binding.
  double balance_residual = 0.0;
  /// Multiplicity above the number of binding constraints, or an eigenspace
  /// that could not equalize the binding constraints to kBindingTol.
  bool flagged = false;
};

/// Result in whitened coordinates, before recovery of x.
struct ReducedSolution {
  /// max_i c_i(u); negative iff feasible.
  double c_star = 0.0;
  CVector u;
  CaseTag tag;
  std::vector<int> binding;
  std::vector<double> multipliers;
  std::vector<TracePoint> trace;
  int iterations = 0;
  /// lambda_min of the pencil at the multipliers (a lower bound on the
  /// equality-constrained value); absent for eigenvector-only cases.
  std::optional<double> dual_value;
  Diagnostics diagnostics;

  bool feasible() const noexcept { return c_star < 0.0; }
};

struct Solution {
  double p_star = 0.0;
  double c_star = 0.0;
  CVector u;
  CVector x;
  CaseTag tag;
  std::vector<int> binding;
  std::vector<double> multipliers;
  std::vector<TracePoint> trace;
  int iterations = 0;
  std::optional<double> dual_value;
  Diagnostics diagnostics;
};

/// C_i = F^{-1} P_i F^{-H}.
ReducedProblem reduce(const HqcqpProblem& prob);

/// x = F^{-H} sqrt(p) u, so that x^H T x = p.
CVector recover(double p, const CVector& u, const ReducedProblem& red);

/// max_i c_i(u) over the reduced constraints.
double max_form(const std::vector<HermitianMatrix>& cs, const CVector& u);

struct Feasibility {
  bool feasible = false;
  /// Unit u with max_i c_i(u) < 0 when feasible.
  CVector witness;
  double c_star = 0.0;
  /// c* vanishes to working precision (feasible only in the limit p -> inf).
  bool limit_case = false;
};

/// Runs the eigen solver, and the sampling oracle if the solver cannot
/// certify feasibility.
Feasibility check_feasible(const ReducedProblem& red, const SearchConfig& cfg);

/// Dispatches on the number of constraints in the whitened problem.
ReducedSolution solve_reduced(const ReducedProblem& red, const SearchConfig& cfg);

/// Full pipeline: reduce, solve, recover. Throws InfeasibleError if c* >= 0.
Solution solve(const HqcqpProblem& prob, const SearchConfig& cfg = {});

}  // namespace hqcqp
