// One- and two-constraint solvers in whitened coordinates, plus the pencil
// machinery (max over t of lambda_min(A1 + t A2)) reused by the
// three-constraint solver.
#pragma once

#include <vector>

#include "hqcqp/hermitian.hpp"
#include "hqcqp/problem.hpp"
#include "hqcqp/search.hpp"

namespace hqcqp {

enum class TwoCase { Case1, Case2, Case3 };

/// The left-most point (lambda_1, c2(x1)) and bottom-most point
/// (c1(x2), lambda_2) of the joint numerical range of (C1, C2), with the case
/// they imply.
struct CaseClassification {
  TwoCase tag = TwoCase::Case3;
  CVector x1;
  CVector x2;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double c2_at_x1 = 0.0;
  double c1_at_x2 = 0.0;
};

/// Case1 when c1(x1) exceeds c2(x1) by more than kBindingTol relative to
/// |lambda1|, Case2 symmetrically, Case3 otherwise (ties included). x_i is
/// taken lowest in the other form when lambda_min(C_i) is repeated.
CaseClassification classify_case(const HermitianMatrix& c1, const HermitianMatrix& c2);

/// Minimum eigenpair of a1 + t a2.
EigenPair lambda_of_t(const HermitianMatrix& a1, const HermitianMatrix& a2, double t);

/// c* = lambda_min(C1) with its eigenvector. c* >= 0 signals infeasibility.
ReducedSolution solve_one(const HermitianMatrix& c1);

ReducedSolution solve_two(const HermitianMatrix& c1, const HermitianMatrix& c2,
                          const SearchConfig& cfg);

/// Result of maximizing lambda_min over a pencil and extracting a primal
/// vector that equalizes the binding constraints.
struct PencilMax {
  std::vector<double> t_star;
  double lambda = 0.0;
  CVector u;
  std::vector<TracePoint> trace;
  int iterations = 0;
  Diagnostics diagnostics;
};

/// max_t lambda_min(Ci + t (Ci - Cj)) by dichotomous search over the interval
/// seeded from lambda_min(Ci); u satisfies c_i(u) ~= c_j(u).
PencilMax maximize_pencil(const HermitianMatrix& ci, const HermitianMatrix& cj,
                          const SearchConfig& cfg);

struct Balanced {
  CVector u;
  /// max_k |u^H forms[k] u|.
  double residual = 0.0;
};

/// Unit vector u in the column span of `basis` (orthonormal columns) driving
/// every u^H f u to zero. Exact for a single form; least squares on the
/// sphere for several.
Balanced balance_in_subspace(const CMatrix& basis, const std::vector<HermitianMatrix>& forms);

/// Eigenvalues of the final pencil closer than this to the minimum are treated
/// as one cluster when extracting u.
double cluster_tolerance(const HermitianMatrix& pencil, double bracket_width,
                         const std::vector<HermitianMatrix>& directions);

/// Newton steps on t for lambda_min(a1 + sum_k t_k d_k) while the bottom
/// eigenvalue stays simple; never lowers lambda_min. Returns t unchanged at a
/// crossing.
std::vector<double> polish_multipliers(const HermitianMatrix& a1,
                                       const std::vector<HermitianMatrix>& directions,
                                       std::vector<double> t);

/// Picks u from the minimum eigen-cluster of `pencil`, balances it against
/// `directions`, and fills the diagnostics.
PencilMax extract_primal(const HermitianMatrix& pencil, double bracket_width,
                         const std::vector<HermitianMatrix>& directions, double binding_scale);

}  // namespace hqcqp
