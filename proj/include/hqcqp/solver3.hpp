// Three-constraint solver. The optimum of min_u max(c1, c2, c3) binds one,
// two, or all three constraints; each of the seven binding patterns yields a
// candidate point and the smallest candidate value is c*.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hqcqp/hermitian.hpp"
#include "hqcqp/problem.hpp"
#include "hqcqp/search.hpp"

namespace hqcqp {

struct Candidate3 {
  enum class Kind { Single, Pair, All };

  Kind kind = Kind::Single;
  int i = -1;
  int j = -1;
  /// False when the underlying search failed (for example an unbounded
  /// pencil); value is then +inf.
  bool available = true;
  std::string failure;
  CVector u;
  /// max_k c_k(u) over all three constraints.
  double value = 0.0;
  std::vector<double> multipliers;
  std::vector<TracePoint> trace;
  int iterations = 0;
  std::optional<double> dual_value;
  Diagnostics diagnostics;

  CaseTag tag() const;
};

/// u = minimum eigenvector of C_i.
Candidate3 candidate_single(const std::vector<HermitianMatrix>& cs, int i);

/// Two-constraint pencil search on (C_i, C_j); falls back to
/// candidate_single(i) when C_i == C_j.
Candidate3 candidate_pair(const std::vector<HermitianMatrix>& cs, int i, int j,
                          const SearchConfig& cfg);

/// Alternating maximization of lambda_min(A1 + t1 A2 + t2 A3) with
/// A1 = C1, A2 = C1 - C2, A3 = C1 - C3.
Candidate3 candidate_all(const std::vector<HermitianMatrix>& cs, const SearchConfig& cfg);

/// All seven candidates: singles 0..2, pairs (0,1) (0,2) (1,2), then all.
std::vector<Candidate3> seven_candidates(const std::vector<HermitianMatrix>& cs,
                                         const SearchConfig& cfg);

/// Minimum over the seven candidates; ties go to the candidate with fewer
/// binding constraints.
ReducedSolution solve_three(const std::vector<HermitianMatrix>& cs, const SearchConfig& cfg);

}  // namespace hqcqp
