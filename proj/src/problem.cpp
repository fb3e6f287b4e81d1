#include "hqcqp/problem.hpp"

#include <cmath>
#include <regex>

namespace hqcqp {

HqcqpProblem::HqcqpProblem(HermitianMatrix objective, std::vector<HermitianMatrix> constraints)
    : objective_(std::move(objective)), constraints_(std::move(constraints)) {
  const int n = objective_.dim();
  const int m = num_constraints();
  if (n < 2) throw DimensionError("problem dimension must be at least 2, got " + std::to_string(n));
  if (m < 1 || m > 3)
    throw DimensionError("expected 1 to 3 constraints, got " + std::to_string(m));
  if (m == 3 && n < 3)
    throw DimensionError("three constraints require dimension at least 3");
  for (int i = 0; i < m; ++i)
    if (constraints_[i].dim() != n)
      throw DimensionError("constraint " + std::to_string(i) + " has dimension " +
                           std::to_string(constraints_[i].dim()) + ", objective has " +
                           std::to_string(n));
  cholesky_lower(objective_);
}

ReducedProblem::ReducedProblem(std::vector<HermitianMatrix> constraints, CMatrix whitener)
    : constraints_(std::move(constraints)), whitener_(std::move(whitener)) {
  for (const auto& c : constraints_)
    if (c.dim() != whitener_.rows()) throw DimensionError("reduced constraint dimension mismatch");
}

std::string CaseTag::to_string() const {
  switch (kind) {
    case Kind::OneConstraint:
      return "one";
    case Kind::TwoCase1:
      return "two-case1";
    case Kind::TwoCase2:
      return "two-case2";
    case Kind::TwoCase3:
      return "two-case3";
    case Kind::ThreeSingle:
      return "three-single(" + std::to_string(i) + ")";
    case Kind::ThreePair:
      return "three-pair(" + std::to_string(i) + "," + std::to_string(j) + ")";
    case Kind::ThreeAll:
      return "three-all";
  }
  return "unknown";
}

CaseTag CaseTag::parse(const std::string& s) {
  if (s == "one") return {Kind::OneConstraint};
  if (s == "two-case1") return {Kind::TwoCase1};
  if (s == "two-case2") return {Kind::TwoCase2};
  if (s == "two-case3") return {Kind::TwoCase3};
  if (s == "three-all") return {Kind::ThreeAll};
  static const std::regex single(R"(three-single\((\d)\))");
  static const std::regex pair(R"(three-pair\((\d),(\d)\))");
  std::smatch m;
  if (std::regex_match(s, m, single)) return {Kind::ThreeSingle, std::stoi(m[1]), -1};
  if (std::regex_match(s, m, pair)) return {Kind::ThreePair, std::stoi(m[1]), std::stoi(m[2])};
  throw ParseError("unknown case tag '" + s + "'");
}

ReducedProblem reduce(const HqcqpProblem& prob) {
  CMatrix finv = inverse_sqrt_factor(prob.objective());
  std::vector<HermitianMatrix> cs;
  cs.reserve(prob.constraints().size());
  for (const auto& p : prob.constraints())
    cs.push_back(HermitianMatrix::from_trusted(finv * p.matrix() * finv.adjoint()));
  return ReducedProblem(std::move(cs), std::move(finv));
}

CVector recover(double p, const CVector& u, const ReducedProblem& red) {
  if (!(p > 0.0)) throw Error("recover: p must be positive");
  if (u.size() != red.dim()) throw DimensionError("recover: vector dimension mismatch");
  const CVector z = std::sqrt(p) * u;
  // x = F^{-H} z; F^{-1} is lower triangular so F^{-H} is upper.
  return red.whitener().adjoint().triangularView<Eigen::Upper>() * z;
}

double max_form(const std::vector<HermitianMatrix>& cs, const CVector& u) {
  double m = -INFINITY;
  for (const auto& c : cs) m = std::max(m, quadratic_form(c, u));
  return m;
}

}  // namespace hqcqp
