#include "hqcqp/solver3.hpp"

#include <cmath>

#include "hqcqp/solver2.hpp"

namespace hqcqp {

namespace {

void check_triple(const std::vector<HermitianMatrix>& cs) {
  if (cs.size() != 3) throw DimensionError("expected exactly three constraints");
  const int n = cs[0].dim();
  if (cs[1].dim() != n || cs[2].dim() != n) throw DimensionError("constraint dimension mismatch");
  if (n < 3) throw DimensionError("three constraints require dimension at least 3");
}

bool negligible(const HermitianMatrix& a, const HermitianMatrix& scale) {
  return a.frobenius_norm() <= 1e-13 * (1.0 + scale.frobenius_norm());
}

}  // namespace

CaseTag Candidate3::tag() const {
  switch (kind) {
    case Kind::Single:
      return {CaseTag::Kind::ThreeSingle, i, -1};
    case Kind::Pair:
      return {CaseTag::Kind::ThreePair, i, j};
    case Kind::All:
      break;
  }
  return {CaseTag::Kind::ThreeAll};
}

Candidate3 candidate_single(const std::vector<HermitianMatrix>& cs, int i) {
  check_triple(cs);
  Candidate3 c;
  c.kind = Candidate3::Kind::Single;
  c.i = i;
  c.u = min_eigenpair(cs.at(i)).vector;
  c.value = max_form(cs, c.u);
  c.trace = {{0, c.value}};
  return c;
}

Candidate3 candidate_pair(const std::vector<HermitianMatrix>& cs, int i, int j,
                          const SearchConfig& cfg) {
  check_triple(cs);
  if (i == j) throw Error("candidate_pair: indices must differ");
  Candidate3 c;
  if (negligible(cs.at(i) - cs.at(j), cs[i])) {
    c = candidate_single(cs, i);
  } else {
    try {
      const PencilMax pm = maximize_pencil(cs[i], cs[j], cfg);
      c.u = pm.u;
      c.value = max_form(cs, pm.u);
      c.multipliers = pm.t_star;
      c.trace = pm.trace;
      c.iterations = pm.iterations;
      c.dual_value = pm.lambda;
      c.diagnostics = pm.diagnostics;
    } catch (const SearchError& e) {
      c.available = false;
      c.failure = e.what();
      c.value = INFINITY;
      c.trace = e.trace();
    }
  }
  c.kind = Candidate3::Kind::Pair;
  c.i = i;
  c.j = j;
  return c;
}

Candidate3 candidate_all(const std::vector<HermitianMatrix>& cs, const SearchConfig& cfg) {
  check_triple(cs);
  const HermitianMatrix& a1 = cs[0];
  const HermitianMatrix a2 = cs[0] - cs[1];
  const HermitianMatrix a3 = cs[0] - cs[2];

  Candidate3 c;
  if (negligible(a2, a1) && negligible(a3, a1)) {
    c = candidate_single(cs, 0);
    c.kind = Candidate3::Kind::All;
    c.i = -1;
    return c;
  }
  c.kind = Candidate3::Kind::All;

  auto pencil = [&](double t1, double t2) {
    return HermitianMatrix::from_trusted(a1.matrix() + t1 * a2.matrix() + t2 * a3.matrix());
  };
  const PlaneObjective f = [&](double t1, double t2) { return min_eigenvalue(pencil(t1, t2)); };
  const ScalarObjective first_axis = [&](double t) { return f(t, 0.0); };

  try {
    const Interval iv = initial_interval(min_eigenvalue(a1), cfg, first_axis);
    const PlaneSearchResult plane = alternating_max(f, iv, cfg);
    const std::vector<double> t = polish_multipliers(a1, {a2, a3}, {plane.t_star[0], plane.t_star[1]});
    const PencilMax pm = extract_primal(pencil(t[0], t[1]), cfg.interval_threshold, {a2, a3},
                                        std::abs(plane.value));
    c.u = pm.u;
    c.value = max_form(cs, pm.u);
    c.multipliers = t;
    c.trace = plane.trace;
    c.iterations = plane.iterations;
    c.dual_value = pm.lambda;
    c.diagnostics = pm.diagnostics;
  } catch (const SearchError& e) {
    c.available = false;
    c.failure = e.what();
    c.value = INFINITY;
    c.trace = e.trace();
  }
  return c;
}

std::vector<Candidate3> seven_candidates(const std::vector<HermitianMatrix>& cs,
                                         const SearchConfig& cfg) {
  check_triple(cs);
  std::vector<Candidate3> out;
  out.reserve(7);
  for (int i = 0; i < 3; ++i) out.push_back(candidate_single(cs, i));
  out.push_back(candidate_pair(cs, 0, 1, cfg));
  out.push_back(candidate_pair(cs, 0, 2, cfg));
  out.push_back(candidate_pair(cs, 1, 2, cfg));
  out.push_back(candidate_all(cs, cfg));
  return out;
}

ReducedSolution solve_three(const std::vector<HermitianMatrix>& cs, const SearchConfig& cfg) {
  const std::vector<Candidate3> cands = seven_candidates(cs, cfg);

  // Candidates are ordered by number of binding constraints, so only a
  // strictly better value displaces the incumbent.
  const Candidate3* best = &cands.front();
  for (const Candidate3& c : cands) {
    if (!c.available) continue;
    if (c.value < best->value - 1e-9 * std::max(1.0, std::abs(best->value))) best = &c;
  }

  ReducedSolution r;
  r.u = best->u;
  r.c_star = best->value;
  r.tag = best->tag();
  switch (best->kind) {
    case Candidate3::Kind::Single:
      r.binding = {best->i};
      break;
    case Candidate3::Kind::Pair:
      r.binding = {best->i, best->j};
      break;
    case Candidate3::Kind::All:
      r.binding = {0, 1, 2};
      break;
  }
  r.multipliers = best->multipliers;
  r.trace = best->trace;
  r.iterations = best->iterations;
  r.dual_value = best->dual_value;
  r.diagnostics = best->diagnostics;
  return r;
}

}  // namespace hqcqp
