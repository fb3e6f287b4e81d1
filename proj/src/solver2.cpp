#include "hqcqp/solver2.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hqcqp {

namespace {

double eigenspace_tol(const HermitianMatrix& a) { return 1e-9 * (1.0 + a.frobenius_norm()); }

bool coincident(const HermitianMatrix& a, const HermitianMatrix& b) {
  return (a.matrix() - b.matrix()).norm() <= 1e-13 * (1.0 + a.frobenius_norm());
}

ReducedSolution eigenvector_solution(const std::vector<HermitianMatrix>& cs, const CVector& u,
                                     CaseTag tag, std::vector<int> binding) {
  ReducedSolution r;
  r.u = u;
  r.c_star = max_form(cs, u);
  r.tag = tag;
  r.binding = std::move(binding);
  r.trace = {{0, r.c_star}};
  return r;
}

// Solves q_k(y) = y^H B_k y = 0 for all k together with |y| = 1 by
// minimum-norm Gauss-Newton steps in the real coordinates (Re y, Im y).
CVector gauss_newton_balance(const std::vector<CMatrix>& bs, CVector y) {
  const auto k = y.size();
  const auto m = static_cast<Eigen::Index>(bs.size());
  Eigen::MatrixXd jac(m + 1, 2 * k);
  Eigen::VectorXd res(m + 1);
  for (int it = 0; it < 40; ++it) {
    for (Eigen::Index r = 0; r < m; ++r) {
      const CVector by = bs[r] * y;
      res(r) = y.dot(by).real();
      jac.row(r) << 2.0 * by.real().transpose(), 2.0 * by.imag().transpose();
    }
    res(m) = y.squaredNorm() - 1.0;
    jac.row(m) << 2.0 * y.real().transpose(), 2.0 * y.imag().transpose();
    if (res.head(m).cwiseAbs().maxCoeff() < 1e-15) break;
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-res);
    if (!step.allFinite()) break;
    y.real() += step.head(k);
    y.imag() += step.tail(k);
    y.normalize();
    if (step.norm() < 1e-15) break;
  }
  return y;
}

double balance_residual(const std::vector<CMatrix>& bs, const CVector& y) {
  double r = 0.0;
  for (const auto& b : bs) r = std::max(r, std::abs(y.dot(b * y).real()));
  return r;
}

}  // namespace

CaseClassification classify_case(const HermitianMatrix& c1, const HermitianMatrix& c2) {
  if (c1.dim() != c2.dim()) throw DimensionError("classify_case: dimension mismatch");
  CaseClassification cls;
  cls.x1 = lowest_in_min_eigenspace(c1, c2, eigenspace_tol(c1));
  cls.x2 = lowest_in_min_eigenspace(c2, c1, eigenspace_tol(c2));
  cls.lambda1 = quadratic_form(c1, cls.x1);
  cls.lambda2 = quadratic_form(c2, cls.x2);
  cls.c2_at_x1 = quadratic_form(c2, cls.x1);
  cls.c1_at_x2 = quadratic_form(c1, cls.x2);

  if (cls.lambda1 - cls.c2_at_x1 > kBindingTol * std::abs(cls.lambda1))
    cls.tag = TwoCase::Case1;
  else if (cls.lambda2 - cls.c1_at_x2 > kBindingTol * std::abs(cls.lambda2))
    cls.tag = TwoCase::Case2;
  else
    cls.tag = TwoCase::Case3;
  return cls;
}

EigenPair lambda_of_t(const HermitianMatrix& a1, const HermitianMatrix& a2, double t) {
  return min_eigenpair(HermitianMatrix::affine(a1, t, a2));
}

ReducedSolution solve_one(const HermitianMatrix& c1) {
  const EigenPair e = min_eigenpair(c1);
  return eigenvector_solution({c1}, e.vector, {CaseTag::Kind::OneConstraint}, {0});
}

Balanced balance_in_subspace(const CMatrix& basis, const std::vector<HermitianMatrix>& forms) {
  const auto k = basis.cols();
  if (k == 0) throw DimensionError("balance_in_subspace: empty basis");

  std::vector<CMatrix> bs;
  bs.reserve(forms.size());
  for (const auto& f : forms) {
    CMatrix b = basis.adjoint() * f.matrix() * basis;
    bs.push_back(0.5 * (b + b.adjoint()));
  }

  CVector y;
  if (k == 1 || bs.empty()) {
    y = CVector::Unit(k, 0);
  } else if (bs.size() == 1) {
    // The range of y^H B y is [beta_min, beta_max]; mix the two extreme
    // eigenvectors so the form vanishes.
    const EigenDecomposition d = eigen_decompose(HermitianMatrix::from_trusted(bs[0]));
    const double bmin = d.values(0);
    const double bmax = d.values(k - 1);
    if (bmin <= 0.0 && bmax >= 0.0 && bmax > bmin) {
      const double cos2 = bmax / (bmax - bmin);
      y = std::sqrt(cos2) * d.vectors.col(0) + std::sqrt(1.0 - cos2) * d.vectors.col(k - 1);
    } else {
      Eigen::Index best = 0;
      d.values.cwiseAbs().minCoeff(&best);
      y = d.vectors.col(best);
    }
  } else {
    // Several forms: multi-start Gauss-Newton on the sphere of C^k.
    std::vector<CVector> starts;
    for (Eigen::Index i = 0; i < k; ++i) starts.push_back(CVector::Unit(k, i));
    starts.push_back(CVector::Ones(k) / std::sqrt(static_cast<double>(k)));
    std::mt19937_64 rng(0xBA1A);
    std::normal_distribution<double> nd;
    for (int s = 0; s < 8; ++s) {
      CVector v(k);
      for (Eigen::Index i = 0; i < k; ++i) v(i) = Complex(nd(rng), nd(rng));
      starts.push_back(v.normalized());
    }
    double best = INFINITY;
    for (const CVector& s : starts) {
      const CVector cand = gauss_newton_balance(bs, s);
      const double r = balance_residual(bs, cand);
      if (r < best) {
        best = r;
        y = cand;
      }
      if (best < 1e-14) break;
    }
  }

  Balanced out;
  out.u = basis * y;
  out.u.normalize();
  normalize_phase(out.u);
  out.residual = 0.0;
  for (const auto& f : forms) out.residual = std::max(out.residual, std::abs(quadratic_form(f, out.u)));
  return out;
}

double cluster_tolerance(const HermitianMatrix& pencil, double bracket_width,
                         const std::vector<HermitianMatrix>& directions) {
  double dir = 0.0;
  for (const auto& d : directions) dir += d.frobenius_norm();
  return std::max(1e-9 * (1.0 + pencil.frobenius_norm()), 4.0 * bracket_width * dir);
}

PencilMax extract_primal(const HermitianMatrix& pencil, double bracket_width,
                         const std::vector<HermitianMatrix>& directions, double binding_scale) {
  const EigenDecomposition dec = eigen_decompose(pencil);
  const CMatrix basis = min_eigenspace(dec, cluster_tolerance(pencil, bracket_width, directions));
  const Balanced bal = balance_in_subspace(basis, directions);

  PencilMax pm;
  pm.lambda = dec.values(0);
  pm.u = bal.u;
  const auto k = basis.cols();
  pm.diagnostics.multiplicity = static_cast<int>(k);
  pm.diagnostics.eigen_gap = k < dec.values.size() ? dec.values(k) - dec.values(0) : 0.0;
  pm.diagnostics.balance_residual = bal.residual;
  pm.diagnostics.flagged = k > static_cast<Eigen::Index>(directions.size()) + 1 ||
                           bal.residual > kBindingTol * std::max(binding_scale, 1e-12);
  return pm;
}

std::vector<double> polish_multipliers(const HermitianMatrix& a1,
                                       const std::vector<HermitianMatrix>& directions,
                                       std::vector<double> t) {
  const auto d = static_cast<Eigen::Index>(directions.size());
  if (d == 0 || static_cast<Eigen::Index>(t.size()) != d)
    throw DimensionError("polish_multipliers: one multiplier per direction expected");
  auto pencil = [&](const std::vector<double>& s) {
    CMatrix m = a1.matrix();
    for (Eigen::Index a = 0; a < d; ++a) m += s[a] * directions[a].matrix();
    return HermitianMatrix::from_trusted(m);
  };

  EigenDecomposition dec = eigen_decompose(pencil(t));
  for (int it = 0; it < 30; ++it) {
    const HermitianMatrix p = pencil(t);
    const auto n = dec.values.size();
    // Near a crossing the bottom eigenvalue is not smooth; leave it to the
    // cluster extraction.
    if (n < 2 || dec.values(1) - dec.values(0) <= cluster_tolerance(p, 0.0, directions)) break;

    const CVector u0 = dec.vectors.col(0);
    std::vector<CVector> au;
    Eigen::VectorXd g(d);
    for (Eigen::Index a = 0; a < d; ++a) {
      au.push_back(directions[a].matrix() * u0);
      g(a) = u0.dot(au[a]).real();
    }
    if (g.cwiseAbs().maxCoeff() <= 1e-14 * (1.0 + p.frobenius_norm())) break;

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index j = 1; j < n; ++j) {
      const CVector uj = dec.vectors.col(j);
      const double inv = 1.0 / (dec.values(0) - dec.values(j));
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b)
          h(a, b) += 2.0 * inv * (uj.dot(au[a]) * std::conj(uj.dot(au[b]))).real();
    }
    const Eigen::VectorXd step = h.ldlt().solve(-g);
    if (!step.allFinite()) break;

    bool moved = false;
    for (double alpha = 1.0; alpha > 1e-3; alpha *= 0.5) {
      std::vector<double> trial = t;
      for (Eigen::Index a = 0; a < d; ++a) trial[a] += alpha * step(a);
      EigenDecomposition td = eigen_decompose(pencil(trial));
      if (td.values(0) >= dec.values(0)) {
        t = std::move(trial);
        dec = std::move(td);
        moved = true;
        break;
      }
    }
    if (!moved || step.norm() <= 1e-15 * (1.0 + std::abs(t[0]))) break;
  }
  return t;
}

PencilMax maximize_pencil(const HermitianMatrix& ci, const HermitianMatrix& cj,
                          const SearchConfig& cfg) {
  const HermitianMatrix a2 = ci - cj;
  const ScalarObjective f = [&](double t) {
    return min_eigenvalue(HermitianMatrix::affine(ci, t, a2));
  };
  const Interval iv = initial_interval(min_eigenvalue(ci), cfg, f);
  const LineSearchResult line = dichotomous_max(f, iv, cfg);
  const double t = polish_multipliers(ci, {a2}, {line.t_star})[0];

  PencilMax pm = extract_primal(HermitianMatrix::affine(ci, t, a2), line.bracket.width(), {a2},
                                std::abs(line.value));
  pm.t_star = {t};
  pm.trace = line.trace;
  pm.iterations = line.iterations;
  return pm;
}

ReducedSolution solve_two(const HermitianMatrix& c1, const HermitianMatrix& c2,
                          const SearchConfig& cfg) {
  if (c1.dim() != c2.dim()) throw DimensionError("solve_two: dimension mismatch");
  if (c1.dim() < 2) throw DimensionError("solve_two: dimension must be at least 2");
  const std::vector<HermitianMatrix> cs{c1, c2};

  if (coincident(c1, c2)) {
    ReducedSolution r = solve_one(c1);
    r.c_star = max_form(cs, r.u);
    r.tag = {CaseTag::Kind::TwoCase3};
    r.binding = {0, 1};
    r.trace = {{0, r.c_star}};
    return r;
  }

  const CaseClassification cls = classify_case(c1, c2);
  switch (cls.tag) {
    case TwoCase::Case1:
      return eigenvector_solution(cs, cls.x1, {CaseTag::Kind::TwoCase1}, {0});
    case TwoCase::Case2:
      return eigenvector_solution(cs, cls.x2, {CaseTag::Kind::TwoCase2}, {1});
    case TwoCase::Case3:
      break;
  }

  const PencilMax pm = maximize_pencil(c1, c2, cfg);
  ReducedSolution r;
  r.u = pm.u;
  r.c_star = max_form(cs, pm.u);
  r.tag = {CaseTag::Kind::TwoCase3};
  r.binding = {0, 1};
  r.multipliers = pm.t_star;
  r.trace = pm.trace;
  r.iterations = pm.iterations;
  r.dual_value = pm.lambda;
  r.diagnostics = pm.diagnostics;
  return r;
}

}  // namespace hqcqp
