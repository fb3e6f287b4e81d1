// Shared fixtures and independent reference computations for the tests.
#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "hqcqp/hermitian.hpp"
#include "hqcqp/problem.hpp"

namespace testing {

using hqcqp::CMatrix;
using hqcqp::Complex;
using hqcqp::CVector;
using hqcqp::HermitianMatrix;

inline HermitianMatrix diag(std::initializer_list<double> d) {
  hqcqp::RVector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return HermitianMatrix::diagonal(v);
}

inline CMatrix gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  CMatrix g(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) g(r, c) = Complex(nd(rng), nd(rng));
  return g;
}

inline HermitianMatrix random_herm(int n, std::mt19937_64& rng) {
  const CMatrix g = gaussian(n, n, rng);
  return HermitianMatrix(0.5 * (g + g.adjoint()));
}

inline HermitianMatrix random_pd(int n, std::mt19937_64& rng) {
  const CMatrix g = gaussian(n, n, rng);
  return HermitianMatrix(g * g.adjoint() + CMatrix::Identity(n, n));
}

inline CVector random_unit(int n, std::mt19937_64& rng) { return gaussian(n, 1, rng).col(0).normalized(); }

// Spectrum from Eigen's own solver, used as an independent reference.
inline Eigen::VectorXd reference_eigenvalues(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline std::vector<HermitianMatrix> sym_pair() { return {diag({-2, -1}), diag({-1, -2})}; }

inline std::vector<HermitianMatrix> sym_triple() {
  return {diag({-3, -1, -1}), diag({-1, -3, -1}), diag({-1, -1, -3})};
}

inline std::vector<HermitianMatrix> dominated_triple() {
  return {diag({-1, 9, 9}), diag({-3, 9, 9}), diag({-2, 9, 9})};
}

inline hqcqp::HqcqpProblem whitened(std::vector<HermitianMatrix> cs) {
  const int n = cs.at(0).dim();
  return hqcqp::HqcqpProblem(HermitianMatrix::identity(n), std::move(cs));
}

// Andrew's monotone chain; returns the hull counter-clockwise.
using Point = std::array<double, 2>;

inline double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

inline std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

inline bool inside_hull(const std::vector<Point>& hull, const Point& p, double eps = 0.0) {
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point& a = hull[i];
    const Point& b = hull[(i + 1) % hull.size()];
    const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
    if (cross(a, b, p) < -eps * len) return false;
  }
  return true;
}

}  // namespace testing
