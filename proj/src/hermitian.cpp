#include "hqcqp/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace hqcqp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double off_diagonal_norm(const CMatrix& m) {
  double s = 0.0;
  const auto n = m.rows();
  for (Eigen::Index q = 1; q < n; ++q)
    for (Eigen::Index p = 0; p < q; ++p) s += std::norm(m(p, q));
  return std::sqrt(2.0 * s);
}

// Runs cyclic Jacobi sweeps in place on m; accumulates rotations into v when
// non-null. On return the diagonal of m holds the eigenvalues.
void jacobi_sweeps(CMatrix& m, CMatrix* v, int max_sweeps) {
  const auto n = m.rows();
  const double scale = m.norm();
  if (scale == 0.0) return;
  const double target = static_cast<double>(std::max<Eigen::Index>(n, 4)) * kEps * scale;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(m) <= target) return;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double g = std::abs(m(p, q));
        if (g <= kEps * kEps * scale) {
          m(p, q) = m(q, p) = 0.0;
          continue;
        }
        // Phase that makes the (p,q) entry real, then a real Jacobi rotation.
        const Complex d = std::conj(m(p, q) / g);
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex sd = s * d;
        const Complex cd = c * d;

        // m <- m G
        for (Eigen::Index r = 0; r < n; ++r) {
          const Complex mp = m(r, p);
          const Complex mq = m(r, q);
          m(r, p) = c * mp - sd * mq;
          m(r, q) = s * mp + cd * mq;
        }
        // m <- G^H m. Off the (p,q) block the result is Hermitian, so rows p
        // and q mirror the updated columns.
        const Complex sdc = std::conj(sd);
        const Complex cdc = std::conj(cd);
        const Complex bpp = c * m(p, p) - sdc * m(q, p);
        const Complex bqq = s * m(p, q) + cdc * m(q, q);
        for (Eigen::Index r = 0; r < n; ++r) {
          m(p, r) = std::conj(m(r, p));
          m(q, r) = std::conj(m(r, q));
        }
        m(p, q) = m(q, p) = 0.0;
        m(p, p) = bpp.real();
        m(q, q) = bqq.real();

        if (v != nullptr) {
          for (Eigen::Index r = 0; r < n; ++r) {
            const Complex vp = (*v)(r, p);
            const Complex vq = (*v)(r, q);
            (*v)(r, p) = c * vp - sd * vq;
            (*v)(r, q) = s * vp + cd * vq;
          }
        }
      }
    }
  }
  const double residual = off_diagonal_norm(m);
  if (residual > target)
    throw ConvergenceError("Jacobi eigensolver did not converge in " +
                               std::to_string(max_sweeps) + " sweeps",
                           residual);
}

}  // namespace

bool validate_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols())
    throw DimensionError("matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  if (m.size() == 0) return true;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (!m.allFinite()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (std::abs(m(i, i).imag()) > tol * scale) return false;
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol * scale) return false;
  }
  return true;
}

HermitianMatrix::HermitianMatrix(const CMatrix& m, double tol) {
  if (!validate_hermitian(m, tol)) throw Error("matrix is not Hermitian");
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix::HermitianMatrix(const CMatrix& m, Trusted) : m_(0.5 * (m + m.adjoint())) {}

HermitianMatrix HermitianMatrix::from_trusted(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix must be square");
  return HermitianMatrix(m, Trusted{});
}

HermitianMatrix HermitianMatrix::identity(int n) {
  return HermitianMatrix(CMatrix::Identity(n, n), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(const RVector& d) {
  return HermitianMatrix(CMatrix(d.cast<Complex>().asDiagonal()), Trusted{});
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  if (dim() != o.dim()) throw DimensionError("dimension mismatch in sum");
  return HermitianMatrix(m_ + o.m_, Trusted{});
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  if (dim() != o.dim()) throw DimensionError("dimension mismatch in difference");
  return HermitianMatrix(m_ - o.m_, Trusted{});
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  return HermitianMatrix(m_ * s, Trusted{});
}

HermitianMatrix HermitianMatrix::affine(const HermitianMatrix& a, double t,
                                        const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("dimension mismatch in pencil");
  return HermitianMatrix(a.m_ + t * b.m_, Trusted{});
}

void normalize_phase(CVector& v) {
  if (v.size() == 0) return;
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  const double mag = std::abs(v(k));
  if (mag == 0.0) return;
  v *= std::conj(v(k)) / mag;
  v(k) = v(k).real();
}

EigenDecomposition eigen_decompose(const HermitianMatrix& a, int max_sweeps) {
  const int n = a.dim();
  CMatrix m = a.matrix();
  CMatrix v = CMatrix::Identity(n, n);
  jacobi_sweeps(m, &v, max_sweeps);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return m(x, x).real() < m(y, y).real(); });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.values(k) = m(order[k], order[k]).real();
    CVector col = v.col(order[k]);
    col.normalize();
    normalize_phase(col);
    out.vectors.col(k) = col;
  }
  return out;
}

RVector eigenvalues(const HermitianMatrix& a, int max_sweeps) {
  CMatrix m = a.matrix();
  jacobi_sweeps(m, nullptr, max_sweeps);
  RVector d = m.diagonal().real();
  std::sort(d.begin(), d.end());
  return d;
}

double min_eigenvalue(const HermitianMatrix& a) { return eigenvalues(a).minCoeff(); }

double max_eigenvalue(const HermitianMatrix& a) { return eigenvalues(a).maxCoeff(); }

EigenPair min_eigenpair(const HermitianMatrix& a) {
  if (a.dim() == 0) throw DimensionError("empty matrix has no eigenpair");
  const EigenDecomposition d = eigen_decompose(a);
  return {d.values(0), d.vectors.col(0)};
}

CMatrix min_eigenspace(const EigenDecomposition& d, double tol) {
  Eigen::Index k = 1;
  while (k < d.values.size() && d.values(k) - d.values(0) <= tol) ++k;
  return d.vectors.leftCols(k);
}

CVector lowest_in_min_eigenspace(const HermitianMatrix& a, const HermitianMatrix& b,
                                 double tol) {
  if (a.dim() != b.dim()) throw DimensionError("dimension mismatch");
  const EigenDecomposition d = eigen_decompose(a);
  const CMatrix basis = min_eigenspace(d, tol);
  if (basis.cols() == 1) return basis.col(0);
  const HermitianMatrix restricted =
      HermitianMatrix::from_trusted(basis.adjoint() * b.matrix() * basis);
  CVector u = basis * min_eigenpair(restricted).vector;
  u.normalize();
  normalize_phase(u);
  return u;
}

CMatrix cholesky_lower(const HermitianMatrix& t) {
  const int n = t.dim();
  const CMatrix& a = t.matrix();
  CMatrix l = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (int k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) throw NotPositiveDefiniteError(j, d);
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      Complex s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

CMatrix inverse_sqrt_factor(const HermitianMatrix& t) {
  const CMatrix l = cholesky_lower(t);
  const int n = t.dim();
  return l.triangularView<Eigen::Lower>().solve(CMatrix::Identity(n, n));
}

double quadratic_form(const HermitianMatrix& a, const CVector& u) {
  if (a.dim() != u.size())
    throw DimensionError("quadratic form: matrix is " + std::to_string(a.dim()) +
                         "-dimensional, vector has " + std::to_string(u.size()) + " entries");
  const Complex z = u.dot(a.matrix() * u);
  const double bound = 1e-10 * (1.0 + a.frobenius_norm() * u.squaredNorm());
  if (std::abs(z.imag()) > bound)
    throw Error("quadratic form has imaginary part " + std::to_string(z.imag()));
  return z.real();
}

}  // namespace hqcqp
