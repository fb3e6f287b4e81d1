// Dense complex Hermitian linear algebra used throughout the solver: validated
// matrix type, Cholesky-based whitening, cyclic Jacobi eigensolver and
// quadratic forms.
#pragma once

#include <Eigen/Dense>
#include <complex>

#include "hqcqp/errors.hpp"

namespace hqcqp {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;

/// True iff m equals its conjugate transpose within tol, relative to the
/// largest absolute entry. Throws DimensionError for non-square input.
bool validate_hermitian(const CMatrix& m, double tol = kHermitianTol);

/// Square complex matrix with the conjugate-symmetry invariant. Construction
/// validates and then symmetrizes exactly, so downstream code can rely on
/// bit-exact Hermitian storage.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& m, double tol = kHermitianTol);

  /// Builds from a matrix already known to be Hermitian up to rounding (for
  /// example a congruence transform); only symmetrizes.
  static HermitianMatrix from_trusted(const CMatrix& m);
  static HermitianMatrix identity(int n);
  static HermitianMatrix diagonal(const RVector& d);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const noexcept { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }
  double frobenius_norm() const { return m_.norm(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;

  /// a + t*b without re-validation.
  static HermitianMatrix affine(const HermitianMatrix& a, double t, const HermitianMatrix& b);

 private:
  struct Trusted {};
  HermitianMatrix(const CMatrix& m, Trusted);

  CMatrix m_;
};

struct EigenPair {
  double value = 0.0;
  CVector vector;
};

/// Full spectrum in ascending order with matching unit eigenvector columns.
struct EigenDecomposition {
  RVector values;
  CMatrix vectors;
};

inline constexpr int kDefaultJacobiSweeps = 60;

/// Cyclic complex Jacobi. Throws ConvergenceError when the off-diagonal mass
/// is still above tolerance after max_sweeps sweeps.
EigenDecomposition eigen_decompose(const HermitianMatrix& a, int max_sweeps = kDefaultJacobiSweeps);

/// Eigenvalues only (skips accumulation of the rotations).
RVector eigenvalues(const HermitianMatrix& a, int max_sweeps = kDefaultJacobiSweeps);

double min_eigenvalue(const HermitianMatrix& a);
double max_eigenvalue(const HermitianMatrix& a);

/// Algebraically smallest eigenvalue and a unit eigenvector whose largest
/// magnitude entry is real and positive.
EigenPair min_eigenpair(const HermitianMatrix& a);

/// Rotates v so that its largest-magnitude entry is real positive.
void normalize_phase(CVector& v);

/// Columns of the decomposition whose eigenvalue lies within tol of the
/// smallest one.
CMatrix min_eigenspace(const EigenDecomposition& d, double tol);

/// Unit vector u in the minimum eigenspace of a (eigenvalues within tol of
/// the smallest) that minimizes u^H b u. For a simple eigenvalue this is the
/// eigenvector itself.
CVector lowest_in_min_eigenspace(const HermitianMatrix& a, const HermitianMatrix& b,
                                 double tol);

/// Lower Cholesky factor F with t = F F^H. Throws NotPositiveDefiniteError.
CMatrix cholesky_lower(const HermitianMatrix& t);

/// F^{-1} for the lower Cholesky factor F of t, so that F^{-1} t F^{-H} = I.
CMatrix inverse_sqrt_factor(const HermitianMatrix& t);

/// Re(u^H a u). Throws DimensionError on mismatch and Error when the discarded
/// imaginary part is larger than rounding can explain.
double quadratic_form(const HermitianMatrix& a, const CVector& u);

}  // namespace hqcqp
