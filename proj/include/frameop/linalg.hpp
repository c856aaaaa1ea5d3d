#pragma once

// Dense complex linear algebra shared by every other header: a single SVD
// kernel backs rank, pseudo-inverse, range projectors and kernel bases so all
// of them agree on what counts as a zero singular value.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "frameop/error.hpp"

namespace frameop {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Thresholds for every finite-precision decision in the library.
///
/// `rank_rel` is the relative singular-value cutoff: a singular value counts
/// as nonzero when it exceeds `rank_rel * sigma_max`. `eq_rel` bounds the
/// relative Frobenius distance ||A - B||_F / max(1, ||B||_F) under which two
/// matrices are considered equal.
struct Tolerance {
  double rank_rel = 1e-10;
  double eq_rel = 1e-9;

  void validate() const {
    detail::require(rank_rel > 0.0 && eq_rel > 0.0 && std::isfinite(rank_rel) &&
                        std::isfinite(eq_rel),
                    ErrorCode::invalid_argument, "tolerances must be positive and finite");
  }
};

inline bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

/// Full singular value decomposition m = U diag(s) V*, singular values sorted
/// in decreasing order.
struct Svd {
  Matrix u;
  RealVector s;
  Matrix v;

  explicit Svd(const Matrix& m) {
    detail::require(m.rows() > 0 && m.cols() > 0, ErrorCode::invalid_argument,
                    "SVD of an empty matrix");
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    u = svd.matrixU();
    s = svd.singularValues();
    v = svd.matrixV();
  }

  double sigma_max() const { return s.size() == 0 ? 0.0 : s(0); }

  Eigen::Index rank(double rank_rel) const {
    const double cutoff = rank_rel * sigma_max();
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > cutoff) ++r;
    return r;
  }
};

inline RealVector singular_values(const Matrix& m) {
  if (m.size() == 0) return RealVector();
  return Eigen::JacobiSVD<Matrix>(m).singularValues();
}

/// Largest singular value (operator 2-norm); 0 for empty matrices.
inline double op_norm(const Matrix& m) {
  const RealVector s = singular_values(m);
  return s.size() == 0 ? 0.0 : s(0);
}

/// Number of singular values above `tol.rank_rel * sigma_max`; 0 for the zero
/// matrix.
inline Eigen::Index rank_of(const Matrix& m, const Tolerance& tol = {}) {
  if (m.size() == 0) return 0;
  const RealVector s = singular_values(m);
  const double cutoff = tol.rank_rel * s(0);
  return static_cast<Eigen::Index>((s.array() > cutoff).count());
}

/// Moore-Penrose pseudo-inverse with truncation of the singular values at
/// `tol.rank_rel * sigma_max`. The zero matrix maps to the zero matrix.
inline Matrix pinv(const Matrix& m, const Tolerance& tol = {}) {
  const Svd svd(m);
  const Eigen::Index r = svd.rank(tol.rank_rel);
  Matrix out = Matrix::Zero(m.cols(), m.rows());
  for (Eigen::Index i = 0; i < r; ++i)
    out.noalias() += (svd.v.col(i) / svd.s(i)) * svd.u.col(i).adjoint();
  return out;
}

/// Orthogonal projector onto the column space of m.
inline Matrix projector_onto_range(const Matrix& m, const Tolerance& tol = {}) {
  const Svd svd(m);
  const Eigen::Index r = svd.rank(tol.rank_rel);
  const auto basis = svd.u.leftCols(r);
  return basis * basis.adjoint();
}

/// Orthonormal basis of the null space of m, one vector per column. The
/// result has m.cols() - rank(m) columns (possibly zero).
inline Matrix kernel_basis(const Matrix& m, const Tolerance& tol = {}) {
  const Svd svd(m);
  const Eigen::Index r = svd.rank(tol.rank_rel);
  return svd.v.rightCols(m.cols() - r);
}

/// ||a - b||_F / max(1, ||b||_F).
inline double rel_diff(const Matrix& a, const Matrix& b) {
  detail::require_dims(a.rows() == b.rows() && a.cols() == b.cols(),
                       "rel_diff: shapes differ");
  return (a - b).norm() / std::max(1.0, b.norm());
}

inline bool approx_equal(const Matrix& a, const Matrix& b, double eq_rel) {
  return a.rows() == b.rows() && a.cols() == b.cols() && rel_diff(a, b) <= eq_rel;
}

inline Matrix hconcat(const Matrix& a, const Matrix& b) {
  detail::require_dims(a.rows() == b.rows(), "hconcat: row counts differ");
  Matrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

/// range(x) is contained in range(y), tested as rank([y | x]) == rank(y).
inline bool range_contains(const Matrix& y, const Matrix& x, const Tolerance& tol = {}) {
  detail::require_dims(y.rows() == x.rows(), "range_contains: row counts differ");
  if (x.cols() == 0) return true;
  if (y.cols() == 0) return rank_of(x, tol) == 0;
  return rank_of(hconcat(y, x), tol) == rank_of(y, tol);
}

/// Inverse of a Hermitian positive definite matrix via its eigendecomposition.
inline Matrix hermitian_inverse(const Matrix& s) {
  detail::require_dims(s.rows() == s.cols(), "hermitian_inverse: matrix is not square");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
  const RealVector& lambda = eig.eigenvalues();
  detail::require(lambda.size() > 0 && lambda(0) > 0.0, ErrorCode::invalid_argument,
                  "hermitian_inverse: matrix is not positive definite");
  return eig.eigenvectors() * lambda.cwiseInverse().asDiagonal() *
         eig.eigenvectors().adjoint();
}

/// Extreme eigenvalues (min, max) of a Hermitian matrix.
inline std::pair<double, double> hermitian_extreme_eigenvalues(const Matrix& s) {
  detail::require_dims(s.rows() == s.cols() && s.rows() > 0,
                       "hermitian_extreme_eigenvalues: matrix is not square");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s, Eigen::EigenvaluesOnly);
  const RealVector& lambda = eig.eigenvalues();
  return {lambda(0), lambda(lambda.size() - 1)};
}

}  // namespace frameop
