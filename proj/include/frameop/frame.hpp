#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "frameop/error.hpp"
#include "frameop/linalg.hpp"

namespace frameop {

/// An ordered spanning family of N vectors in C^d.
///
/// Vectors are stored as the columns of a d x N matrix V, so the synthesis
/// matrix is D = V, the analysis matrix is C = V* and the frame operator is
/// S = V V*. The inner product is linear in its first argument:
/// <x, y> = y* x, which makes (C x)_k = <x, psi_k>.
class Frame {
 public:
  /// Validates that every vector has length `dim`, all entries are finite and
  /// the family spans C^dim. Throws NotAFrame when the synthesis matrix has
  /// rank below dim.
  static Frame make(std::size_t dim, const std::vector<Vector>& vectors,
                    const Tolerance& tol = {}) {
    detail::require(dim > 0, ErrorCode::not_a_frame, "dimension must be positive");
    detail::require(!vectors.empty(), ErrorCode::not_a_frame, "empty family");
    Matrix v(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t k = 0; k < vectors.size(); ++k) {
      detail::require_dims(vectors[k].size() == static_cast<Eigen::Index>(dim),
                           "frame vector " + std::to_string(k) + " has length " +
                               std::to_string(vectors[k].size()) + ", expected " +
                               std::to_string(dim));
      v.col(static_cast<Eigen::Index>(k)) = vectors[k];
    }
    return from_columns(v, tol);
  }

  /// Same as make() with the vectors given as the columns of a d x N matrix.
  static Frame from_columns(const Matrix& columns, const Tolerance& tol = {}) {
    detail::require(columns.rows() > 0 && columns.cols() > 0, ErrorCode::not_a_frame,
                    "empty family");
    detail::require(all_finite(columns), ErrorCode::not_a_frame, "non-finite entries");
    const auto r = rank_of(columns, tol);
    detail::require(r == columns.rows(), ErrorCode::not_a_frame,
                    "family of " + std::to_string(columns.cols()) + " vectors spans only " +
                        std::to_string(r) + " of " + std::to_string(columns.rows()) +
                        " dimensions");
    return Frame(columns);
  }

  Eigen::Index dim() const { return vectors_.rows(); }
  Eigen::Index size() const { return vectors_.cols(); }
  bool is_redundant() const { return size() > dim(); }

  Vector vector(Eigen::Index k) const { return vectors_.col(k); }

  /// D: C^N -> C^d, c |-> sum_k c_k psi_k.
  const Matrix& synthesis_matrix() const { return vectors_; }
  /// C: C^d -> C^N, x |-> (<x, psi_k>)_k.
  Matrix analysis_matrix() const { return vectors_.adjoint(); }

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.vectors_.rows() == b.vectors_.rows() && a.vectors_.cols() == b.vectors_.cols() &&
           a.vectors_ == b.vectors_;
  }

 private:
  explicit Frame(Matrix columns) : vectors_(std::move(columns)) {}

  friend Frame canonical_dual(const Frame& f);

  Matrix vectors_;
};

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// S = D C, Hermitian positive definite.
inline Matrix frame_operator(const Frame& f) {
  const Matrix& v = f.synthesis_matrix();
  return v * v.adjoint();
}

/// Optimal frame bounds: the extreme eigenvalues of S.
inline FrameBounds frame_bounds(const Frame& f) {
  const auto [lo, hi] = hermitian_extreme_eigenvalues(frame_operator(f));
  return {lo, hi};
}

inline Vector analysis(const Frame& f, const Vector& x) {
  detail::require_dims(x.size() == f.dim(), "analysis: vector length " +
                                                 std::to_string(x.size()) + " != frame dim " +
                                                 std::to_string(f.dim()));
  return f.synthesis_matrix().adjoint() * x;
}

inline Vector synthesis(const Frame& f, const Vector& c) {
  detail::require_dims(c.size() == f.size(), "synthesis: coefficient length " +
                                                  std::to_string(c.size()) +
                                                  " != frame size " + std::to_string(f.size()));
  return f.synthesis_matrix() * c;
}

/// Canonical dual frame (S^-1 psi_k)_k. S^-1 comes from the Hermitian
/// eigendecomposition of S.
inline Frame canonical_dual(const Frame& f) {
  return Frame(hermitian_inverse(frame_operator(f)) * f.synthesis_matrix());
}

/// Cross frame operator S_{a,b} = D_a C_b, x |-> sum_k <x, b_k> a_k. Both
/// frames must share the ambient space and the index set.
inline Matrix cross_frame_operator(const Frame& a, const Frame& b) {
  detail::require_dims(a.dim() == b.dim() && a.size() == b.size(),
                       "cross_frame_operator: frames differ in dimension or size");
  return a.synthesis_matrix() * b.analysis_matrix();
}

/// Gram matrix G_{left,right} with entries <right_m, left_j>, i.e. C_left D_right.
struct GramMatrix {
  Matrix matrix;
  Frame left;
  Frame right;
};

inline GramMatrix gram(const Frame& left, const Frame& right) {
  detail::require_dims(left.dim() == right.dim(), "gram: frames live in spaces of dimension " +
                                                      std::to_string(left.dim()) + " and " +
                                                      std::to_string(right.dim()));
  return {left.analysis_matrix() * right.synthesis_matrix(), left, right};
}

/// Orthogonal projector onto range(C_f), computed as G_{f, dual(f)}.
inline Matrix coefficient_projector(const Frame& f) {
  return gram(f, canonical_dual(f)).matrix;
}

/// Verdicts of the equivalent Riesz-basis characterizations. The flags are
/// computed independently and must agree.
struct RieszReport {
  bool is_riesz = false;
  bool cond_synthesis_injective = false;
  bool cond_analysis_surjective = false;
  bool cond_biorthogonal_dual = false;
  /// Largest |<psi_k, dual_j> - delta_kj|.
  double max_residual = 0.0;

  bool consistent() const {
    return is_riesz == cond_synthesis_injective && is_riesz == cond_analysis_surjective &&
           is_riesz == cond_biorthogonal_dual;
  }
};

/// Threshold on the entrywise biorthogonality deviation.
inline constexpr double kBiorthogonalityThreshold = 1e-9;

inline RieszReport is_riesz_basis(const Frame& f, const Tolerance& tol = {}) {
  RieszReport report;
  const Matrix& d = f.synthesis_matrix();
  report.cond_synthesis_injective = kernel_basis(d, tol).cols() == 0;
  report.cond_analysis_surjective = rank_of(f.analysis_matrix(), tol) == f.size();

  // Entry (j, k) of G_{dual, f} is <psi_k, dual_j>.
  const Matrix cross = gram(canonical_dual(f), f).matrix;
  const Matrix deviation = cross - Matrix::Identity(f.size(), f.size());
  report.max_residual = deviation.cwiseAbs().maxCoeff();
  report.cond_biorthogonal_dual = report.max_residual <= kBiorthogonalityThreshold;

  report.is_riesz = report.cond_synthesis_injective;
  return report;
}

/// lambda_min(S) / lambda_max(S).
inline double conditioning_ratio(const Frame& f) {
  const FrameBounds b = frame_bounds(f);
  return b.lower / b.upper;
}

}  // namespace frameop
