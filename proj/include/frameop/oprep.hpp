#pragma once

// Matrix representation of operators through pairs of frames, and the way
// back. Conventions throughout, for an operator O: H1 -> H2 with a frame Psi
// of the domain H1 ("col frame") and a frame Phi of the codomain H2 ("row
// frame"):
//
//   Mat^(Phi,Psi)(O) = C_Phi O D_Psi     entries <O psi_n, phi_m>
//   Op^(Phi,Psi)(M)  = D_Phi M C_Psi
//
// Coefficient matrices are N_Phi x N_Psi; ambient operators are d2 x d1 in
// canonical coordinates.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "frameop/error.hpp"
#include "frameop/frame.hpp"
#include "frameop/generators.hpp"
#include "frameop/linalg.hpp"

namespace frameop {

/// A linear map C^domain_dim -> C^codomain_dim in canonical coordinates.
class AmbientOperator {
 public:
  explicit AmbientOperator(Matrix m) : matrix_(std::move(m)) {
    detail::require(matrix_.rows() > 0 && matrix_.cols() > 0, ErrorCode::invalid_argument,
                    "operator dimensions must be positive");
    detail::require(all_finite(matrix_), ErrorCode::invalid_argument,
                    "operator has non-finite entries");
  }

  static AmbientOperator identity(Eigen::Index d) {
    return AmbientOperator(Matrix::Identity(d, d));
  }

  const Matrix& matrix() const { return matrix_; }
  Eigen::Index domain_dim() const { return matrix_.cols(); }
  Eigen::Index codomain_dim() const { return matrix_.rows(); }

 private:
  Matrix matrix_;
};

/// A matrix acting on coefficient space: rows indexed by the row frame,
/// columns by the col frame.
class CoefficientMatrix {
 public:
  explicit CoefficientMatrix(Matrix m) : matrix_(std::move(m)) {
    detail::require(matrix_.rows() > 0 && matrix_.cols() > 0, ErrorCode::invalid_argument,
                    "coefficient matrix dimensions must be positive");
    detail::require(all_finite(matrix_), ErrorCode::invalid_argument,
                    "coefficient matrix has non-finite entries");
  }

  const Matrix& matrix() const { return matrix_; }
  Eigen::Index rows() const { return matrix_.rows(); }
  Eigen::Index cols() const { return matrix_.cols(); }

 private:
  Matrix matrix_;
};

namespace detail {

inline std::string shape(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

inline void require_operator_frames(const AmbientOperator& o, const Frame& row, const Frame& col,
                                    const char* op) {
  require_dims(col.dim() == o.domain_dim() && row.dim() == o.codomain_dim(),
               std::string(op) + ": operator is " + shape(o.codomain_dim(), o.domain_dim()) +
                   " but frames live in C^" + std::to_string(row.dim()) + " (row) and C^" +
                   std::to_string(col.dim()) + " (col)");
}

inline void require_matrix_frames(const CoefficientMatrix& m, const Frame& row, const Frame& col,
                                  const char* op) {
  require_dims(m.rows() == row.size() && m.cols() == col.size(),
               std::string(op) + ": matrix is " + shape(m.rows(), m.cols()) +
                   " but frames have " + std::to_string(row.size()) + " (row) and " +
                   std::to_string(col.size()) + " (col) vectors");
}

/// The coefficient-space matrix Pi_row M Pi_col whose pseudo-inverse serves
/// as M^dagger.
inline Matrix restricted(const Matrix& m, const Frame& row, const Frame& col) {
  return coefficient_projector(row) * m * coefficient_projector(col);
}

}  // namespace detail

/// Mat^(row,col)(O) = C_row O D_col.
inline CoefficientMatrix matrix_rep(const AmbientOperator& o, const Frame& row, const Frame& col) {
  detail::require_operator_frames(o, row, col, "matrix_rep");
  return CoefficientMatrix(row.analysis_matrix() * o.matrix() * col.synthesis_matrix());
}

/// Op^(row,col)(M) = D_row M C_col.
inline AmbientOperator operator_synth(const CoefficientMatrix& m, const Frame& row,
                                      const Frame& col) {
  detail::require_matrix_frames(m, row, col, "operator_synth");
  return AmbientOperator(row.synthesis_matrix() * m.matrix() * col.analysis_matrix());
}

/// Op^(row,col)(M) by explicit summation of the rank-one operators
/// x |-> M_kj <x, psi_j> phi_k.
inline AmbientOperator rank_one_expansion(const CoefficientMatrix& m, const Frame& row,
                                          const Frame& col) {
  detail::require_matrix_frames(m, row, col, "rank_one_expansion");
  Matrix out = Matrix::Zero(row.dim(), col.dim());
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    const Vector phi = row.vector(k);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Complex c = m.matrix()(k, j);
      if (c == Complex(0.0, 0.0)) continue;
      out.noalias() += c * phi * col.vector(j).adjoint();
    }
  }
  return AmbientOperator(std::move(out));
}

/// Op^(row,col)(diag(symbol)), the frame multiplier with the given symbol.
inline AmbientOperator multiplier(const Vector& symbol, const Frame& row, const Frame& col) {
  detail::require_dims(symbol.size() == row.size() && symbol.size() == col.size(),
                       "multiplier: symbol length " + std::to_string(symbol.size()) +
                           " must equal both frame sizes (" + std::to_string(row.size()) + ", " +
                           std::to_string(col.size()) + ")");
  return AmbientOperator(row.synthesis_matrix() * symbol.asDiagonal() * col.analysis_matrix());
}

// ---------------------------------------------------------------------------
// Representability

struct RepresentabilityReport {
  bool representable = false;
  /// range(M) in range(C_row) and ker(D_col) in ker(M).
  bool cond_range_kernel = false;
  /// Pi_row M Pi_col = M.
  bool cond_gram_sandwich = false;
  /// ||Pi_row M Pi_col - M||_F.
  double sandwich_residual = 0.0;
  /// ||M K||_F for an orthonormal kernel basis K of D_col.
  double kernel_residual = 0.0;
  /// Op over the dual frames; satisfies Mat(W) = M when representable.
  std::optional<AmbientOperator> witness_operator;
  double witness_residual = 0.0;

  bool consistent() const {
    return cond_range_kernel == representable && cond_gram_sandwich == representable;
  }
};

inline RepresentabilityReport is_representable(const CoefficientMatrix& m, const Frame& row,
                                               const Frame& col, const Tolerance& tol = {}) {
  detail::require_matrix_frames(m, row, col, "is_representable");
  RepresentabilityReport report;
  const Matrix& mm = m.matrix();
  const double scale = std::max(1.0, mm.norm());

  const bool range_ok = range_contains(row.analysis_matrix(), mm, tol);
  const Matrix kernel = kernel_basis(col.synthesis_matrix(), tol);
  report.kernel_residual = kernel.cols() == 0 ? 0.0 : (mm * kernel).norm();
  const bool kernel_ok = report.kernel_residual <= tol.eq_rel * scale;
  report.cond_range_kernel = range_ok && kernel_ok;

  const Matrix sandwich = gram(row, canonical_dual(row)).matrix * mm *
                          gram(col, canonical_dual(col)).matrix;
  report.sandwich_residual = (sandwich - mm).norm();
  report.cond_gram_sandwich = report.sandwich_residual <= tol.eq_rel * scale;

  report.representable = report.cond_gram_sandwich;
  if (report.representable) {
    AmbientOperator w = operator_synth(m, canonical_dual(row), canonical_dual(col));
    report.witness_residual = rel_diff(matrix_rep(w, row, col).matrix(), mm);
    report.witness_operator = std::move(w);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Injectivity, surjectivity, bijectivity

struct JectivityReport {
  bool injective = false;
  bool surjective = false;
  bool bijective = false;
  /// Whether rank tests on the synthesized operator reproduce the verdicts
  /// obtained from the restricted coefficient map.
  bool agrees_with_direct = false;
  std::map<std::string, double> residuals;
};

/// Decides the jectivity of Op(M) through the restricted map Pi_row M on
/// range(C_col), represented by the N_row x d1 matrix Pi_row M C_col.
inline JectivityReport op_properties_from_matrix(const CoefficientMatrix& m, const Frame& row,
                                                 const Frame& col, const Tolerance& tol = {}) {
  detail::require_matrix_frames(m, row, col, "op_properties_from_matrix");
  const Eigen::Index d1 = col.dim();
  const Eigen::Index d2 = row.dim();

  const Matrix restricted_map = coefficient_projector(row) * m.matrix() * col.analysis_matrix();
  const Eigen::Index r = rank_of(restricted_map, tol);
  const Matrix synthesized = operator_synth(m, row, col).matrix();
  const Eigen::Index r_direct = rank_of(synthesized, tol);

  JectivityReport report;
  report.injective = r == d1;
  report.surjective = r == d2;
  report.bijective = report.injective && report.surjective;
  report.agrees_with_direct = (r_direct == d1) == report.injective &&
                              (r_direct == d2) == report.surjective;

  const RealVector s = singular_values(restricted_map);
  const RealVector s_direct = singular_values(synthesized);
  report.residuals["restricted_rank"] = static_cast<double>(r);
  report.residuals["direct_rank"] = static_cast<double>(r_direct);
  report.residuals["restricted_sigma_max"] = s(0);
  report.residuals["restricted_sigma_min"] = s(s.size() - 1);
  report.residuals["direct_sigma_min"] = s_direct(s_direct.size() - 1);
  return report;
}

// ---------------------------------------------------------------------------
// Inversion

/// The three expressions for the inverse of Op^(row,col)(M) when the
/// restricted map is bijective, with M^dagger = pinv(Pi_row M Pi_col):
///
///   via_dual_synthesis          D_dual(col) M^dagger C_dual(row)
///   via_gram_sandwich           Op^(row,col)(G M^dagger G), G = G_{dual(row),dual(col)}
///   via_frame_operator_sandwich S_dual(col) Op^(col,row)(M^dagger) S_dual(row)
struct InverseFormulas {
  Matrix pseudo_inverse;
  AmbientOperator via_dual_synthesis;
  AmbientOperator via_gram_sandwich;
  AmbientOperator via_frame_operator_sandwich;
  /// Largest pairwise relative Frobenius difference of the three.
  double max_pairwise_diff = 0.0;
  /// rel_diff(inverse * Op(M), I).
  double identity_residual = 0.0;
};

inline InverseFormulas inverse_formulas(const CoefficientMatrix& m, const Frame& row,
                                        const Frame& col, const Tolerance& tol = {}) {
  detail::require_matrix_frames(m, row, col, "invert_from_matrix");
  detail::require(row.dim() == col.dim(), ErrorCode::not_bijective,
                  "domain and codomain dimensions differ");
  const Frame row_dual = canonical_dual(row);
  const Frame col_dual = canonical_dual(col);

  Matrix mdag = pinv(detail::restricted(m.matrix(), row, col), tol);

  Matrix f1 = col_dual.synthesis_matrix() * mdag * row_dual.analysis_matrix();

  const Matrix g = gram(row_dual, col_dual).matrix;
  Matrix f2 = row.synthesis_matrix() * (g * mdag * g) * col.analysis_matrix();

  Matrix f3 = frame_operator(col_dual) * (col.synthesis_matrix() * mdag * row.analysis_matrix()) *
              frame_operator(row_dual);

  const double d12 = rel_diff(f1, f2);
  const double d13 = rel_diff(f1, f3);
  const double d23 = rel_diff(f2, f3);
  const Matrix forward = row.synthesis_matrix() * m.matrix() * col.analysis_matrix();
  const double id_res = rel_diff(f1 * forward, Matrix::Identity(col.dim(), col.dim()));

  return {std::move(mdag),
          AmbientOperator(std::move(f1)),
          AmbientOperator(std::move(f2)),
          AmbientOperator(std::move(f3)),
          std::max({d12, d13, d23}),
          id_res};
}

/// Inverse of Op^(row,col)(M). Throws NotBijective when the restricted map
/// fails the bijectivity criterion and FormulaMismatch when the three inverse
/// expressions disagree or fail to invert Op(M) within tol.eq_rel.
inline AmbientOperator invert_from_matrix(const CoefficientMatrix& m, const Frame& row,
                                          const Frame& col, const Tolerance& tol = {}) {
  detail::require_matrix_frames(m, row, col, "invert_from_matrix");
  const JectivityReport j = op_properties_from_matrix(m, row, col, tol);
  detail::require(j.bijective, ErrorCode::not_bijective,
                  "restricted coefficient map is not bijective");
  InverseFormulas f = inverse_formulas(m, row, col, tol);
  detail::require(f.max_pairwise_diff <= tol.eq_rel && f.identity_residual <= tol.eq_rel,
                  ErrorCode::formula_mismatch,
                  "inverse formulas disagree: pairwise " + std::to_string(f.max_pairwise_diff) +
                      ", identity residual " + std::to_string(f.identity_residual));
  return std::move(f.via_dual_synthesis);
}

/// A candidate reading of the frame-operator sandwich, with its relative
/// distance to D_dual(col) M^dagger C_dual(row). Readings that do not
/// type-check for the given frames carry no residual.
struct SandwichCandidate {
  std::string name;
  std::optional<double> residual;
};

/// Evaluates the literal cross-frame-operator orderings
/// S_{a,b} Op^(row,col)(M^dagger) S_{a,b} for (a,b) = (dual col, dual row)
/// and (dual row, dual col), alongside the shipped S_dual(col) Op^(col,row)(M^dagger) S_dual(row).
/// The literal orderings only type-check when both frames have equal size,
/// and only coincide with the inverse when the frames span the same
/// coefficient subspace (e.g. row == col).
inline std::vector<SandwichCandidate> frame_operator_sandwich_candidates(
    const CoefficientMatrix& m, const Frame& row, const Frame& col, const Tolerance& tol = {}) {
  const InverseFormulas f = inverse_formulas(m, row, col, tol);
  const Matrix& reference = f.via_dual_synthesis.matrix();
  const Frame row_dual = canonical_dual(row);
  const Frame col_dual = canonical_dual(col);

  std::vector<SandwichCandidate> out;
  out.push_back({"S_dual(col) Op^(col,row)(M+) S_dual(row)",
                 rel_diff(f.via_frame_operator_sandwich.matrix(), reference)});
  const bool same_size = row.size() == col.size();
  auto literal = [&](const Frame& a, const Frame& b) -> std::optional<double> {
    if (!same_size) return std::nullopt;
    const Matrix s = cross_frame_operator(a, b);
    const Matrix middle = row.synthesis_matrix() * f.pseudo_inverse * col.analysis_matrix();
    return rel_diff(s * middle * s, reference);
  };
  out.push_back({"S_{dual(col),dual(row)} Op^(row,col)(M+) S_{dual(col),dual(row)}",
                 literal(col_dual, row_dual)});
  out.push_back({"S_{dual(row),dual(col)} Op^(row,col)(M+) S_{dual(row),dual(col)}",
                 literal(row_dual, col_dual)});
  return out;
}

/// The three expressions for M^dagger given a bijective operator O:
///
///   via_dual_matrix       Mat^(dual(col),dual(row))(O^-1)
///   via_gram_sandwich     G Mat^(row,col)(O^-1) G, G = G_{dual(col),dual(row)}
///   via_frame_operators   Mat^(col,row)(S_col^-1 O^-1 S_row^-1)
struct PseudoInverseFormulas {
  CoefficientMatrix via_dual_matrix;
  CoefficientMatrix via_gram_sandwich;
  CoefficientMatrix via_frame_operators;
  /// pinv(Pi_row Mat(O) Pi_col), computed directly.
  Matrix reference;
  double max_pairwise_diff = 0.0;
  double reference_diff = 0.0;
};

inline PseudoInverseFormulas pseudo_inverse_formulas(const AmbientOperator& o, const Frame& row,
                                                     const Frame& col, const Tolerance& tol = {}) {
  detail::require_operator_frames(o, row, col, "pseudo_matrix_of_inverse");
  detail::require(o.domain_dim() == o.codomain_dim() &&
                      rank_of(o.matrix(), tol) == o.domain_dim(),
                  ErrorCode::not_bijective, "operator is not bijective");
  const Matrix inv = pinv(o.matrix(), tol);
  const Frame row_dual = canonical_dual(row);
  const Frame col_dual = canonical_dual(col);

  Matrix a = col_dual.analysis_matrix() * inv * row_dual.synthesis_matrix();
  const Matrix g = gram(col_dual, row_dual).matrix;
  Matrix b = g * (row.analysis_matrix() * inv * col.synthesis_matrix()) * g;
  Matrix c = col.analysis_matrix() *
             (hermitian_inverse(frame_operator(col)) * inv *
              hermitian_inverse(frame_operator(row))) *
             row.synthesis_matrix();
  Matrix reference =
      pinv(detail::restricted(matrix_rep(o, row, col).matrix(), row, col), tol);

  const double pairwise = std::max({rel_diff(a, b), rel_diff(a, c), rel_diff(b, c)});
  const double ref = rel_diff(a, reference);
  return {CoefficientMatrix(std::move(a)), CoefficientMatrix(std::move(b)),
          CoefficientMatrix(std::move(c)), std::move(reference), pairwise, ref};
}

/// M^dagger for M = Mat^(row,col)(O). Throws NotBijective for singular or
/// non-square O and FormulaMismatch when the expressions disagree.
inline CoefficientMatrix pseudo_matrix_of_inverse(const AmbientOperator& o, const Frame& row,
                                                  const Frame& col, const Tolerance& tol = {}) {
  PseudoInverseFormulas f = pseudo_inverse_formulas(o, row, col, tol);
  detail::require(f.max_pairwise_diff <= tol.eq_rel && f.reference_diff <= tol.eq_rel,
                  ErrorCode::formula_mismatch,
                  "pseudo-inverse formulas disagree: pairwise " +
                      std::to_string(f.max_pairwise_diff) + ", against pinv " +
                      std::to_string(f.reference_diff));
  return std::move(f.via_dual_matrix);
}

// ---------------------------------------------------------------------------
// Composition and decomposition

/// Mat^(row,mid)(O) * Mat^(dual(mid),col)(P) for O: H3 -> H2 and P: H1 -> H3.
/// The product equals Mat^(row,col)(O P) for every middle frame; a
/// discrepancy beyond tol.eq_rel raises FormulaMismatch.
inline CoefficientMatrix compose_rep(const AmbientOperator& o, const AmbientOperator& p,
                                     const Frame& row, const Frame& mid, const Frame& col,
                                     const Tolerance& tol = {}) {
  detail::require_dims(o.domain_dim() == p.codomain_dim(),
                       "compose_rep: operators cannot be composed");
  Matrix product = matrix_rep(o, row, mid).matrix() *
                   matrix_rep(p, canonical_dual(mid), col).matrix();
  const Matrix direct = matrix_rep(AmbientOperator(o.matrix() * p.matrix()), row, col).matrix();
  const double diff = rel_diff(product, direct);
  detail::require(diff <= tol.eq_rel, ErrorCode::formula_mismatch,
                  "composition identity violated by " + std::to_string(diff));
  return CoefficientMatrix(std::move(product));
}

struct DecompositionReport {
  /// Whether the middle transfer C_mid D_dual(mid) is the identity: mid is a
  /// Riesz basis, or in pair mode the two middle frames are biorthogonal.
  bool xi_is_riesz = false;
  bool pair_mode = false;
  /// M2 maps range(C_col) into range(C_mid).
  bool cond_a = false;
  /// ker(D_row M1)^perp lies in range(C_mid).
  bool cond_b = false;
  /// Op^(row,col)(M1 M2) = Op^(row,mid)(M1) Op^(dual(mid),col)(M2).
  bool equality_holds = false;
  /// ||lhs - rhs||_F.
  double gap = 0.0;
  /// gap / max(||lhs||_F, ||rhs||_F); 0 when both sides vanish.
  double normalized_gap = 0.0;

  bool implications_hold() const {
    return (!xi_is_riesz || equality_holds) && (!cond_a || equality_holds) &&
           (!cond_b || equality_holds);
  }
};

namespace detail {

inline void require_chain(const CoefficientMatrix& m1, const CoefficientMatrix& m2,
                          const Frame& row, Eigen::Index mid_size, const Frame& col) {
  require_dims(m1.rows() == row.size() && m1.cols() == mid_size && m2.rows() == mid_size &&
                   m2.cols() == col.size(),
               "decompose_check: matrices " + shape(m1.rows(), m1.cols()) + " and " +
                   shape(m2.rows(), m2.cols()) + " do not chain through frames of sizes " +
                   std::to_string(row.size()) + ", " + std::to_string(mid_size) + ", " +
                   std::to_string(col.size()));
}

inline void fill_gap(DecompositionReport& r, const Matrix& lhs, const Matrix& rhs,
                     const Tolerance& tol) {
  r.gap = (lhs - rhs).norm();
  const double scale = std::max(lhs.norm(), rhs.norm());
  r.normalized_gap = scale > 0.0 ? r.gap / scale : 0.0;
  r.equality_holds = rel_diff(lhs, rhs) <= tol.eq_rel;
}

}  // namespace detail

inline DecompositionReport decompose_check(const CoefficientMatrix& m1,
                                           const CoefficientMatrix& m2, const Frame& row,
                                           const Frame& mid, const Frame& col,
                                           const Tolerance& tol = {}) {
  detail::require_chain(m1, m2, row, mid.size(), col);
  DecompositionReport r;
  r.xi_is_riesz = is_riesz_basis(mid, tol).is_riesz;

  const Matrix c_mid = mid.analysis_matrix();
  r.cond_a = range_contains(c_mid, m2.matrix() * col.analysis_matrix(), tol);
  // (ker A)^perp = range(A*), A = D_row M1.
  r.cond_b = range_contains(c_mid, m1.matrix().adjoint() * row.analysis_matrix(), tol);

  const Matrix lhs = row.synthesis_matrix() * m1.matrix() * m2.matrix() * col.analysis_matrix();
  const Matrix rhs = operator_synth(m1, row, mid).matrix() *
                     operator_synth(m2, canonical_dual(mid), col).matrix();
  detail::fill_gap(r, lhs, rhs, tol);
  return r;
}

/// Decomposition through a pair of middle frames (mid_analysis, mid_synthesis)
/// in place of (mid, dual(mid)); T = C_{mid_analysis} D_{mid_synthesis}.
/// cond_a: T acts as the identity on range(M2 C_col).
/// cond_b: D_row M1 T = D_row M1, i.e. T* acts as the identity on
/// ker(D_row M1)^perp.
inline DecompositionReport decompose_check_pair(const CoefficientMatrix& m1,
                                                const CoefficientMatrix& m2, const Frame& row,
                                                const Frame& mid_analysis,
                                                const Frame& mid_synthesis, const Frame& col,
                                                const Tolerance& tol = {}) {
  detail::require_dims(mid_analysis.dim() == mid_synthesis.dim() &&
                           mid_analysis.size() == mid_synthesis.size(),
                       "decompose_check_pair: middle frames differ in dimension or size");
  detail::require_chain(m1, m2, row, mid_analysis.size(), col);
  DecompositionReport r;
  r.pair_mode = true;

  const Matrix t = mid_analysis.analysis_matrix() * mid_synthesis.synthesis_matrix();
  const Matrix id = Matrix::Identity(t.rows(), t.cols());
  r.xi_is_riesz = rel_diff(t, id) <= tol.eq_rel;

  const Matrix right = m2.matrix() * col.analysis_matrix();
  r.cond_a = ((t - id) * right).norm() <= tol.eq_rel * std::max(1.0, right.norm());
  const Matrix left = row.synthesis_matrix() * m1.matrix();
  r.cond_b = (left * (t - id)).norm() <= tol.eq_rel * std::max(1.0, left.norm());

  const Matrix lhs = left * m2.matrix() * col.analysis_matrix();
  const Matrix rhs = operator_synth(m1, row, mid_analysis).matrix() *
                     operator_synth(m2, mid_synthesis, col).matrix();
  detail::fill_gap(r, lhs, rhs, tol);
  return r;
}

/// Unit vector spanning part of ker(D_f) = range(C_f)^perp, phase-normalized
/// so that its first largest-magnitude entry is real and positive.
inline Vector analysis_complement_vector(const Frame& f, const Tolerance& tol = {}) {
  const Matrix k = kernel_basis(f.synthesis_matrix(), tol);
  detail::require(k.cols() > 0, ErrorCode::xi_is_riesz,
                  "frame is a Riesz basis; range(C) is the whole coefficient space");
  Vector u = k.col(0);
  const double peak = u.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (std::abs(u(i)) >= peak * (1.0 - 1e-12)) {
      u *= std::conj(u(i)) / std::abs(u(i));
      break;
    }
  return u / u.norm();
}

/// Matrices (M1, M2) = (v u*, u w*) with u orthogonal to range(C_mid),
/// v = C_row g0 and w = C_col f0 for seeded random g0, f0. The middle
/// projector annihilates u, so the decomposed product vanishes while
/// Op(M1 M2) = S_row g0 f0* S_col does not. Throws XiIsRiesz when mid is a
/// Riesz basis.
inline std::pair<CoefficientMatrix, CoefficientMatrix> build_decomposition_counterexample(
    const Frame& row, const Frame& mid, const Frame& col, std::uint64_t seed,
    const Tolerance& tol = {}) {
  const Vector u = analysis_complement_vector(mid, tol);
  std::mt19937_64 rng(seed);
  Vector g0, f0;
  do g0 = detail::complex_gaussian(row.dim(), 1, rng).col(0);
  while (g0.norm() < 1e-3);
  do f0 = detail::complex_gaussian(col.dim(), 1, rng).col(0);
  while (f0.norm() < 1e-3);
  const Vector v = analysis(row, g0);
  const Vector w = analysis(col, f0);
  return {CoefficientMatrix(v * u.adjoint()), CoefficientMatrix(u * w.adjoint())};
}

// ---------------------------------------------------------------------------
// Bijectivity of M versus bijectivity of Op(M)

struct RieszEquivalenceReport {
  bool both_riesz = false;
  /// Random trials (Riesz case only) and how many showed
  /// bijective(M) == bijective(Op(M)).
  int trials_run = 0;
  int agreements = 0;
  /// How many trials drew a singular M.
  int singular_trials = 0;
  /// The witness M = C_dual(row) D_dual(col).
  double witness_identity_residual = 0.0;
  Eigen::Index witness_rank = 0;
  bool witness_bijective = false;

  /// Riesz pair: every trial agreed. Redundant pair: Op(witness) = I while
  /// the witness is not bijective.
  bool confirmed(const Tolerance& tol = {}) const {
    if (both_riesz) return agreements == trials_run;
    return witness_identity_residual <= tol.eq_rel && !witness_bijective;
  }
};

inline RieszEquivalenceReport riesz_equivalence_check(const Frame& row, const Frame& col,
                                                      const Tolerance& tol, int trials,
                                                      std::uint64_t seed) {
  detail::require_dims(row.dim() == col.dim(),
                       "riesz_equivalence_check: frames must share the ambient space");
  RieszEquivalenceReport r;
  const Eigen::Index d = row.dim();
  r.both_riesz = is_riesz_basis(row, tol).is_riesz && is_riesz_basis(col, tol).is_riesz;

  const Matrix witness =
      gram(canonical_dual(row), canonical_dual(col)).matrix;  // C_dual(row) D_dual(col)
  const Matrix synthesized = row.synthesis_matrix() * witness * col.analysis_matrix();
  r.witness_identity_residual = rel_diff(synthesized, Matrix::Identity(d, d));
  r.witness_rank = rank_of(witness, tol);
  r.witness_bijective = witness.rows() == witness.cols() && r.witness_rank == witness.rows();

  if (!r.both_riesz) return r;

  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    Matrix m = detail::complex_gaussian(row.size(), col.size(), rng);
    if (t % 2 == 1 && m.cols() > 1) {
      // Singular draw: last column repeats a multiple of the first.
      m.col(m.cols() - 1) = Complex(0.5, -1.5) * m.col(0);
      ++r.singular_trials;
    } else if (t % 2 == 1) {
      m.setZero();
      ++r.singular_trials;
    }
    const bool m_bijective = m.rows() == m.cols() && rank_of(m, tol) == m.rows();
    const Matrix op = row.synthesis_matrix() * m * col.analysis_matrix();
    const bool op_bijective = rank_of(op, tol) == d;
    ++r.trials_run;
    if (m_bijective == op_bijective) ++r.agreements;
  }
  return r;
}

}  // namespace frameop
