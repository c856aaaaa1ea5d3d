#pragma once

#include <algorithm>
#include <string_view>

#include "frameop/error.hpp"
#include "frameop/frame.hpp"
#include "frameop/linalg.hpp"
#include "frameop/oprep.hpp"

namespace frameop {

enum class SolveMethod { pseudo_inverse_coefficients, dense_reference };

inline std::string_view to_string(SolveMethod m) {
  return m == SolveMethod::pseudo_inverse_coefficients ? "pseudo_inverse_coefficients"
                                                       : "dense_reference";
}

/// Frames with lambda_min(S) / lambda_max(S) below this are refused.
inline constexpr double kSolverMinFrameRatio = 1e-8;
/// Residuals above this flag the report as ill-conditioned.
inline constexpr double kSolverResidualLimit = 1e-6;

struct SolveReport {
  Vector solution;
  /// ||O f - g|| / max(1, ||g||), against the ambient operator.
  double residual = 0.0;
  SolveMethod method = SolveMethod::pseudo_inverse_coefficients;
  Vector reference_solution;
  /// ||f - f_ref|| / ||f_ref|| (absolute when f_ref = 0).
  double reference_agreement = 0.0;
  bool ill_conditioned = false;
};

/// Galerkin solve of O f = g in the coefficient domain. With M = Mat^(row,col)(O)
/// the coefficient system M c = C_row g is solved by c = M^dagger C_row g and
/// f = D_col c, i.e. f = Op^(col,row)(M^dagger) g. Since O = Op^(dual row, dual col)(M)
/// this is the dual-synthesis inverse formula applied to the dual pair. A
/// dense LU solve runs alongside as the reference.
inline SolveReport solve(const AmbientOperator& o, const Vector& g, const Frame& row,
                         const Frame& col, const Tolerance& tol = {}) {
  detail::require_operator_frames(o, row, col, "solve");
  detail::require_dims(g.size() == o.codomain_dim(), "solve: right-hand side has length " +
                                                         std::to_string(g.size()) + ", expected " +
                                                         std::to_string(o.codomain_dim()));
  detail::require(all_finite(g), ErrorCode::invalid_argument, "right-hand side is not finite");
  detail::require(o.domain_dim() == o.codomain_dim() &&
                      rank_of(o.matrix(), tol) == o.domain_dim(),
                  ErrorCode::not_bijective, "operator is not bijective");
  detail::require(conditioning_ratio(row) >= kSolverMinFrameRatio &&
                      conditioning_ratio(col) >= kSolverMinFrameRatio,
                  ErrorCode::ill_conditioned, "frame bounds ratio below 1e-8");

  const CoefficientMatrix m = matrix_rep(o, row, col);
  const Matrix mdag = pinv(detail::restricted(m.matrix(), row, col), tol);

  SolveReport report;
  report.solution = synthesis(col, mdag * analysis(row, g));
  report.residual = (o.matrix() * report.solution - g).norm() / std::max(1.0, g.norm());
  report.method = SolveMethod::pseudo_inverse_coefficients;
  report.reference_solution = o.matrix().fullPivLu().solve(g);
  const double ref_norm = report.reference_solution.norm();
  const double diff = (report.solution - report.reference_solution).norm();
  report.reference_agreement = ref_norm > 0.0 ? diff / ref_norm : diff;
  report.ill_conditioned = report.residual > kSolverResidualLimit;
  return report;
}

}  // namespace frameop
