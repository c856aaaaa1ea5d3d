// Solves a discretized 1-D periodic system (-Laplacian + k^2) u = f through a
// redundant Gabor frame and compares with a direct solve.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "frameop/frameop.hpp"

int main() {
  using namespace frameop;
  const Eigen::Index n = 16;
  const double k2 = 0.5;

  Matrix op = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    op(i, i) = 2.0 + k2;
    op(i, (i + 1) % n) = -1.0;
    op(i, (i + n - 1) % n) = -1.0;
  }
  Vector rhs(n);
  for (Eigen::Index i = 0; i < n; ++i)
    rhs(i) = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));

  GeneratorParams p;
  p.dim = n;
  p.time_step = 4;
  p.freq_step = 2;
  const Frame gabor = gen_frame(FrameKind::gabor, p, 0);
  const FrameBounds b = frame_bounds(gabor);
  std::printf("Gabor frame: %td vectors in C^%td, bounds A=%.4g B=%.4g\n", gabor.size(),
              gabor.dim(), b.lower, b.upper);

  const SolveReport r = solve(AmbientOperator(op), rhs, gabor, gabor);
  std::printf("residual %.3e, agreement with dense solve %.3e\n", r.residual,
              r.reference_agreement);

  const JectivityReport j = op_properties_from_matrix(
      matrix_rep(AmbientOperator(op), canonical_dual(gabor), canonical_dual(gabor)), gabor, gabor);
  std::printf("coefficient map bijective on range: %s\n", j.bijective ? "yes" : "no");
  return r.ill_conditioned ? 1 : 0;
}
