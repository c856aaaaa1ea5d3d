#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "frameop/error.hpp"
#include "frameop/frame.hpp"

namespace frameop {

enum class FrameKind { onb, random, harmonic, gabor, mercedes, union_onb, perturbed_riesz };

inline std::string_view to_string(FrameKind kind) {
  switch (kind) {
    case FrameKind::onb: return "onb";
    case FrameKind::random: return "random";
    case FrameKind::harmonic: return "harmonic";
    case FrameKind::gabor: return "gabor";
    case FrameKind::mercedes: return "mercedes";
    case FrameKind::union_onb: return "union_onb";
    case FrameKind::perturbed_riesz: return "perturbed_riesz";
  }
  return "unknown";
}

inline std::optional<FrameKind> parse_frame_kind(std::string_view name) {
  for (FrameKind k : {FrameKind::onb, FrameKind::random, FrameKind::harmonic, FrameKind::gabor,
                      FrameKind::mercedes, FrameKind::union_onb, FrameKind::perturbed_riesz})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

struct GeneratorParams {
  std::size_t dim = 2;
  /// Number of vectors for `random` and `harmonic`.
  std::size_t count = 0;
  /// Gabor lattice: time shifts by multiples of `time_step`, modulations by
  /// multiples of `freq_step`. Both must divide `dim`.
  std::size_t time_step = 1;
  std::size_t freq_step = 1;
  /// Number of orthonormal bases joined by `union_onb`.
  std::size_t copies = 2;
  /// Size of the random perturbation of the identity for `perturbed_riesz`.
  double perturbation = 0.3;
};

/// Draws below this lambda_min / lambda_max ratio are rejected and redrawn.
inline constexpr double kRandomFrameMinRatio = 1e-6;

namespace detail {

inline void require_params(bool condition, const std::string& what) {
  require(condition, ErrorCode::bad_generator_params, what);
}

inline Matrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  // Column-major fill order keeps the stream layout independent of Eigen internals.
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  return m;
}

inline Matrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  const Matrix g = complex_gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // Fix the phases so the distribution does not depend on the QR sign convention.
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

/// Periodized discrete Gaussian of unit norm on Z_d, centred at 0.
inline Vector periodic_gaussian(Eigen::Index d) {
  Vector g(d);
  const double dd = static_cast<double>(d);
  for (Eigen::Index t = 0; t < d; ++t) {
    double value = 0.0;
    for (int k = -3; k <= 3; ++k) {
      const double x = static_cast<double>(t) + k * dd;
      value += std::exp(-std::numbers::pi * x * x / dd);
    }
    g(t) = value;
  }
  return g / g.norm();
}

inline Frame validated(const Matrix& columns, const std::string& kind) {
  try {
    return Frame::from_columns(columns);
  } catch (const Error& e) {
    throw Error(ErrorCode::bad_generator_params, kind + " parameters yield no frame: " + e.what());
  }
}

}  // namespace detail

/// Deterministic test-fixture frames.
///
/// - onb: standard basis of C^dim.
/// - random: `count` complex Gaussian vectors, redrawn until
///   lambda_min(S) >= 1e-6 lambda_max(S).
/// - harmonic: rows j < dim of the N-point DFT, scaled by 1/sqrt(dim); tight
///   with A = B = count / dim.
/// - gabor: time-frequency shifts of a periodized Gaussian window on Z_dim.
/// - mercedes: the three-vector tight frame of C^2 with A = B = 3/2.
/// - union_onb: the standard basis together with `copies - 1` random unitary
///   bases; tight with A = B = copies.
/// - perturbed_riesz: columns of I + perturbation * G / sqrt(dim) for complex
///   Gaussian G, a non-orthogonal Riesz basis.
inline Frame gen_frame(FrameKind kind, const GeneratorParams& params, std::uint64_t seed) {
  using detail::require_params;
  const auto d = static_cast<Eigen::Index>(params.dim);
  require_params(d > 0, "dimension must be positive");
  std::mt19937_64 rng(seed);

  switch (kind) {
    case FrameKind::onb:
      return Frame::from_columns(Matrix::Identity(d, d));

    case FrameKind::random: {
      const auto n = static_cast<Eigen::Index>(params.count == 0 ? params.dim : params.count);
      require_params(n >= d, "random frame needs count >= dim");
      for (int attempt = 0; attempt < 1000; ++attempt) {
        const Matrix v = detail::complex_gaussian(d, n, rng);
        const auto [lo, hi] = hermitian_extreme_eigenvalues(v * v.adjoint());
        if (lo >= kRandomFrameMinRatio * hi) return Frame::from_columns(v);
      }
      throw Error(ErrorCode::bad_generator_params, "random frame: no well-conditioned draw");
    }

    case FrameKind::harmonic: {
      const auto n = static_cast<Eigen::Index>(params.count);
      require_params(n >= d, "harmonic frame needs count >= dim");
      Matrix v(d, n);
      for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index j = 0; j < d; ++j)
          v(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                               2.0 * std::numbers::pi * static_cast<double>(k * j) /
                                   static_cast<double>(n));
      return Frame::from_columns(v);
    }

    case FrameKind::gabor: {
      const auto a = static_cast<Eigen::Index>(params.time_step);
      const auto b = static_cast<Eigen::Index>(params.freq_step);
      require_params(a > 0 && b > 0 && d % a == 0 && d % b == 0,
                     "gabor lattice steps must divide dim");
      const Eigen::Index shifts = d / a;
      const Eigen::Index modulations = d / b;
      require_params(shifts * modulations >= d, "gabor lattice too sparse: (d/a)(d/b) < d");
      const Vector g = detail::periodic_gaussian(d);
      Matrix v(d, shifts * modulations);
      Eigen::Index col = 0;
      for (Eigen::Index n = 0; n < shifts; ++n)
        for (Eigen::Index m = 0; m < modulations; ++m, ++col)
          for (Eigen::Index t = 0; t < d; ++t)
            v(t, col) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m * b * t) /
                                            static_cast<double>(d)) *
                        g((t - n * a + d) % d);
      return detail::validated(v, "gabor");
    }

    case FrameKind::mercedes: {
      require_params(d == 2, "mercedes frame lives in C^2");
      Matrix v(2, 3);
      const double h = std::sqrt(3.0) / 2.0;
      v << 0.0, -h, h,
           1.0, -0.5, -0.5;
      return Frame::from_columns(v);
    }

    case FrameKind::union_onb: {
      const auto copies = static_cast<Eigen::Index>(params.copies);
      require_params(copies >= 1, "union_onb needs at least one basis");
      Matrix v(d, d * copies);
      v.leftCols(d) = Matrix::Identity(d, d);
      for (Eigen::Index c = 1; c < copies; ++c) v.middleCols(c * d, d) = detail::random_unitary(d, rng);
      return Frame::from_columns(v);
    }

    case FrameKind::perturbed_riesz: {
      require_params(std::isfinite(params.perturbation) && params.perturbation >= 0.0,
                     "perturbation must be finite and nonnegative");
      for (int attempt = 0; attempt < 1000; ++attempt) {
        const Matrix v = Matrix::Identity(d, d) + params.perturbation *
                                                      detail::complex_gaussian(d, d, rng) /
                                                      std::sqrt(static_cast<double>(d));
        const auto [lo, hi] = hermitian_extreme_eigenvalues(v * v.adjoint());
        if (lo >= kRandomFrameMinRatio * hi) return Frame::from_columns(v);
      }
      throw Error(ErrorCode::bad_generator_params, "perturbed_riesz: no well-conditioned draw");
    }
  }
  throw Error(ErrorCode::bad_generator_params, "unknown frame kind");
}

}  // namespace frameop
