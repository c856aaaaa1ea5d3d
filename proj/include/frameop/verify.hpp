#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "frameop/frame.hpp"
#include "frameop/generators.hpp"
#include "frameop/io.hpp"
#include "frameop/linalg.hpp"
#include "frameop/oprep.hpp"
#include "frameop/solver.hpp"

namespace frameop {

/// Ambient dimensions (d1, d2, d3): O maps C^d1 -> C^d2, and C^d3 is the
/// middle space of compositions.
struct SpaceDims {
  Eigen::Index d1 = 2;
  Eigen::Index d2 = 2;
  Eigen::Index d3 = 2;

  Eigen::Index max() const { return std::max({d1, d2, d3}); }
};

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::vector<SpaceDims> dims{{2, 2, 2}, {3, 3, 3}, {2, 3, 4}};
  /// Redundant frame size per dims entry; a single value applies to all.
  std::vector<Eigen::Index> frame_sizes{5};
  int trials = 10;
  Tolerance tolerance{};
  /// Restrict scenario frames to orthonormal bases.
  bool onb_only = false;
  /// Debug: compute the reconstruction check's matrix representation with a
  /// transpose in place of the adjoint.
  bool corrupt_mat_convention = false;

  Eigen::Index frame_size(std::size_t entry) const {
    return frame_sizes.size() == 1 ? frame_sizes.front() : frame_sizes.at(entry);
  }

  void validate() const {
    tolerance.validate();
    detail::require(trials >= 1, ErrorCode::invalid_argument, "trials must be at least 1");
    detail::require(!dims.empty(), ErrorCode::invalid_argument, "no dimensions configured");
    detail::require(frame_sizes.size() == 1 || frame_sizes.size() == dims.size(),
                    ErrorCode::invalid_argument,
                    "frame_sizes needs one entry or one per dims entry");
    for (std::size_t e = 0; e < dims.size(); ++e) {
      const SpaceDims& s = dims[e];
      detail::require(s.d1 >= 1 && s.d2 >= 1 && s.d3 >= 1, ErrorCode::invalid_argument,
                      "dimensions must be positive");
      detail::require(frame_size(e) >= s.max(), ErrorCode::invalid_argument,
                      "frame size " + std::to_string(frame_size(e)) +
                          " is below the dimension " + std::to_string(s.max()));
    }
  }
};

struct CheckRecord {
  std::string name;
  std::string anchor;
  int fixtures_run = 0;
  double max_residual = 0.0;
  double limit = 0.0;
  bool verdict = true;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<CheckRecord> checks;  // sorted by name

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.verdict; });
  }
  const CheckRecord* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// The places in the source theory each check restates.
inline const std::vector<std::string>& suite_anchors() {
  static const std::vector<std::string> anchors{
      "preliminaries: Moore-Penrose pseudo-inverse",
      "frames: bounds, operators, canonical dual, Riesz bases, Gram matrix",
      "representation theorem: bounded maps, norm bounds, rank-one form",
      "representation proposition: reconstruction, injectivity, identity, composition",
      "representability equivalences",
      "jectivity lemma with inverse formulas",
      "pseudo-inverse lemma",
      "Riesz-basis bijectivity theorem",
      "decomposition theorems and biorthogonal pair remarks",
      "frame multipliers",
      "solving operator equations",
  };
  return anchors;
}

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::vector<FrameKind> scenario_kinds(Eigen::Index d, bool onb_only) {
  if (onb_only) return {FrameKind::onb};
  std::vector<FrameKind> kinds{FrameKind::onb,   FrameKind::random,          FrameKind::harmonic,
                               FrameKind::gabor, FrameKind::perturbed_riesz, FrameKind::union_onb};
  if (d == 2) kinds.push_back(FrameKind::mercedes);
  return kinds;
}

inline Frame fixture_frame(FrameKind kind, Eigen::Index d, Eigen::Index n, std::uint64_t seed) {
  GeneratorParams p;
  p.dim = static_cast<std::size_t>(d);
  p.count = static_cast<std::size_t>(n);
  if (kind == FrameKind::gabor) {
    Eigen::Index a = d;
    for (Eigen::Index k = 2; k <= d; ++k)
      if (d % k == 0) {
        a = k;
        break;
      }
    p.time_step = static_cast<std::size_t>(a);
    p.freq_step = 1;
  }
  return gen_frame(kind, p, seed);
}

/// A frame guaranteed to be redundant: the random frame of size n when
/// n > d, otherwise a union of two bases.
inline Frame redundant_frame(Eigen::Index d, Eigen::Index n, std::uint64_t seed) {
  if (n > d) return fixture_frame(FrameKind::random, d, n, seed);
  GeneratorParams p;
  p.dim = static_cast<std::size_t>(d);
  p.copies = 2;
  return gen_frame(FrameKind::union_onb, p, seed);
}

inline Matrix gaussian(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
  return complex_gaussian(r, c, rng);
}

/// A bijective square matrix with condition number at most 1e4.
inline Matrix invertible(Eigen::Index d, std::mt19937_64& rng) {
  for (;;) {
    Matrix o = complex_gaussian(d, d, rng);
    const RealVector s = singular_values(o);
    if (s(s.size() - 1) >= 1e-4 * s(0)) return o;
  }
}

/// Rank-deficient r x c matrix of rank max(1, min(r, c) - 1).
inline Matrix deficient(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
  const Eigen::Index k = std::max<Eigen::Index>(1, std::min(r, c) - 1);
  return complex_gaussian(r, k, rng) * complex_gaussian(k, c, rng);
}

struct Scenario {
  SpaceDims dims;
  Eigen::Index n = 0;
  std::uint64_t seed = 0;
  Frame psi;   // H1, domain frame
  Frame psi2;  // H1, codomain frame for operators H1 -> H1
  Frame phi;   // H2
  Frame xi;    // H3
};

class Recorder {
 public:
  void declare(const std::string& name, const std::string& anchor, double limit) {
    CheckRecord r;
    r.name = name;
    r.anchor = anchor;
    r.limit = limit;
    records_.emplace(name, r);
  }

  /// Adds one fixture. A failed boolean condition counts as residual 1.
  void add(const std::string& name, double residual, bool condition = true) {
    CheckRecord& r = records_.at(name);
    if (!std::isfinite(residual)) residual = 1e300;
    const double value = condition ? residual : std::max(residual, 1.0);
    ++r.fixtures_run;
    r.max_residual = std::max(r.max_residual, value);
    if (!(value <= r.limit)) r.verdict = false;
  }

  std::vector<CheckRecord> sorted() const {
    std::vector<CheckRecord> out;
    for (const auto& [name, r] : records_) out.push_back(r);
    return out;
  }

 private:
  std::map<std::string, CheckRecord> records_;
};

inline double unit_residual(const Matrix& m) {
  return rel_diff(m, Matrix::Identity(m.rows(), m.cols()));
}

inline double frobenius_rel(const Matrix& a, const Matrix& b) {
  const double s = std::max(a.norm(), b.norm());
  return s > 0.0 ? (a - b).norm() / s : 0.0;
}

}  // namespace detail

inline SuiteReport run_suite(const SuiteConfig& config) {
  config.validate();
  const Tolerance& tol = config.tolerance;
  const auto& anchors = suite_anchors();
  const std::string& a_pinv = anchors[0];
  const std::string& a_frames = anchors[1];
  const std::string& a_thm = anchors[2];
  const std::string& a_prop = anchors[3];
  const std::string& a_repr = anchors[4];
  const std::string& a_ject = anchors[5];
  const std::string& a_pseudo = anchors[6];
  const std::string& a_riesz = anchors[7];
  const std::string& a_decomp = anchors[8];
  const std::string& a_mult = anchors[9];
  const std::string& a_solve = anchors[10];

  detail::Recorder rec;
  rec.declare("penrose_identities", a_pinv, 1e-9);
  rec.declare("range_projector", a_pinv, 1e-10);
  rec.declare("rank_unitary_invariance", a_pinv, 0.0);
  rec.declare("frame_inequality", a_frames, 1e-9);
  rec.declare("dual_bounds", a_frames, 1e-9);
  rec.declare("reconstruction", a_frames, 1e-9);
  rec.declare("adjointness", a_frames, 1e-9);
  rec.declare("dual_involution", a_frames, 1e-9);
  rec.declare("gram_projection", a_frames, 1e-9);
  rec.declare("riesz_report_consistency", a_frames, 0.0);
  rec.declare("norm_bounds", a_thm, 1e-12);
  rec.declare("rank_one_expansion", a_thm, 1e-9);
  rec.declare("mat_op_reconstruction", a_prop, 1e-9);
  rec.declare("mat_injective", a_prop, 1e-12);
  rec.declare("op_surjective", a_prop, 1e-9);
  rec.declare("identity_representation", a_prop, 1e-9);
  rec.declare("composition_identity", a_prop, 1e-9);
  rec.declare("representability_consistency", a_repr, 1e-9);
  rec.declare("projector_identity", a_repr, 1e-9);
  rec.declare("jectivity_agreement", a_ject, 0.0);
  rec.declare("inverse_coherence", a_ject, 1e-8);
  rec.declare("pseudo_inverse_coherence", a_pseudo, 1e-8);
  rec.declare("riesz_equivalence", a_riesz, 0.0);
  rec.declare("riesz_witness_redundant", a_riesz, 1e-10);
  rec.declare("decomposition_implications", a_decomp, 0.0);
  rec.declare("decomposition_riesz", a_decomp, 1e-10);
  rec.declare("decomposition_condition_a", a_decomp, 1e-10);
  rec.declare("decomposition_condition_b", a_decomp, 1e-10);
  rec.declare("decomposition_pair_variant", a_decomp, 1e-10);
  // Residual is 1 - normalized gap; passing means the gap is at least 1e-3.
  rec.declare("decomposition_counterexample", a_decomp, 1.0 - 1e-3);
  rec.declare("multiplier_specialization", a_mult, 1e-9);
  rec.declare("solver_dense_agreement", a_solve, 1e-8);
  rec.declare("solver_dual_invariance", a_solve, 1e-9);

  for (std::size_t e = 0; e < config.dims.size(); ++e) {
    const SpaceDims dims = config.dims[e];
    const Eigen::Index n = config.frame_size(e);
    for (int t = 0; t < config.trials; ++t) {
      const std::uint64_t s =
          detail::mix_seed(detail::mix_seed(config.seed, e), static_cast<std::uint64_t>(t));
      auto pick = [&](Eigen::Index d, int offset, std::uint64_t salt) {
        const auto kinds = detail::scenario_kinds(d, config.onb_only);
        const FrameKind k = kinds[static_cast<std::size_t>(t + offset) % kinds.size()];
        return detail::fixture_frame(k, d, n, detail::mix_seed(s, salt));
      };
      const detail::Scenario sc{dims,          n,
                                s,             pick(dims.d1, 0, 1),
                                pick(dims.d1, 1, 2), pick(dims.d2, 2, 3),
                                pick(dims.d3, 3, 4)};
      std::mt19937_64 rng(detail::mix_seed(s, 99));
      const Frame& psi = sc.psi;
      const Frame& psi2 = sc.psi2;
      const Frame& phi = sc.phi;
      const Frame& xi = sc.xi;
      const Frame psi_d = canonical_dual(psi);
      const Frame psi2_d = canonical_dual(psi2);
      const Frame phi_d = canonical_dual(phi);
      const Frame xi_d = canonical_dual(xi);

      // -- core linear algebra
      for (const Matrix& m : {detail::gaussian(dims.d2, n, rng), detail::deficient(n, dims.d1, rng)}) {
        const Matrix p = pinv(m, tol);
        rec.add("penrose_identities",
                std::max({rel_diff(m * p * m, m), rel_diff(p * m * p, p),
                          rel_diff((m * p).adjoint(), m * p), rel_diff((p * m).adjoint(), p * m)}));
        const Matrix pr = projector_onto_range(m, tol);
        rec.add("range_projector", std::max(rel_diff(pr * pr, pr), rel_diff(pr.adjoint(), pr)),
                rank_of(pr, tol) == rank_of(m, tol));
        const Matrix u = detail::random_unitary(m.rows(), rng);
        const Matrix v = detail::random_unitary(m.cols(), rng);
        rec.add("rank_unitary_invariance", 0.0,
                rank_of(u * m, tol) == rank_of(m, tol) && rank_of(m * v, tol) == rank_of(m, tol));
      }

      // -- frames
      for (const Frame* f : {&psi, &psi2, &phi, &xi}) {
        const Frame fd = canonical_dual(*f);
        const FrameBounds b = frame_bounds(*f);
        const Eigen::Index d = f->dim();
        const Matrix x = detail::gaussian(d, 8, rng);
        double ineq = 0.0;
        for (Eigen::Index k = 0; k < x.cols(); ++k) {
          const Vector xk = x.col(k) / x.col(k).norm();
          const double energy = analysis(*f, xk).squaredNorm();
          ineq = std::max({ineq, (b.lower - energy) / b.upper, (energy - b.upper) / b.upper});
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(frame_operator(*f));
        const double lo = analysis(*f, es.eigenvectors().col(0)).squaredNorm();
        const double hi = analysis(*f, es.eigenvectors().col(d - 1)).squaredNorm();
        ineq = std::max({ineq, std::abs(lo - b.lower) / b.upper, std::abs(hi - b.upper) / b.upper});
        rec.add("frame_inequality", std::max(ineq, 0.0));

        const FrameBounds bd = frame_bounds(fd);
        rec.add("dual_bounds", std::max(std::abs(bd.lower - 1.0 / b.upper) * b.upper,
                                        std::abs(bd.upper - 1.0 / b.lower) * b.lower));

        rec.add("reconstruction",
                std::max(rel_diff(f->synthesis_matrix() * fd.analysis_matrix() * x, x),
                         rel_diff(fd.synthesis_matrix() * f->analysis_matrix() * x, x)));

        const double sig = op_norm(f->synthesis_matrix());
        rec.add("adjointness",
                std::max({rel_diff(f->analysis_matrix(), f->synthesis_matrix().adjoint()),
                          std::abs(sig - op_norm(f->analysis_matrix())) / sig,
                          std::max(0.0, sig - std::sqrt(b.upper)) / sig}));

        rec.add("dual_involution", rel_diff(canonical_dual(fd).synthesis_matrix(),
                                            f->synthesis_matrix()));

        const Matrix g1 = gram(*f, fd).matrix;
        const Matrix g2 = gram(fd, *f).matrix;
        rec.add("gram_projection",
                std::max(rel_diff(g1, g2.adjoint()),
                         rel_diff(g1, projector_onto_range(f->analysis_matrix(), tol))));

        const RieszReport rr = is_riesz_basis(*f, tol);
        rec.add("riesz_report_consistency", 0.0,
                rr.consistent() && rr.is_riesz == (f->size() == f->dim()));
      }

      // -- representation maps, O: H1 -> H2 with frames (phi, psi)
      const Matrix o = detail::gaussian(dims.d2, dims.d1, rng);
      const AmbientOperator op(o);
      {
        // Mat^(row,col)(O) = C_row O D_col, written out independently.
        auto mat = [&](const Frame& row, const Frame& col) -> Matrix {
          if (config.corrupt_mat_convention)
            return row.synthesis_matrix().transpose() * o * col.synthesis_matrix();
          return row.synthesis_matrix().adjoint() * o * col.synthesis_matrix();
        };
        auto synth = [](const Matrix& m, const Frame& row, const Frame& col) -> Matrix {
          return row.synthesis_matrix() * m * col.synthesis_matrix().adjoint();
        };
        rec.add("mat_op_reconstruction",
                std::max(rel_diff(synth(mat(phi_d, psi_d), phi, psi), o),
                         rel_diff(synth(mat(phi, psi), phi_d, psi_d), o)));
        rec.add("op_surjective",
                rel_diff(operator_synth(matrix_rep(op, phi_d, psi_d), phi, psi).matrix(), o));

        const Matrix o2 = detail::gaussian(dims.d2, dims.d1, rng);
        const Matrix diff = o - o2;
        const double mat_diff =
            (matrix_rep(op, phi, psi).matrix() - matrix_rep(AmbientOperator(o2), phi, psi).matrix())
                .norm();
        const double dual_bound = std::sqrt(frame_bounds(phi_d).upper * frame_bounds(psi_d).upper);
        rec.add("mat_injective", std::max(0.0, diff.norm() / (dual_bound * mat_diff) - 1.0),
                mat_diff > 0.0);

        const double bb = std::sqrt(frame_bounds(phi).upper * frame_bounds(psi).upper);
        const Matrix m = detail::gaussian(phi.size(), psi.size(), rng);
        const double mat_ratio = op_norm(matrix_rep(op, phi, psi).matrix()) / (bb * op_norm(o));
        const double op_ratio =
            op_norm(operator_synth(CoefficientMatrix(m), phi, psi).matrix()) / (bb * op_norm(m));
        rec.add("norm_bounds", std::max({0.0, mat_ratio - 1.0, op_ratio - 1.0}));

        rec.add("rank_one_expansion",
                rel_diff(rank_one_expansion(CoefficientMatrix(m), phi, psi).matrix(),
                         operator_synth(CoefficientMatrix(m), phi, psi).matrix()));

        // Representability: positive and perturbed instances.
        const CoefficientMatrix rep = matrix_rep(op, phi, psi);
        const RepresentabilityReport pos = is_representable(rep, phi, psi, tol);
        rec.add("representability_consistency",
                pos.witness_operator
                    ? std::max(pos.witness_residual,
                               rel_diff(operator_synth(rep, phi_d, psi_d).matrix(), o))
                    : 1.0,
                pos.representable && pos.consistent());
        const Matrix pert =
            rep.matrix() +
            (Matrix::Identity(phi.size(), phi.size()) - coefficient_projector(phi)) *
                detail::gaussian(phi.size(), psi.size(), rng) +
            detail::gaussian(phi.size(), psi.size(), rng) *
                (Matrix::Identity(psi.size(), psi.size()) - coefficient_projector(psi));
        const bool perturbed = (pert - rep.matrix()).norm() > 1e-6;
        const RepresentabilityReport neg = is_representable(CoefficientMatrix(pert), phi, psi, tol);
        rec.add("representability_consistency", 0.0,
                neg.consistent() && neg.representable == !perturbed);

        for (const Matrix& mm : {rep.matrix(), pert}) {
          const RepresentabilityReport r = is_representable(CoefficientMatrix(mm), phi, psi, tol);
          const Matrix pp = projector_onto_range(phi.analysis_matrix(), tol) * mm *
                            projector_onto_range(psi.analysis_matrix(), tol);
          const double direct = (pp - mm).norm();
          rec.add("projector_identity",
                  std::abs(r.sandwich_residual - direct) / std::max(1.0, mm.norm()));
        }

        // Jectivity of Op(M) for generic and rank-deficient operators.
        for (const Matrix& oo : {o, detail::deficient(dims.d2, dims.d1, rng)}) {
          const JectivityReport j =
              op_properties_from_matrix(matrix_rep(AmbientOperator(oo), phi_d, psi_d), phi, psi, tol);
          const Eigen::Index r = rank_of(oo, tol);
          rec.add("jectivity_agreement", 0.0,
                  j.agrees_with_direct && j.injective == (r == dims.d1) &&
                      j.surjective == (r == dims.d2));
        }
      }

      // -- operators on H1: inversion, pseudo-inverse, identity, solver
      {
        const Matrix sq = detail::invertible(dims.d1, rng);
        const AmbientOperator sop(sq);
        const Matrix inv = sq.inverse();
        const CoefficientMatrix m = matrix_rep(sop, psi2_d, psi_d);
        const InverseFormulas f = inverse_formulas(m, psi2, psi, tol);
        const AmbientOperator via = invert_from_matrix(m, psi2, psi, tol);
        rec.add("inverse_coherence",
                std::max({f.max_pairwise_diff, f.identity_residual,
                          detail::unit_residual(via.matrix() * sq), rel_diff(via.matrix(), inv)}));

        const PseudoInverseFormulas pf = pseudo_inverse_formulas(sop, psi2, psi, tol);
        rec.add("pseudo_inverse_coherence", std::max(pf.max_pairwise_diff, pf.reference_diff));

        const Matrix id = matrix_rep(AmbientOperator::identity(dims.d1), psi2, psi).matrix();
        rec.add("identity_representation", rel_diff(id, psi2.analysis_matrix() * psi.synthesis_matrix()));

        const Vector g = detail::gaussian(dims.d1, 1, rng).col(0);
        const SolveReport sr = solve(sop, g, psi2, psi, tol);
        const Vector dense = sq.partialPivLu().solve(g);
        rec.add("solver_dense_agreement", (sr.solution - dense).norm() / dense.norm(),
                !sr.ill_conditioned);
        const SolveReport sd = solve(sop, g, psi2_d, psi_d, tol);
        rec.add("solver_dual_invariance", (sr.solution - sd.solution).norm() /
                                              std::max(1.0, sr.solution.norm()));

        // Multipliers: D_row diag(m) C_col against the explicit sum of rank-one terms.
        for (const Frame* row : {&psi, &psi_d}) {
          const Vector symbol = detail::gaussian(psi.size(), 1, rng).col(0);
          Matrix expected = Matrix::Zero(dims.d1, dims.d1);
          for (Eigen::Index k = 0; k < psi.size(); ++k)
            expected += symbol(k) * row->vector(k) * psi.vector(k).adjoint();
          rec.add("multiplier_specialization",
                  std::max(rel_diff(multiplier(symbol, *row, psi).matrix(), expected),
                           rel_diff(multiplier(symbol, *row, psi).matrix(),
                                    operator_synth(CoefficientMatrix(Matrix(symbol.asDiagonal())),
                                                   *row, psi)
                                        .matrix())));
        }

        // Bijectivity of M versus Op(M).
        const Frame r1 = detail::fixture_frame(FrameKind::perturbed_riesz, dims.d1, n,
                                               detail::mix_seed(s, 11));
        const Frame r2 = detail::fixture_frame(FrameKind::perturbed_riesz, dims.d1, n,
                                               detail::mix_seed(s, 12));
        const RieszEquivalenceReport pos =
            riesz_equivalence_check(r1, r2, tol, 4, detail::mix_seed(s, 13));
        rec.add("riesz_equivalence", 0.0,
                pos.both_riesz && pos.confirmed(tol) && pos.trials_run == 4 &&
                    pos.singular_trials == 2);
        const Frame q1 = detail::redundant_frame(dims.d1, n, detail::mix_seed(s, 14));
        const RieszEquivalenceReport negr = riesz_equivalence_check(q1, psi, tol, 0, 0);
        rec.add("riesz_witness_redundant", negr.witness_identity_residual,
                !negr.both_riesz && negr.confirmed(tol) && negr.witness_rank == dims.d1);
      }

      // -- composition and decomposition, O: H3 -> H2, P: H1 -> H3
      {
        const AmbientOperator o32(detail::gaussian(dims.d2, dims.d3, rng));
        const AmbientOperator p13(detail::gaussian(dims.d3, dims.d1, rng));
        const Matrix product = matrix_rep(o32, phi, xi).matrix() * matrix_rep(p13, xi_d, psi).matrix();
        const Matrix direct =
            matrix_rep(AmbientOperator(o32.matrix() * p13.matrix()), phi, psi).matrix();
        rec.add("composition_identity", rel_diff(product, direct));

        auto chain = [&](const Frame& mid, const Matrix& m1, const Matrix& m2) {
          return decompose_check(CoefficientMatrix(m1), CoefficientMatrix(m2), phi, mid, psi, tol);
        };
        auto independent_gap = [&](const Frame& mid, const Matrix& m1, const Matrix& m2) {
          const Matrix lhs = phi.synthesis_matrix() * m1 * m2 * psi.analysis_matrix();
          const Matrix rhs = phi.synthesis_matrix() * m1 * mid.analysis_matrix() *
                             canonical_dual(mid).synthesis_matrix() * m2 * psi.analysis_matrix();
          return detail::frobenius_rel(lhs, rhs);
        };

        {
          const Matrix m1 = detail::gaussian(phi.size(), xi.size(), rng);
          const Matrix m2 = detail::gaussian(xi.size(), psi.size(), rng);
          const DecompositionReport r = chain(xi, m1, m2);
          rec.add("decomposition_implications", 0.0,
                  r.implications_hold() &&
                      r.equality_holds == (independent_gap(xi, m1, m2) <= tol.eq_rel) &&
                      r.xi_is_riesz == !xi.is_redundant());
        }

        const Frame riesz = detail::fixture_frame(FrameKind::perturbed_riesz, dims.d3, n,
                                                  detail::mix_seed(s, 21));
        {
          const Matrix m1 = detail::gaussian(phi.size(), riesz.size(), rng);
          const Matrix m2 = detail::gaussian(riesz.size(), psi.size(), rng);
          const DecompositionReport r = chain(riesz, m1, m2);
          rec.add("decomposition_riesz", std::max(r.normalized_gap, independent_gap(riesz, m1, m2)),
                  r.xi_is_riesz && r.equality_holds);
        }

        const Frame red = xi.is_redundant()
                              ? xi
                              : detail::redundant_frame(dims.d3, n, detail::mix_seed(s, 22));
        const Frame red_d = canonical_dual(red);
        {
          const auto [m1, m2] =
              build_decomposition_counterexample(phi, red, psi, detail::mix_seed(s, 23), tol);
          const DecompositionReport r = chain(red, m1.matrix(), m2.matrix());
          rec.add("decomposition_counterexample", 1.0 - r.normalized_gap,
                  !r.xi_is_riesz && !r.equality_holds && !r.cond_a && !r.cond_b);
        }
        {
          // range(M2 C_psi) inside range(C_mid).
          const Matrix m1 = detail::gaussian(phi.size(), red.size(), rng);
          const Matrix m2 = red.analysis_matrix() * detail::gaussian(dims.d3, dims.d1, rng) *
                            psi.synthesis_matrix();
          const DecompositionReport r = chain(red, m1, m2);
          rec.add("decomposition_condition_a", std::max(r.normalized_gap, independent_gap(red, m1, m2)),
                  r.cond_a && r.equality_holds);
        }
        {
          // ker(D_phi M1)^perp inside range(C_mid).
          const Matrix m1 = phi.analysis_matrix() * detail::gaussian(dims.d2, dims.d3, rng) *
                            red.synthesis_matrix();
          const Matrix m2 = detail::gaussian(red.size(), psi.size(), rng);
          const DecompositionReport r = chain(red, m1, m2);
          rec.add("decomposition_condition_b", std::max(r.normalized_gap, independent_gap(red, m1, m2)),
                  r.cond_b && r.equality_holds);
        }
        {
          // A non-canonical dual of the redundant middle frame:
          // D_alt = D_dual + Y (I - Pi), so D_alt C_mid = I.
          const Matrix proj = coefficient_projector(red);
          const Matrix alt_synth =
              red_d.synthesis_matrix() +
              detail::gaussian(dims.d3, red.size(), rng) *
                  (Matrix::Identity(red.size(), red.size()) - proj);
          const Frame alt = Frame::from_columns(alt_synth, tol);
          const Matrix m1a = detail::gaussian(phi.size(), red.size(), rng);
          const Matrix m2a = red.analysis_matrix() * detail::gaussian(dims.d3, dims.d1, rng) *
                             psi.synthesis_matrix();
          const DecompositionReport ra = decompose_check_pair(
              CoefficientMatrix(m1a), CoefficientMatrix(m2a), phi, red, alt, psi, tol);
          const Matrix m1b = phi.analysis_matrix() * detail::gaussian(dims.d2, dims.d3, rng) *
                             alt.synthesis_matrix();
          const Matrix m2b = detail::gaussian(red.size(), psi.size(), rng);
          const DecompositionReport rb = decompose_check_pair(
              CoefficientMatrix(m1b), CoefficientMatrix(m2b), phi, red, alt, psi, tol);
          const Frame riesz_d = canonical_dual(riesz);
          const Matrix m1c = detail::gaussian(phi.size(), riesz.size(), rng);
          const Matrix m2c = detail::gaussian(riesz.size(), psi.size(), rng);
          const DecompositionReport rc = decompose_check_pair(
              CoefficientMatrix(m1c), CoefficientMatrix(m2c), phi, riesz, riesz_d, psi, tol);
          rec.add("decomposition_pair_variant",
                  std::max({ra.normalized_gap, rb.normalized_gap, rc.normalized_gap}),
                  ra.cond_a && ra.equality_holds && rb.cond_b && rb.equality_holds &&
                      rc.xi_is_riesz && rc.equality_holds && ra.implications_hold() &&
                      rb.implications_hold());
        }
      }
    }
  }

  SuiteReport report;
  report.seed = config.seed;
  report.trials = config.trials;
  report.checks = rec.sorted();
  return report;
}

inline io::Json to_json(const SuiteReport& r) {
  io::Json checks = io::Json::array();
  for (const CheckRecord& c : r.checks)
    checks.push_back({{"check_name", c.name},
                      {"anchor", c.anchor},
                      {"fixtures_run", c.fixtures_run},
                      {"max_residual", c.max_residual},
                      {"limit", c.limit},
                      {"verdict", c.verdict ? "pass" : "fail"}});
  return {{"seed", r.seed},
          {"trials", r.trials},
          {"all_passed", r.all_passed()},
          {"checks", std::move(checks)}};
}

inline std::string to_text(const SuiteReport& r) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-30s %8s %12s %12s  %s\n", "check", "fixtures",
                "max_resid", "limit", "verdict");
  out += line;
  for (const CheckRecord& c : r.checks) {
    std::snprintf(line, sizeof line, "%-30s %8d %12.3e %12.3e  %s\n", c.name.c_str(),
                  c.fixtures_run, c.max_residual, c.limit, c.verdict ? "PASS" : "FAIL");
    out += line;
  }
  const auto failed = std::count_if(r.checks.begin(), r.checks.end(),
                                    [](const CheckRecord& c) { return !c.verdict; });
  std::snprintf(line, sizeof line, "%zu checks, %td failed\n", r.checks.size(), failed);
  out += line;
  return out;
}

}  // namespace frameop
