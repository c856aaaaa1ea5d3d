#include <gtest/gtest.h>

#include <cmath>

#include "frameop/frame.hpp"
#include "frameop/generators.hpp"
#include "test_support.hpp"

namespace frameop {
namespace {

using testing::MatrixNear;
using testing::onb;
using testing::psi1;
using testing::random_frame;
using testing::real_matrix;
using testing::real_vector;

Frame mercedes() { return gen_frame(FrameKind::mercedes, {}, 0); }

// Sum of psi_k psi_k^*, accumulated vector by vector.
Matrix outer_product_sum(const Frame& f) {
  Matrix s = Matrix::Zero(f.dim(), f.dim());
  for (Eigen::Index k = 0; k < f.size(); ++k) {
    const Vector v = f.vector(k);
    for (Eigen::Index i = 0; i < f.dim(); ++i)
      for (Eigen::Index j = 0; j < f.dim(); ++j) s(i, j) += v(i) * std::conj(v(j));
  }
  return s;
}

std::vector<Frame> named_fixtures() {
  std::vector<Frame> out{onb(3), psi1(), mercedes()};
  GeneratorParams p;
  p.dim = 4;
  p.count = 7;
  out.push_back(gen_frame(FrameKind::harmonic, p, 0));
  p.time_step = 2;
  out.push_back(gen_frame(FrameKind::gabor, p, 0));
  out.push_back(gen_frame(FrameKind::union_onb, p, 3));
  out.push_back(gen_frame(FrameKind::perturbed_riesz, p, 4));
  for (std::uint64_t s = 0; s < 5; ++s) out.push_back(random_frame(3, 3 + s, 50 + s));
  return out;
}

TEST(MakeFrame, AcceptsSpanningFamilies) {
  const Frame f = Frame::make(2, {real_vector({1, 0}), real_vector({0, 1})});
  EXPECT_EQ(f.dim(), 2);
  EXPECT_EQ(f.size(), 2);
  const Frame g = Frame::make(2, {real_vector({1, 0}), real_vector({0, 1}), real_vector({1, 1})});
  EXPECT_EQ(g.size(), 3);
  EXPECT_TRUE(g.is_redundant());
}

TEST(MakeFrame, RejectsNonSpanningFamilies) {
  try {
    Frame::make(2, {real_vector({1, 0}), real_vector({2, 0})});
    FAIL() << "expected NotAFrame";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_a_frame);
  }
}

TEST(MakeFrame, RejectsWrongLengthAndNonFinite) {
  try {
    Frame::make(2, {real_vector({1, 0, 0})});
    FAIL() << "expected DimensionMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dimension_mismatch);
  }
  EXPECT_THROW(Frame::make(1, {real_vector({std::nan("")})}), Error);
  EXPECT_THROW(Frame::make(2, {}), Error);
}

TEST(FrameBounds, Examples) {
  FrameBounds b = frame_bounds(onb(2));
  EXPECT_NEAR(b.lower, 1.0, 1e-15);
  EXPECT_NEAR(b.upper, 1.0, 1e-15);
  b = frame_bounds(psi1());
  EXPECT_NEAR(b.lower, 1.0, 1e-14);
  EXPECT_NEAR(b.upper, 3.0, 1e-14);
  b = frame_bounds(mercedes());
  EXPECT_NEAR(b.lower, 1.5, 1e-14);
  EXPECT_NEAR(b.upper, 1.5, 1e-14);
}

TEST(AnalysisSynthesis, Examples) {
  EXPECT_TRUE(MatrixNear(analysis(onb(2), real_vector({3, 4})), real_vector({3, 4}), 0.0));
  EXPECT_TRUE(MatrixNear(synthesis(onb(2), real_vector({3, 4})), real_vector({3, 4}), 0.0));
  EXPECT_TRUE(MatrixNear(analysis(psi1(), real_vector({1, 0})), real_vector({1, 0, 1}), 0.0));
  EXPECT_TRUE(MatrixNear(synthesis(psi1(), real_vector({1, 1, -1})), real_vector({0, 0}), 0.0));
}

TEST(AnalysisSynthesis, InnerProductIsLinearInFirstArgument) {
  // <x, psi> with psi = (i, 0): x = (1, 0) gives conj(i) = -i.
  const Frame f = Frame::from_columns((Matrix(1, 1) << Complex(0, 1)).finished());
  EXPECT_EQ(analysis(f, real_vector({1}))(0), Complex(0, -1));
}

TEST(AnalysisSynthesis, DimensionMismatch) {
  EXPECT_THROW(analysis(psi1(), real_vector({1, 2, 3})), Error);
  EXPECT_THROW(synthesis(psi1(), real_vector({1, 2})), Error);
}

TEST(FrameOperator, Examples) {
  EXPECT_TRUE(MatrixNear(frame_operator(onb(3)), Matrix::Identity(3, 3), 0.0));
  EXPECT_TRUE(MatrixNear(frame_operator(psi1()), real_matrix({{2, 1}, {1, 2}}), 0.0));
  EXPECT_TRUE(MatrixNear(frame_operator(mercedes()), 1.5 * Matrix::Identity(2, 2), 1e-15));
}

TEST(FrameOperator, MatchesOuterProductSum) {
  for (const Frame& f : named_fixtures())
    EXPECT_TRUE(MatrixNear(frame_operator(f), outer_product_sum(f), 1e-13));
}

TEST(CanonicalDual, Examples) {
  EXPECT_TRUE(MatrixNear(canonical_dual(onb(2)).synthesis_matrix(), Matrix::Identity(2, 2),
                         1e-15));
  const Frame m = mercedes();
  EXPECT_TRUE(MatrixNear(canonical_dual(m).synthesis_matrix(),
                         (2.0 / 3.0) * m.synthesis_matrix(), 1e-15));
  const Matrix expected = real_matrix({{2.0 / 3, -1.0 / 3, 1.0 / 3}, {-1.0 / 3, 2.0 / 3, 1.0 / 3}});
  EXPECT_TRUE(MatrixNear(canonical_dual(psi1()).synthesis_matrix(), expected, 1e-15));
}

TEST(Gram, Examples) {
  EXPECT_TRUE(MatrixNear(gram(onb(2), onb(2)).matrix, Matrix::Identity(2, 2), 0.0));
  EXPECT_TRUE(MatrixNear(gram(psi1(), psi1()).matrix,
                         real_matrix({{1, 0, 1}, {0, 1, 1}, {1, 1, 2}}), 0.0));
  const Matrix p = gram(psi1(), canonical_dual(psi1())).matrix;
  EXPECT_TRUE(MatrixNear(p, projector_onto_range(psi1().analysis_matrix()), 1e-14));
  EXPECT_TRUE(MatrixNear(p * p, p, 1e-14));
  EXPECT_TRUE(MatrixNear(p.adjoint(), p, 1e-14));
  EXPECT_EQ(rank_of(p), 2);
}

TEST(Gram, EntriesAreInnerProducts) {
  const Frame a = random_frame(3, 4, 1);
  const Frame b = random_frame(3, 5, 2);
  const Matrix g = gram(a, b).matrix;
  for (Eigen::Index j = 0; j < a.size(); ++j)
    for (Eigen::Index m = 0; m < b.size(); ++m)
      EXPECT_NEAR(std::abs(g(j, m) - a.vector(j).dot(b.vector(m))), 0.0, 1e-14);
  EXPECT_THROW(gram(a, psi1()), Error);
}

TEST(CoefficientProjector, Examples) {
  EXPECT_TRUE(MatrixNear(coefficient_projector(onb(3)), Matrix::Identity(3, 3), 1e-15));
  const Matrix p = coefficient_projector(psi1());
  const Vector kernel = real_vector({1, 1, -1});
  EXPECT_LE((p * kernel).norm(), 1e-14);
  EXPECT_EQ(rank_of(p), 2);
  EXPECT_TRUE(MatrixNear(coefficient_projector(canonical_dual(psi1())), p, 1e-14));
}

TEST(RieszBasis, Examples) {
  RieszReport r = is_riesz_basis(onb(2));
  EXPECT_TRUE(r.is_riesz);
  EXPECT_TRUE(r.consistent());
  r = is_riesz_basis(psi1());
  EXPECT_FALSE(r.is_riesz);
  EXPECT_FALSE(r.cond_synthesis_injective);
  EXPECT_FALSE(r.cond_analysis_surjective);
  EXPECT_FALSE(r.cond_biorthogonal_dual);
  r = is_riesz_basis(Frame::from_columns(real_matrix({{1, 1}, {0, 1}})));
  EXPECT_TRUE(r.is_riesz);
  EXPECT_TRUE(r.consistent());
}

TEST(RieszBasis, FlagsAgreeAndMatchSize) {
  for (const Frame& f : named_fixtures()) {
    const RieszReport r = is_riesz_basis(f);
    EXPECT_TRUE(r.consistent());
    EXPECT_EQ(r.is_riesz, f.size() == f.dim());
  }
}

// Properties over random and named frames.

TEST(FrameProperties, FrameInequality) {
  std::mt19937_64 rng(3);
  for (const Frame& f : named_fixtures()) {
    const FrameBounds b = frame_bounds(f);
    for (int i = 0; i < 100; ++i) {
      Vector x = detail::complex_gaussian(f.dim(), 1, rng).col(0);
      x /= x.norm();
      const double energy = analysis(f, x).squaredNorm();
      EXPECT_GE(energy, b.lower * (1 - 1e-12));
      EXPECT_LE(energy, b.upper * (1 + 1e-12));
    }
    // Extremes are attained at eigenvectors of S.
    Eigen::SelfAdjointEigenSolver<Matrix> eig(frame_operator(f));
    const Vector lo = eig.eigenvectors().col(0);
    const Vector hi = eig.eigenvectors().col(f.dim() - 1);
    EXPECT_NEAR(analysis(f, lo).squaredNorm(), b.lower, 1e-9 * b.upper);
    EXPECT_NEAR(analysis(f, hi).squaredNorm(), b.upper, 1e-9 * b.upper);
  }
}

TEST(FrameProperties, DualBoundsAndReconstruction) {
  std::mt19937_64 rng(4);
  for (const Frame& f : named_fixtures()) {
    const FrameBounds b = frame_bounds(f);
    const Frame dual = canonical_dual(f);
    const FrameBounds bd = frame_bounds(dual);
    EXPECT_NEAR(bd.lower, 1.0 / b.upper, 1e-9);
    EXPECT_NEAR(bd.upper, 1.0 / b.lower, 1e-9);
    const Vector x = detail::complex_gaussian(f.dim(), 1, rng).col(0);
    EXPECT_TRUE(MatrixNear(synthesis(f, analysis(dual, x)), x, 1e-9));
    EXPECT_TRUE(MatrixNear(synthesis(dual, analysis(f, x)), x, 1e-9));
  }
}

TEST(FrameProperties, AdjointnessAndNormBound) {
  for (const Frame& f : named_fixtures()) {
    EXPECT_TRUE(MatrixNear(f.analysis_matrix(), f.synthesis_matrix().adjoint(), 0.0));
    const double nd = op_norm(f.synthesis_matrix());
    EXPECT_NEAR(nd, op_norm(f.analysis_matrix()), 1e-12 * nd);
    EXPECT_LE(nd, std::sqrt(frame_bounds(f).upper) * (1 + 1e-12));
  }
}

TEST(FrameProperties, DualIsAnInvolution) {
  for (const Frame& f : named_fixtures())
    EXPECT_TRUE(MatrixNear(canonical_dual(canonical_dual(f)).synthesis_matrix(),
                           f.synthesis_matrix(), 1e-9));
}

TEST(FrameProperties, GramWithDualIsTheRangeProjector) {
  for (const Frame& f : named_fixtures()) {
    const Frame dual = canonical_dual(f);
    const Matrix p = gram(f, dual).matrix;
    EXPECT_TRUE(MatrixNear(gram(dual, f).matrix.adjoint(), p, 1e-9));
    EXPECT_TRUE(MatrixNear(p, projector_onto_range(f.analysis_matrix()), 1e-9));
    EXPECT_TRUE(MatrixNear(gram(dual, f).matrix, p, 1e-9));
  }
}

}  // namespace
}  // namespace frameop
