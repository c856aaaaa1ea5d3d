#include <set>

#include <gtest/gtest.h>

#include "frameop/verify.hpp"

namespace frameop {
namespace {

SuiteConfig small_config() {
  SuiteConfig c;
  c.seed = 7;
  c.dims = {{2, 2, 2}};
  c.frame_sizes = {3};
  c.trials = 10;
  return c;
}

TEST(Verify, SmallConfigPasses) {
  const SuiteReport r = run_suite(small_config());
  EXPECT_TRUE(r.all_passed()) << to_text(r);
  for (const auto& c : r.checks) {
    EXPECT_GT(c.fixtures_run, 0) << c.name;
    if (c.name != "decomposition_counterexample") {
      EXPECT_LT(c.max_residual, 1e-8) << c.name;
    }
  }
}

TEST(Verify, DefaultConfigPasses) {
  SuiteConfig c;
  c.seed = 7;
  const SuiteReport r = run_suite(c);
  EXPECT_TRUE(r.all_passed()) << to_text(r);
}

TEST(Verify, OnbOnlyPasses) {
  SuiteConfig c = small_config();
  c.trials = 1;
  c.onb_only = true;
  EXPECT_TRUE(run_suite(c).all_passed());
}

TEST(Verify, CorruptedConventionIsDetected) {
  SuiteConfig c = small_config();
  c.corrupt_mat_convention = true;
  const SuiteReport r = run_suite(c);
  EXPECT_FALSE(r.all_passed());
  ASSERT_NE(r.find("mat_op_reconstruction"), nullptr);
  EXPECT_FALSE(r.find("mat_op_reconstruction")->verdict);
  for (const auto& check : r.checks)
    if (check.name != "mat_op_reconstruction") {
      EXPECT_TRUE(check.verdict) << check.name;
    }
}

TEST(Verify, SameSeedGivesIdenticalReport) {
  const std::string a = to_json(run_suite(small_config())).dump(2);
  const std::string b = to_json(run_suite(small_config())).dump(2);
  EXPECT_EQ(a, b);
  SuiteConfig other = small_config();
  other.seed = 8;
  EXPECT_NE(a, to_json(run_suite(other)).dump(2));
}

TEST(Verify, ChecksAreSortedUniqueAndAnchored) {
  const SuiteReport r = run_suite(small_config());
  const auto& anchors = suite_anchors();
  std::set<std::string> names;
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    EXPECT_TRUE(names.insert(r.checks[i].name).second);
    if (i > 0) {
      EXPECT_LT(r.checks[i - 1].name, r.checks[i].name);
    }
    EXPECT_NE(std::find(anchors.begin(), anchors.end(), r.checks[i].anchor), anchors.end());
  }
  for (const char* required :
       {"frame_inequality", "dual_bounds", "reconstruction", "adjointness", "dual_involution",
        "gram_projection", "riesz_report_consistency", "mat_op_reconstruction", "mat_injective",
        "op_surjective", "norm_bounds", "representability_consistency", "projector_identity",
        "inverse_coherence", "pseudo_inverse_coherence", "composition_identity",
        "decomposition_implications", "decomposition_riesz", "decomposition_counterexample",
        "decomposition_condition_a", "decomposition_condition_b", "decomposition_pair_variant",
        "riesz_equivalence", "riesz_witness_redundant", "identity_representation",
        "multiplier_specialization", "jectivity_agreement", "solver_dense_agreement",
        "solver_dual_invariance"})
    EXPECT_EQ(names.count(required), 1u) << required;
}

TEST(Verify, InvalidConfigRejected) {
  SuiteConfig c = small_config();
  c.trials = 0;
  EXPECT_THROW(run_suite(c), Error);
  c = small_config();
  c.frame_sizes = {1};
  EXPECT_THROW(run_suite(c), Error);
  c = small_config();
  c.dims = {{0, 2, 2}};
  EXPECT_THROW(run_suite(c), Error);
}

TEST(Verify, TextTableListsEveryCheck) {
  const SuiteReport r = run_suite(small_config());
  const std::string text = to_text(r);
  for (const auto& c : r.checks) EXPECT_NE(text.find(c.name), std::string::npos);
  EXPECT_NE(text.find("0 failed"), std::string::npos);
}

}  // namespace
}  // namespace frameop
