#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli_runner.hpp"
#include "frameop/frameop.hpp"
#include "test_support.hpp"

namespace frameop {
namespace {

using testing::cli;
using testing::run_command;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("frameop_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name)) << content;
  }

  std::filesystem::path dir_;
};

TEST_F(Cli, MercedesBounds) {
  ASSERT_EQ(run_command(cli("gen --kind mercedes --out " + path("f.json"))).exit_code, 0);
  const auto r = run_command(cli("bounds " + path("f.json")));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "A=1.5 B=1.5\n");
}

TEST_F(Cli, RepresentIdentityGivesGram) {
  write("f.json", io::frame_to_json(testing::psi1()).dump());
  write("id2.json", io::matrix_to_json(Matrix::Identity(2, 2)).dump());
  ASSERT_EQ(run_command(cli("represent --op " + path("id2.json") + " --row " + path("f.json") +
                            " --col " + path("f.json") + " --out " + path("m.json")))
                .exit_code,
            0);
  const Matrix m = io::matrix_from_json(io::read_json_file(path("m.json")));
  EXPECT_TRUE(testing::MatrixNear(m, testing::real_matrix({{1, 0, 1}, {0, 1, 1}, {1, 1, 2}}), 0.0));
}

TEST_F(Cli, SolveFrameOperatorSystem) {
  write("f.json", io::frame_to_json(testing::psi1()).dump());
  write("s.json", io::matrix_to_json(testing::real_matrix({{2, 1}, {1, 2}})).dump());
  write("g.json", "[[1,0],[1,0]]");
  const auto r = run_command(cli("solve --op " + path("s.json") + " --rhs " + path("g.json") +
                                 " --row " + path("f.json") + " --col " + path("f.json")));
  ASSERT_EQ(r.exit_code, 0);
  const io::Json j = io::parse(r.out);
  EXPECT_TRUE(testing::MatrixNear(io::vector_from_json(j["solution"]),
                                  testing::real_vector({1.0 / 3, 1.0 / 3}), 1e-14));
}

TEST_F(Cli, VerifyPassesAndIsDeterministic) {
  const auto a = run_command(cli("verify --seed 7 --trials 10"));
  const auto b = run_command(cli("verify --seed 7 --trials 10"));
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  const io::Json j = io::parse(a.out);
  EXPECT_EQ(j["all_passed"], true);
  for (const auto& c : j["checks"]) EXPECT_EQ(c["verdict"], "pass") << c["check_name"];
}

TEST_F(Cli, VerifyCorruptedConventionFails) {
  EXPECT_EQ(run_command(cli("--seed 7 verify --corrupt-mat")).exit_code, 1);
}

TEST_F(Cli, GeneratedFilesRoundTrip) {
  struct Case {
    std::string args;
    FrameKind kind;
    GeneratorParams params;
  };
  GeneratorParams p3;
  p3.dim = 3;
  p3.count = 7;
  GeneratorParams gab;
  gab.dim = 4;
  gab.time_step = 2;
  gab.freq_step = 1;
  GeneratorParams mer;
  GeneratorParams uni;
  uni.dim = 3;
  uni.copies = 3;
  GeneratorParams pr;
  pr.dim = 3;
  const std::vector<Case> cases{
      {"--kind random --dim 3 --count 7", FrameKind::random, p3},
      {"--kind harmonic --dim 3 --count 7", FrameKind::harmonic, p3},
      {"--kind gabor --dim 4 --time-step 2 --freq-step 1", FrameKind::gabor, gab},
      {"--kind mercedes", FrameKind::mercedes, mer},
      {"--kind union_onb --dim 3 --copies 3", FrameKind::union_onb, uni},
      {"--kind perturbed_riesz --dim 3", FrameKind::perturbed_riesz, pr},
  };
  for (const auto& c : cases) {
    ASSERT_EQ(run_command(cli("--seed 5 gen " + c.args + " --out " + path("g.json"))).exit_code, 0)
        << c.args;
    const Frame back = io::frame_from_json(io::read_json_file(path("g.json")));
    EXPECT_TRUE(back == gen_frame(c.kind, c.params, 5)) << c.args;
    // Writing the parsed frame again reproduces the file byte for byte.
    std::ifstream in(path("g.json"));
    std::stringstream original;
    original << in.rdbuf();
    EXPECT_EQ(io::frame_to_json(back).dump(2) + "\n", original.str()) << c.args;
  }
}

TEST_F(Cli, ExitCodes) {
  write("bad.json", "{not json");
  write("thin.json", R"({"dim":2,"vectors":[[[1,0],[0,0]]]})");
  write("f2.json", io::frame_to_json(testing::psi1()).dump());
  write("f3.json", io::frame_to_json(testing::onb(3)).dump());
  write("id2.json", io::matrix_to_json(Matrix::Identity(2, 2)).dump());
  write("sing.json", io::matrix_to_json(testing::real_matrix({{1, 1}, {1, 1}})).dump());
  write("g.json", "[[1,0],[0,0]]");
  EXPECT_EQ(run_command(cli("bounds " + path("bad.json"))).exit_code, 2);
  EXPECT_EQ(run_command(cli("bounds " + path("missing.json"))).exit_code, 2);
  EXPECT_EQ(run_command(cli("--no-such-flag bounds x")).exit_code, 2);
  EXPECT_EQ(run_command(cli("represent --op " + path("id2.json") + " --row " + path("f2.json") +
                            " --col " + path("f3.json")))
                .exit_code,
            3);
  EXPECT_EQ(run_command(cli("bounds " + path("thin.json"))).exit_code, 4);
  EXPECT_EQ(run_command(cli("solve --op " + path("sing.json") + " --rhs " + path("g.json") +
                            " --row " + path("f2.json") + " --col " + path("f2.json")))
                .exit_code,
            5);
  EXPECT_EQ(run_command(cli("gen --kind nonsense")).exit_code, 1);
  const auto help = run_command(cli("--help"));
  EXPECT_NE(help.out.find("5  operator or coefficient map is not bijective"), std::string::npos);
}

TEST_F(Cli, InvertAndCheckRepresentable) {
  const Frame f = testing::random_frame(2, 4, 3);
  const Matrix o = testing::random_matrix(2, 2, 8);
  write("f.json", io::frame_to_json(f).dump());
  write("m.json", io::matrix_to_json(matrix_rep(AmbientOperator(o), canonical_dual(f),
                                                canonical_dual(f)).matrix())
                      .dump());
  ASSERT_EQ(run_command(cli("invert --matrix " + path("m.json") + " --row " + path("f.json") +
                            " --col " + path("f.json") + " --out " + path("inv.json")))
                .exit_code,
            0);
  EXPECT_TRUE(testing::MatrixNear(io::matrix_from_json(io::read_json_file(path("inv.json"))),
                                  o.inverse(), 1e-10));
  const auto r = run_command(cli("check-representable --matrix " + path("m.json") + " --row " +
                                 path("f.json") + " --col " + path("f.json")));
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(io::parse(r.out)["representable"], true);
}

TEST(CliArchitecture, AdapterHasNoNumericalCode) {
  std::ifstream in(FRAMEOP_CLI_SOURCE);
  ASSERT_TRUE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string src = buf.str();
  for (const char* banned : {"Eigen", "adjoint(", "inverse(", "pinv(", "svd", ".matrix() *",
                             "synthesis_matrix", "analysis_matrix", "<cmath>"})
    EXPECT_EQ(src.find(banned), std::string::npos) << banned;
}

}  // namespace
}  // namespace frameop
