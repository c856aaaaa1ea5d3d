// Command-line front end for the frameop library.

#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frameop/frameop.hpp"

namespace {

using frameop::ErrorCode;
namespace io = frameop::io;

constexpr int kExitOther = 1;
constexpr int kExitParse = 2;
constexpr int kExitDimension = 3;
constexpr int kExitNotAFrame = 4;
constexpr int kExitNotBijective = 5;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return kExitParse;
    case ErrorCode::dimension_mismatch: return kExitDimension;
    case ErrorCode::not_a_frame: return kExitNotAFrame;
    case ErrorCode::not_bijective: return kExitNotBijective;
    default: return kExitOther;
  }
}

const char* kExitCodesHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  1  other failure (including failed verify checks)\n"
    "  2  parse error (malformed JSON or command line)\n"
    "  3  dimension mismatch\n"
    "  4  input is not a frame\n"
    "  5  operator or coefficient map is not bijective\n";

struct Options {
  std::uint64_t seed = 0;
  double rank_rel = frameop::Tolerance{}.rank_rel;
  double eq_rel = frameop::Tolerance{}.eq_rel;
  std::string out;

  frameop::Tolerance tolerance() const {
    frameop::Tolerance t{rank_rel, eq_rel};
    t.validate();
    return t;
  }
};

void emit(const Options& opt, const io::Json& j) {
  if (opt.out.empty())
    std::cout << j.dump(2) << "\n";
  else
    io::write_json_file(opt.out, j);
}

frameop::Frame load_frame(const std::string& path, const Options& opt) {
  return io::frame_from_json(io::read_json_file(path), opt.tolerance());
}

frameop::CoefficientMatrix load_coefficients(const std::string& path) {
  return frameop::CoefficientMatrix(io::matrix_from_json(io::read_json_file(path)));
}

frameop::AmbientOperator load_operator(const std::string& path) {
  return frameop::AmbientOperator(io::matrix_from_json(io::read_json_file(path)));
}

/// "2,2,2;3,3,3" -> [(2,2,2), (3,3,3)].
std::vector<frameop::SpaceDims> parse_dims(const std::string& text) {
  std::vector<frameop::SpaceDims> dims;
  std::stringstream entries(text);
  std::string entry;
  while (std::getline(entries, entry, ';')) {
    frameop::SpaceDims s;
    char c1 = 0, c2 = 0;
    std::stringstream in(entry);
    if (!(in >> s.d1 >> c1 >> s.d2 >> c2 >> s.d3) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof())
      throw frameop::Error(ErrorCode::parse_error, "bad --dims entry \"" + entry + "\"");
    dims.push_back(s);
  }
  if (dims.empty()) throw frameop::Error(ErrorCode::parse_error, "empty --dims");
  return dims;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frame representations of operators: generate frames, represent, invert and solve."};
  app.footer(kExitCodesHelp);
  app.require_subcommand(1, 1);
  app.fallthrough();

  Options opt;
  app.add_option("--seed", opt.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--rank-rel", opt.rank_rel, "Relative singular-value cutoff")->capture_default_str();
  app.add_option("--eq-rel", opt.eq_rel, "Relative Frobenius equality threshold")
      ->capture_default_str();

  std::function<int()> action;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a frame");
  std::string kind_name;
  frameop::GeneratorParams params;
  gen->add_option("--kind", kind_name,
                  "onb, random, harmonic, gabor, mercedes, union_onb or perturbed_riesz")
      ->required();
  gen->add_option("--dim", params.dim, "Ambient dimension")->capture_default_str();
  gen->add_option("--count", params.count, "Number of vectors (random, harmonic)");
  gen->add_option("--time-step", params.time_step, "Gabor time shift step")->capture_default_str();
  gen->add_option("--freq-step", params.freq_step, "Gabor modulation step")->capture_default_str();
  gen->add_option("--copies", params.copies, "Bases in union_onb")->capture_default_str();
  gen->add_option("--perturbation", params.perturbation, "Size of the perturbed_riesz perturbation")
      ->capture_default_str();
  gen->add_option("--out", opt.out, "Output file (stdout if omitted)");
  gen->callback([&] {
    action = [&] {
      const auto kind = frameop::parse_frame_kind(kind_name);
      if (!kind) throw frameop::Error(ErrorCode::bad_generator_params, "unknown kind " + kind_name);
      if (params.count == 0 && *kind == frameop::FrameKind::harmonic) params.count = params.dim;
      if (*kind == frameop::FrameKind::mercedes) params.dim = 2;
      emit(opt, io::frame_to_json(frameop::gen_frame(*kind, params, opt.seed)));
      return 0;
    };
  });

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Print the optimal frame bounds A and B");
  std::string frame_path;
  bounds->add_option("frame", frame_path, "Frame file")->required();
  bounds->callback([&] {
    action = [&] {
      const auto b = frameop::frame_bounds(load_frame(frame_path, opt));
      std::printf("A=%.10g B=%.10g\n", b.lower, b.upper);
      return 0;
    };
  });

  // dual
  auto* dual = app.add_subcommand("dual", "Write the canonical dual frame");
  dual->add_option("frame", frame_path, "Frame file")->required();
  dual->add_option("--out", opt.out, "Output file (stdout if omitted)");
  dual->callback([&] {
    action = [&] {
      emit(opt, io::frame_to_json(frameop::canonical_dual(load_frame(frame_path, opt))));
      return 0;
    };
  });

  // gram
  std::string left_path, right_path;
  auto* gram = app.add_subcommand("gram", "Write the cross Gram matrix G_{left,right}");
  gram->add_option("--left", left_path, "Left frame file")->required();
  gram->add_option("--right", right_path, "Right frame file")->required();
  gram->add_option("--out", opt.out, "Output file (stdout if omitted)");
  gram->callback([&] {
    action = [&] {
      const auto g = frameop::gram(load_frame(left_path, opt), load_frame(right_path, opt));
      emit(opt, io::matrix_to_json(g.matrix));
      return 0;
    };
  });

  std::string op_path, matrix_path, row_path, col_path, rhs_path;
  auto add_frames = [&](CLI::App* sub) {
    sub->add_option("--row", row_path, "Codomain (row) frame file")->required();
    sub->add_option("--col", col_path, "Domain (column) frame file")->required();
    sub->add_option("--out", opt.out, "Output file (stdout if omitted)");
  };

  // represent
  auto* represent = app.add_subcommand("represent", "Matrix representation of an operator");
  represent->add_option("--op", op_path, "Operator file")->required();
  add_frames(represent);
  represent->callback([&] {
    action = [&] {
      const auto m = frameop::matrix_rep(load_operator(op_path), load_frame(row_path, opt),
                                         load_frame(col_path, opt));
      emit(opt, io::matrix_to_json(m.matrix()));
      return 0;
    };
  });

  // synth
  auto* synth = app.add_subcommand("synth", "Operator synthesized from a coefficient matrix");
  synth->add_option("--matrix", matrix_path, "Coefficient matrix file")->required();
  add_frames(synth);
  synth->callback([&] {
    action = [&] {
      const auto o = frameop::operator_synth(load_coefficients(matrix_path),
                                             load_frame(row_path, opt), load_frame(col_path, opt));
      emit(opt, io::matrix_to_json(o.matrix()));
      return 0;
    };
  });

  // check-representable
  auto* check = app.add_subcommand("check-representable",
                                   "Decide whether a coefficient matrix represents an operator");
  check->add_option("--matrix", matrix_path, "Coefficient matrix file")->required();
  add_frames(check);
  check->callback([&] {
    action = [&] {
      const auto r = frameop::is_representable(load_coefficients(matrix_path),
                                               load_frame(row_path, opt),
                                               load_frame(col_path, opt), opt.tolerance());
      emit(opt, io::to_json(r));
      return 0;
    };
  });

  // invert
  auto* invert = app.add_subcommand("invert", "Inverse of the operator synthesized from a matrix");
  invert->add_option("--matrix", matrix_path, "Coefficient matrix file")->required();
  add_frames(invert);
  invert->callback([&] {
    action = [&] {
      const auto o = frameop::invert_from_matrix(load_coefficients(matrix_path),
                                                 load_frame(row_path, opt),
                                                 load_frame(col_path, opt), opt.tolerance());
      emit(opt, io::matrix_to_json(o.matrix()));
      return 0;
    };
  });

  // solve
  auto* solve = app.add_subcommand("solve", "Solve O f = g through the frame coefficients");
  solve->add_option("--op", op_path, "Operator file")->required();
  solve->add_option("--rhs", rhs_path, "Right-hand side vector file")->required();
  add_frames(solve);
  solve->callback([&] {
    action = [&] {
      const auto r = frameop::solve(load_operator(op_path),
                                    io::vector_from_json(io::read_json_file(rhs_path)),
                                    load_frame(row_path, opt), load_frame(col_path, opt),
                                    opt.tolerance());
      emit(opt, io::to_json(r));
      return r.ill_conditioned ? kExitOther : 0;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Run the property verification suite");
  frameop::SuiteConfig suite;
  std::string dims_text = "2,2,2;3,3,3;2,3,4";
  bool text = false;
  verify->add_option("--trials", suite.trials, "Trials per dimension entry")->capture_default_str();
  verify->add_option("--dims", dims_text, "Dimension triples d1,d2,d3 separated by ';'")
      ->capture_default_str();
  verify->add_option("--frame-sizes", suite.frame_sizes,
                     "Redundant frame size, one value or one per dims entry")
      ->capture_default_str();
  verify->add_flag("--onb-only", suite.onb_only, "Use orthonormal bases as scenario frames");
  verify->add_flag("--corrupt-mat", suite.corrupt_mat_convention,
                   "Debug: corrupt the matrix convention of the reconstruction check");
  verify->add_flag("--text", text, "Print the text table instead of JSON on stdout");
  verify->add_option("--out", opt.out, "Write the JSON report here and print the table");
  verify->callback([&] {
    action = [&] {
      suite.seed = opt.seed;
      suite.dims = parse_dims(dims_text);
      suite.tolerance = opt.tolerance();
      const frameop::SuiteReport r = frameop::run_suite(suite);
      if (!opt.out.empty()) {
        io::write_json_file(opt.out, frameop::to_json(r));
        std::cout << frameop::to_text(r);
      } else if (text) {
        std::cout << frameop::to_text(r);
      } else {
        std::cout << frameop::to_json(r).dump(2) << "\n";
      }
      return r.all_passed() ? 0 : kExitOther;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    return action();
  } catch (const frameop::Error& e) {
    std::cerr << "frameop: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "frameop: " << e.what() << "\n";
    return kExitOther;
  }
}
