#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "frameop/frame.hpp"
#include "frameop/oprep.hpp"
#include "frameop/solver.hpp"

namespace frameop::io {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what) {
  throw Error(ErrorCode::parse_error, what);
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) parse_fail("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) parse_fail(std::string("missing field \"") + key + "\"");
  return *it;
}

inline Eigen::Index positive_int(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() <= 0)
    parse_fail(std::string("field \"") + key + "\" must be a positive integer");
  return static_cast<Eigen::Index>(v.get<long long>());
}

}  // namespace detail

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    detail::parse_fail("complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

// Matrices: {"rows": r, "cols": c, "entries": [[re,im], ...]} in row-major order.

inline Json matrix_to_json(const Matrix& m) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) entries.push_back(to_json(m(i, k)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline Matrix matrix_from_json(const Json& j) {
  const Eigen::Index rows = detail::positive_int(j, "rows");
  const Eigen::Index cols = detail::positive_int(j, "cols");
  const Json& entries = detail::field(j, "entries");
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != rows * cols)
    detail::parse_fail("\"entries\" must hold rows*cols = " + std::to_string(rows * cols) +
                       " pairs");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k)
      m(i, k) = complex_from_json(entries[static_cast<std::size_t>(i * cols + k)]);
  return m;
}

/// Vectors are written as r x 1 matrices; a bare array of pairs is also read.
inline Json vector_to_json(const Vector& v) { return matrix_to_json(v); }

inline Vector vector_from_json(const Json& j) {
  if (j.is_array()) {
    if (j.empty()) detail::parse_fail("empty vector");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
      v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
  }
  const Matrix m = matrix_from_json(j);
  if (m.cols() != 1) detail::parse_fail("vector must have a single column");
  return m.col(0);
}

// Frames: {"dim": d, "vectors": [[[re,im], ...], ...]} in index order.

inline Json frame_to_json(const Frame& f) {
  Json vectors = Json::array();
  for (Eigen::Index k = 0; k < f.size(); ++k) {
    Json v = Json::array();
    for (Eigen::Index i = 0; i < f.dim(); ++i) v.push_back(to_json(f.synthesis_matrix()(i, k)));
    vectors.push_back(std::move(v));
  }
  return {{"dim", f.dim()}, {"vectors", std::move(vectors)}};
}

inline Frame frame_from_json(const Json& j, const Tolerance& tol = {}) {
  const Eigen::Index dim = detail::positive_int(j, "dim");
  const Json& vectors = detail::field(j, "vectors");
  if (!vectors.is_array()) detail::parse_fail("\"vectors\" must be an array");
  std::vector<Vector> vs;
  for (const Json& v : vectors) {
    if (!v.is_array()) detail::parse_fail("each frame vector must be an array of pairs");
    Vector x(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
      x(static_cast<Eigen::Index>(i)) = complex_from_json(v[i]);
    vs.push_back(std::move(x));
  }
  return Frame::make(static_cast<std::size_t>(dim), vs, tol);
}

// Reports.

inline Json to_json(const FrameBounds& b) { return {{"lower", b.lower}, {"upper", b.upper}}; }

inline Json to_json(const RepresentabilityReport& r) {
  Json j = {{"representable", r.representable},
            {"cond_range_kernel", r.cond_range_kernel},
            {"cond_gram_sandwich", r.cond_gram_sandwich},
            {"sandwich_residual", r.sandwich_residual},
            {"kernel_residual", r.kernel_residual}};
  if (r.witness_operator) {
    j["witness_operator"] = matrix_to_json(r.witness_operator->matrix());
    j["witness_residual"] = r.witness_residual;
  }
  return j;
}

inline Json to_json(const JectivityReport& r) {
  Json residuals = Json::object();
  for (const auto& [k, v] : r.residuals) residuals[k] = v;
  return {{"injective", r.injective},
          {"surjective", r.surjective},
          {"bijective", r.bijective},
          {"agrees_with_direct", r.agrees_with_direct},
          {"residuals", std::move(residuals)}};
}

inline Json to_json(const SolveReport& r) {
  return {{"solution", vector_to_json(r.solution)},
          {"residual", r.residual},
          {"method", std::string(to_string(r.method))},
          {"reference_solution", vector_to_json(r.reference_solution)},
          {"reference_agreement", r.reference_agreement},
          {"ill_conditioned", r.ill_conditioned}};
}

// Files.

inline Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    detail::parse_fail(e.what());
  }
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) detail::parse_fail("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

/// Writes through a sibling temporary file and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::invalid_argument, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::invalid_argument, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::invalid_argument, "cannot rename into " + path.string());
  }
}

inline void write_json_file(const std::filesystem::path& path, const Json& j) {
  write_file_atomic(path, j.dump(2) + "\n");
}

}  // namespace frameop::io
