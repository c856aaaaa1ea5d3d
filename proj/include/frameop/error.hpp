#pragma once

#include <stdexcept>
#include <string>

namespace frameop {

enum class ErrorCode {
  dimension_mismatch,
  not_a_frame,
  bad_generator_params,
  not_bijective,
  formula_mismatch,
  xi_is_riesz,
  ill_conditioned,
  parse_error,
  invalid_argument,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::not_a_frame: return "NotAFrame";
    case ErrorCode::bad_generator_params: return "BadGeneratorParams";
    case ErrorCode::not_bijective: return "NotBijective";
    case ErrorCode::formula_mismatch: return "FormulaMismatch";
    case ErrorCode::xi_is_riesz: return "XiIsRiesz";
    case ErrorCode::ill_conditioned: return "IllConditioned";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Base class for every error raised by the library. The code identifies the
/// failure class; the message carries the details.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

inline void require_dims(bool condition, const std::string& what) {
  require(condition, ErrorCode::dimension_mismatch, what);
}

}  // namespace detail
}  // namespace frameop
