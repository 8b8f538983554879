#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lmgsim {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  QubitOutOfRange,
  IncompatibleQubitCount,
  NotNormalizable,
  NotHermitian,
  NotOrthonormal,
  InvalidSpec,
  BrokenDensityMatrix,
  NumericalFailure,
  RealizationFailed,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; the code lets callers branch
/// without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::QubitOutOfRange: return "qubit-out-of-range";
    case ErrorCode::IncompatibleQubitCount: return "incompatible-qubit-count";
    case ErrorCode::NotNormalizable: return "not-normalizable";
    case ErrorCode::NotHermitian: return "not-hermitian";
    case ErrorCode::NotOrthonormal: return "not-orthonormal";
    case ErrorCode::InvalidSpec: return "invalid-spec";
    case ErrorCode::BrokenDensityMatrix: return "broken-density-matrix";
    case ErrorCode::NumericalFailure: return "numerical-failure";
    case ErrorCode::RealizationFailed: return "realization-failed";
    case ErrorCode::ConfigError: return "config-error";
    case ErrorCode::IoError: return "io-error";
  }
  return "unknown";
}

}  // namespace lmgsim
