#pragma once

#include <stdexcept>
#include <string>

namespace qwsearch {

enum class ErrorCode {
  InvalidMarkedSet,
  UnsupportedDimension,
  DimensionTooLarge,
  NotUnitary,
  AllPhasesZero,
  PoleAtEigenphase,
  NoRootInInterval,
  MultipleSignChangesAmbiguous,
  WrongCardinality,
  NoPositiveSeriesRoot,
  NullSpaceDimensionTooHigh,
  OddSideForAntipodal,
  ZeroVector,
  InsufficientData,
  ConfigError,
};

const char* error_code_name(ErrorCode code);

// Library-wide exception carrying a machine-readable code plus a
// human-readable message.  CLI layers map codes onto process exit codes.
class QwError : public std::runtime_error {
 public:
  QwError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qwsearch
