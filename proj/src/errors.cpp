#include "qwsearch/errors.hpp"

namespace qwsearch {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidMarkedSet: return "InvalidMarkedSet";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::AllPhasesZero: return "AllPhasesZero";
    case ErrorCode::PoleAtEigenphase: return "PoleAtEigenphase";
    case ErrorCode::NoRootInInterval: return "NoRootInInterval";
    case ErrorCode::MultipleSignChangesAmbiguous:
      return "MultipleSignChangesAmbiguous";
    case ErrorCode::WrongCardinality: return "WrongCardinality";
    case ErrorCode::NoPositiveSeriesRoot: return "NoPositiveSeriesRoot";
    case ErrorCode::NullSpaceDimensionTooHigh:
      return "NullSpaceDimensionTooHigh";
    case ErrorCode::OddSideForAntipodal: return "OddSideForAntipodal";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

}  // namespace qwsearch
