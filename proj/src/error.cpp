#include "qcayley/error.hpp"

namespace qcayley {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownDirection: return "UnknownDirection";
    case ErrorCode::InvalidFactor: return "InvalidFactor";
    case ErrorCode::SingularQ: return "SingularQ";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NoLengthAdditiveSubobject: return "NoLengthAdditiveSubobject";
    case ErrorCode::ExceptionalCase: return "ExceptionalCase";
    case ErrorCode::SupportExceedsKmax: return "SupportExceedsKmax";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorCode::AmbientTooLarge: return "AmbientTooLarge";
    case ErrorCode::TolTooSmall: return "TolTooSmall";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::DegenerateG: return "DegenerateG";
    case ErrorCode::SignMismatch: return "SignMismatch";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

int exit_class(ErrorCode code) {
  switch (code) {
    case ErrorCode::Ok:
      return 0;
    case ErrorCode::RadiusTooLarge:
    case ErrorCode::AmbientTooLarge:
    case ErrorCode::TolTooSmall:
    case ErrorCode::Overflow:
      return 3;
    case ErrorCode::SignMismatch:
    case ErrorCode::DegenerateG:
    case ErrorCode::NoConvergence:
    case ErrorCode::Internal:
      return 1;
    default:
      return 2;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace qcayley
