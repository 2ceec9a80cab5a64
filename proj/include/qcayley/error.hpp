#pragma once

#include <stdexcept>
#include <string>

namespace qcayley {

enum class ErrorCode {
  Ok = 0,
  InvalidArgument,
  UnknownDirection,
  InvalidFactor,
  SingularQ,
  IndexOutOfRange,
  NoLengthAdditiveSubobject,
  ExceptionalCase,
  SupportExceedsKmax,
  UnsupportedFormat,
  ConfigError,
  ParseError,
  IoError,
  Overflow,
  RadiusTooLarge,
  AmbientTooLarge,
  TolTooSmall,
  NoConvergence,
  AmbientMismatch,
  DegenerateG,
  SignMismatch,
  Internal,
};

const char* error_name(ErrorCode code);

// Process exit class: 1 verification failure, 2 config error, 3 resource cap.
int exit_class(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace qcayley
