#pragma once

#include <stdexcept>
#include <string>

namespace mdsarray {

enum class ErrorCode {
  NotPrime,
  DivisionByZero,
  FieldTooSmall,
  OutOfRange,
  BadParameters,
  BadIndex,
  TooManyErasures,
  TooManyFailures,
  TooFewHelpers,
  UnsupportedSpec,
  DecodingFailure,
  NotIntegral,
  SingularDifference,
  Format,
  Io,
};

const char* to_string(ErrorCode code);

// Recoverable failures. Internal invariant violations (a singular system for a
// valid spec) are reported as std::logic_error instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mdsarray
