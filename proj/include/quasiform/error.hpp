#pragma once

#include <stdexcept>
#include <string>

namespace quasiform {

enum class ErrorCode {
  DimensionMismatch,
  DegreeMismatch,
  DegreeTooSmall,
  ZeroPolynomial,
  OddDegree,
  Singular,
  NonFinite,
  InvalidArgument,
  Precondition,
  Parse,
};

const char* to_string(ErrorCode code);

/// Structured error carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace quasiform
