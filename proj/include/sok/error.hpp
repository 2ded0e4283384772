#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sok {

enum class ErrorCode {
  ParseError,
  InvalidPresentation,
  InvalidSpec,
  RelatorViolation,
  ZeroCharacter,
  DimensionMismatch,
  UnsupportedForm,
  NonInvertibleAction,
  NotFixed,
  ValidationFailure,
  FiniteEnumerationCap,
  UnknownGroup,
  UnknownDegree,
  MissingSigma,
  MissingInvariant,
  DegreeMismatch,
  BallTooLarge,
  DegenerateCharacter,
  Undecidable,
  Overflow,
};

std::string_view to_string(ErrorCode code);

/// Domain error carrying a machine-readable code; the CLI maps these to
/// exit status 1 with a structured error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sok
