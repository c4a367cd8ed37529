#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace filtmult {

enum class ErrorKind {
  kNonPositiveInput,
  kPrecisionExhausted,
  kInexactInput,
  kFieldMismatch,
  kDivisionByZero,
  kNotPrimary,
  kDimensionMismatch,
  kCapReached,
  kDegenerateSystem,
  kZeroVolume,
  kTruncationTooLow,
  kNoStabilization,
  kIllConditioned,
  kNotNested,
  kRationalityUndecided,
  kOutsideEnvelope,
  kBoundaryAmbiguity,
  kNotEquality,
  kSchema,
};

std::string_view to_string(ErrorKind kind);

/// Exit code the command-line front end uses for this kind of failure:
/// 2 for malformed input, 3 for a violated mathematical precondition and
/// 4 when a computation stayed undecided within its caps.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace filtmult
