#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nehari {

enum class ErrorCode {
  ExponentWindowViolation,
  WeightViolation,
  SingularExponentViolation,
  PotentialDecayViolation,
  DimensionViolation,
  DegenerateGrid,
  UnsupportedDimension,
  UnsupportedGrid,
  LengthMismatch,
  GridTooLarge,
  KernelDomain,
  NotInPositiveCone,
  NonpositiveT,
  ZeroA,
  ZeroB,
  RootBracketFailure,
  NotNormalized,
  EmptyFamily,
  DescentDiverged,
  RayMissesNehari,
  NoConvergence,
  NoSignChange,
  SnapshotFormat,
  ConfigError,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Domain error carrying the name of the violated contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

struct Violation {
  ErrorCode code;
  std::string message;
};

/// Thrown by validate(); lists every violated hypothesis, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }
  bool has(ErrorCode code) const noexcept;

 private:
  std::vector<Violation> violations_;
};

}  // namespace nehari
