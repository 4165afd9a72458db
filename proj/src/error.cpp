#include "nehari/error.hpp"

#include <algorithm>

namespace nehari {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ExponentWindowViolation: return "ExponentWindowViolation";
    case ErrorCode::WeightViolation: return "WeightViolation";
    case ErrorCode::SingularExponentViolation: return "SingularExponentViolation";
    case ErrorCode::PotentialDecayViolation: return "PotentialDecayViolation";
    case ErrorCode::DimensionViolation: return "DimensionViolation";
    case ErrorCode::DegenerateGrid: return "DegenerateGrid";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::UnsupportedGrid: return "UnsupportedGrid";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::KernelDomain: return "KernelDomain";
    case ErrorCode::NotInPositiveCone: return "NotInPositiveCone";
    case ErrorCode::NonpositiveT: return "NonpositiveT";
    case ErrorCode::ZeroA: return "ZeroA";
    case ErrorCode::ZeroB: return "ZeroB";
    case ErrorCode::RootBracketFailure: return "RootBracketFailure";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::DescentDiverged: return "DescentDiverged";
    case ErrorCode::RayMissesNehari: return "RayMissesNehari";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::SnapshotFormat: return "SnapshotFormat";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

namespace {

std::string join_violations(const std::vector<Violation>& vs) {
  std::string out;
  for (const auto& v : vs) {
    if (!out.empty()) out += "; ";
    out += std::string(error_name(v.code)) + " (" + v.message + ")";
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(violations.empty() ? ErrorCode::ExponentWindowViolation : violations.front().code,
            join_violations(violations)),
      violations_(std::move(violations)) {}

bool ValidationError::has(ErrorCode code) const noexcept {
  return std::any_of(violations_.begin(), violations_.end(),
                     [code](const Violation& v) { return v.code == code; });
}

}  // namespace nehari
