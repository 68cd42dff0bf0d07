#pragma once

#include <stdexcept>
#include <string>

namespace repstate {

/// Machine-readable failure categories surfaced by the library.
enum class ErrorCode {
  NonUniformGrid,
  NegativeDensity,
  ZeroMass,
  DimensionUnsupported,
  VacuumHasNoMomentum,
  BudgetExceeded,
  WeightSumInvalid,
  DuplicateConfig,
  PauliViolation,
  TargetOutOfRange,
  DomainError,
  InfeasibleTarget,
  BadInput,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonUniformGrid: return "NonUniformGrid";
    case ErrorCode::NegativeDensity: return "NegativeDensity";
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::VacuumHasNoMomentum: return "VacuumHasNoMomentum";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::WeightSumInvalid: return "WeightSumInvalid";
    case ErrorCode::DuplicateConfig: return "DuplicateConfig";
    case ErrorCode::PauliViolation: return "PauliViolation";
    case ErrorCode::TargetOutOfRange: return "TargetOutOfRange";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InfeasibleTarget: return "InfeasibleTarget";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace repstate
