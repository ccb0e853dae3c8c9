#pragma once

#include <stdexcept>
#include <string>

namespace unitroot {

/// Failure categories. The CLI maps these onto its exit status contract.
enum class ErrorKind {
  Validation,            // malformed input, bad parameters
  NonPrime,
  ReducibleModulus,
  DegreeTooSmall,
  NonUnitDeterminant,
  NonUnitPivotCoordinate,
  ZeroUnitCoefficient,
  NonOrdinary,
  SizeGuardExceeded,
  EnumerationBudgetExceeded,
  InconsistentCounts,
  Internal,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Validation: return "Validation";
    case ErrorKind::NonPrime: return "NonPrime";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::NonUnitDeterminant: return "NonUnitDeterminant";
    case ErrorKind::NonUnitPivotCoordinate: return "NonUnitPivotCoordinate";
    case ErrorKind::ZeroUnitCoefficient: return "ZeroUnitCoefficient";
    case ErrorKind::NonOrdinary: return "NonOrdinary";
    case ErrorKind::SizeGuardExceeded: return "SizeGuardExceeded";
    case ErrorKind::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorKind::InconsistentCounts: return "InconsistentCounts";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Internal consistency check; failures indicate a bug, not bad input.
inline void ensure(bool cond, const char* what) {
  if (!cond) throw Error(ErrorKind::Internal, what);
}

}  // namespace unitroot
