#pragma once

#include <stdexcept>
#include <string>

namespace trc {

/// Failure categories. The CLI maps these onto its exit codes.
enum class ErrorKind {
  Parse,
  NonGenericRamification,
  InadmissibleTimes,
  NotARamificationPoint,
  BadDeclaration,
  DegenerateCurve,
  FieldExtensionRequired,
  InsufficientPrecision,
  NoPrimitive,
  NotInRange,
  IllDefinedPairing,
  OutOfScope,
  UnsupportedTensorForm,
  UseHigherKernel,
  SymmetryViolation,
  Internal,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::NonGenericRamification: return "non-generic-ramification";
    case ErrorKind::InadmissibleTimes: return "inadmissible-times";
    case ErrorKind::NotARamificationPoint: return "not-a-ramification-point";
    case ErrorKind::BadDeclaration: return "bad-declaration";
    case ErrorKind::DegenerateCurve: return "degenerate-curve";
    case ErrorKind::FieldExtensionRequired: return "field-extension-required";
    case ErrorKind::InsufficientPrecision: return "insufficient-precision";
    case ErrorKind::NoPrimitive: return "no-single-valued-primitive";
    case ErrorKind::NotInRange: return "not-in-range";
    case ErrorKind::IllDefinedPairing: return "ill-defined-pairing";
    case ErrorKind::OutOfScope: return "out-of-scope";
    case ErrorKind::UnsupportedTensorForm: return "unsupported-for-tensor-form";
    case ErrorKind::UseHigherKernel: return "use-higher-kernel";
    case ErrorKind::SymmetryViolation: return "symmetry-violation";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace trc
