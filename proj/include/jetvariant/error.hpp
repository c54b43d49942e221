#pragma once

#include <stdexcept>
#include <string>

namespace jetvariant {

enum class ErrorKind {
  DivisionByZero,
  DenominatorVanishes,
  UnboundVariable,
  SyntaxError,
  UnknownVariable,
  NonIntegerExponent,
  OrderMismatch,
  SingularJacobian,
  InconsistentSystem,
  DenominatorCollapse,
  DegenerateJacobian,
  NotASymmetry,
  ExhaustedRetries,
  IoError,
  SchemaError,
  OrthonomicityError,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::NonIntegerExponent: return "NonIntegerExponent";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::InconsistentSystem: return "InconsistentSystem";
    case ErrorKind::DenominatorCollapse: return "DenominatorCollapse";
    case ErrorKind::DegenerateJacobian: return "DegenerateJacobian";
    case ErrorKind::NotASymmetry: return "NotASymmetry";
    case ErrorKind::ExhaustedRetries: return "ExhaustedRetries";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::OrthonomicityError: return "OrthonomicityError";
  }
  return "UnknownError";
}

/// Engine-level failure with a machine-readable kind. `position` is the byte
/// offset into the source text for parse errors, -1 otherwise.
class EngineError : public std::runtime_error {
 public:
  EngineError(ErrorKind kind, const std::string& message, long position = -1)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        position_(position) {}

  ErrorKind kind() const { return kind_; }
  long position() const { return position_; }

 private:
  ErrorKind kind_;
  long position_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg, long pos = -1) {
  throw EngineError(k, msg, pos);
}

}  // namespace jetvariant
