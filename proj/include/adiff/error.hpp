#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace adiff {

enum class ErrorCode {
  NonPositiveShift,
  NonFiniteInput,
  OutOfRange,
  CapExceeded,
  PoleError,
  DomainError,
  DivisionByZero,
  ZeroLambda,
  BoundsError,
  NoConvergence,
  PeriodicityViolation,
  SignViolation,
  TermBudgetExceeded,
  EmptyOperator,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveShift: return "NonPositiveShift";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::PoleError: return "PoleError";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroLambda: return "ZeroLambda";
    case ErrorCode::BoundsError: return "BoundsError";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::PeriodicityViolation: return "PeriodicityViolation";
    case ErrorCode::SignViolation: return "SignViolation";
    case ErrorCode::TermBudgetExceeded: return "TermBudgetExceeded";
    case ErrorCode::EmptyOperator: return "EmptyOperator";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised while evaluating an expression; `position` is the source offset of
// the node that failed.
class EvalError : public Error {
 public:
  EvalError(ErrorCode code, std::size_t position, const std::string& message)
      : Error(code, message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string message, std::optional<std::string> expected = {})
      : Error(ErrorCode::ParseError, describe(position, message, expected)),
        position_(position),
        message_(std::move(message)),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }
  const std::optional<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string describe(std::size_t position, const std::string& message,
                              const std::optional<std::string>& expected) {
    std::string text = message + " at offset " + std::to_string(position);
    if (expected) text += ", expected " + *expected;
    return text;
  }

  std::size_t position_;
  std::string message_;
  std::optional<std::string> expected_;
};

}  // namespace adiff
