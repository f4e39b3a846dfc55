#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace affbol {

enum class ErrorKind {
  NotPrimePower,
  DivisionByZero,
  DimensionMismatch,
  BudgetExceeded,
  ContextMismatch,
  NotVerified,
  QEqualsTwo,
  InvalidP,
  ParseError,
  VersionMismatch,
  BudgetExhausted,
  Usage,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Typed library error. The kind is part of the CLI report contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when a proved bound is contradicted by computed data. Always an
/// implementation bug, never a mathematical finding.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace affbol
