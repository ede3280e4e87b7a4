#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linsat {

/// Broad failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  NotAPrimePower,
  DivisionByZero,
  DimensionMismatch,
  SyntaxError,
  InvariantViolation,
  ConfigError,
  RangeError,
  NotSingleton,
  MismatchedInstances,
  TooLarge,
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotAPrimePower: return "NotAPrimePower";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::NotSingleton: return "NotSingleton";
    case ErrorKind::MismatchedInstances: return "MismatchedInstances";
    case ErrorKind::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure; line numbers are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, const std::string& what)
      : Error(ErrorKind::SyntaxError,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A structural rule broken by constraint `index` (0-based).
class InvariantViolation : public Error {
 public:
  InvariantViolation(std::size_t index, const std::string& what)
      : Error(ErrorKind::InvariantViolation,
              "constraint " + std::to_string(index) + ": " + what),
        index_(index) {}

  std::size_t constraint() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace linsat
