#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace logred {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

// Input-language errors (exit code 1).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string message,
             std::vector<std::string> expected = {})
      : Error(format(line, column, message, expected)),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  const char* kind() const noexcept override { return "ParseError"; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(std::size_t line, std::size_t column,
                            const std::string& message,
                            const std::vector<std::string>& expected) {
    std::string s = std::to_string(line) + ":" + std::to_string(column) +
                    ": " + message;
    if (!expected.empty()) {
      s += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) s += ", ";
        s += expected[i];
      }
      s += ")";
    }
    return s;
  }

  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

class FieldError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "FieldError"; }
};

// Mathematical-domain errors (exit code 2).
class MathError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "MathError"; }
};

#define LOGRED_MATH_ERROR(Name)                                        \
  class Name : public MathError {                                      \
   public:                                                             \
    using MathError::MathError;                                        \
    const char* kind() const noexcept override { return #Name; }      \
  }

LOGRED_MATH_ERROR(DivisionByZero);
LOGRED_MATH_ERROR(InvalidPlace);
LOGRED_MATH_ERROR(DegenerateInput);
LOGRED_MATH_ERROR(SingularGenericFibre);
LOGRED_MATH_ERROR(BadCharacteristic);
LOGRED_MATH_ERROR(TableInconsistency);
LOGRED_MATH_ERROR(ZeroDivisorEncountered);
LOGRED_MATH_ERROR(SingularCurve);
LOGRED_MATH_ERROR(OverlappingSupports);
LOGRED_MATH_ERROR(HorizontalImageNonzero);
LOGRED_MATH_ERROR(MalformedChart);
LOGRED_MATH_ERROR(InvariantViolation);

#undef LOGRED_MATH_ERROR

// Inseparable factor met by a squarefree decomposition in characteristic p.
class PurePower : public MathError {
 public:
  PurePower(std::string factor)
      : MathError("inseparable factor " + factor +
                  " has zero derivative and is not a p-th power"),
        factor_(std::move(factor)) {}
  const char* kind() const noexcept override { return "PurePower"; }
  const std::string& factor() const { return factor_; }

 private:
  std::string factor_;
};

}  // namespace logred
