#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homgrow {

/// Malformed presentation, word, epimorphism or witness text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(format(message, line, column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            std::size_t column) {
    return "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

/// A cover (or a matrix derived from one) would exceed the cell budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& required, const std::string& allowed,
                 const std::string& unit = "cell")
      : std::runtime_error(unit + " budget exceeded: required " + required + " " +
                           unit + "s, allowed " + allowed),
        required_(required),
        allowed_(allowed) {}

  const std::string& required() const noexcept { return required_; }
  const std::string& allowed() const noexcept { return allowed_; }

 private:
  std::string required_;
  std::string allowed_;
};

/// A checked mathematical invariant failed (a bound was beaten, two routes
/// disagreed, a normalization condition does not hold).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace homgrow
