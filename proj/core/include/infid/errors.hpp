#pragma once

#include <stdexcept>
#include <string>

namespace infid {

// Malformed arguments: zero functional, dimension mismatch, bad parameters.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation exists but is not defined for this configuration (e.g. projection in l1).
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Argument outside the domain of a function (interval, derivative range).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A mathematical hypothesis the caller promised does not hold (|lambda| >= 1, L != |phi|, ...).
class HypothesisViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Text could not be parsed; line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(what), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace infid
