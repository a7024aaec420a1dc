#pragma once

#include <stdexcept>
#include <string>

namespace vadef {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class ParameterMismatch : public Error {
 public:
  ParameterMismatch(const std::string& a, const std::string& b)
      : Error("cannot combine scalars in parameters '" + a + "' and '" + b + "'") {}
};

class PoleAtValue : public Error {
 public:
  explicit PoleAtValue(const std::string& what) : Error("pole at specialization value: " + what) {}
};

class NotCanonicalizable : public Error {
 public:
  using Error::Error;
};

class RecursionBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidRank : public Error {
 public:
  using Error::Error;
};

class ValidationFailure : public Error {
 public:
  using Error::Error;
};

class DInjectivityFailure : public Error {
 public:
  using Error::Error;
};

class NotASubspace : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace vadef
