#pragma once

#include <stdexcept>
#include <string>

namespace grpd {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Groupoid validation failures. Messages name the offending object or
// morphism ids as they appeared in the input.
class FormatError : public Error {
 public:
  using Error::Error;
};

class BadIdentityError : public Error {
 public:
  using Error::Error;
};

class MissingCompositeError : public Error {
 public:
  using Error::Error;
};

class AssociativityViolationError : public Error {
 public:
  using Error::Error;
};

class NoInverseError : public Error {
 public:
  using Error::Error;
};

// Structural preconditions.
class NotConnectedError : public Error {
 public:
  using Error::Error;
};

class TransversalMismatchError : public Error {
 public:
  using Error::Error;
};

class NotSubgroupError : public Error {
 public:
  using Error::Error;
};

class BoundExceededError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. These guard invariants that are
/// supposed to hold by construction; seeing one is a bug.
class InvariantViolationError : public Error {
 public:
  using Error::Error;
};

// Linear algebra and structure-constant algebras.
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class NotPrimeError : public Error {
 public:
  using Error::Error;
};

class NotCommutativeError : public Error {
 public:
  using Error::Error;
};

class NotCentralError : public Error {
 public:
  using Error::Error;
};

class BadPrimeError : public Error {
 public:
  using Error::Error;
};

// Crossed Burnside machinery.
class EquivarianceViolationError : public Error {
 public:
  using Error::Error;
};

class ClassListMismatchError : public Error {
 public:
  using Error::Error;
};

// Input files and the declaration DSL.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, int line, int col)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(col) + ")"),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

class UnknownGroupExprError : public Error {
 public:
  using Error::Error;
};

class FileNotFoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace grpd
