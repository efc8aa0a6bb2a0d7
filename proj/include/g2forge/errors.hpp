#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace g2forge {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text input rejected by one of the parsers. Offsets are 0-based, lines and
/// columns 1-based (column 0 when the input is a single line).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::size_t line = 0, std::size_t column = 0)
      : Error(what), offset_(offset), line_(line), column_(column) {}
  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
};

class RingMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  using Error::Error;
};

/// A value exists but cannot be represented in the requested ring (an
/// irrational root in the exact ring, a non-unit pivot in the polynomial ring).
class NotRepresentable : public Error {
 public:
  using Error::Error;
};

class MissingVariable : public Error {
 public:
  explicit MissingVariable(const std::string& name)
      : Error("no value assigned to variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DegreeError : public Error {
 public:
  using Error::Error;
};

class JacobiViolation : public Error {
 public:
  JacobiViolation(const std::string& what, int index) : Error(what), index_(index) {}
  /// 1-based index k of the first coframe element with d(de^k) != 0.
  int index() const { return index_; }

 private:
  int index_;
};

class NotDerivation : public Error {
 public:
  using Error::Error;
};

/// Input forms fail a stability requirement (omega^3 = 0, lambda >= 0, ...).
class NotStable : public Error {
 public:
  using Error::Error;
};

class IncompatiblePair : public Error {
 public:
  using Error::Error;
};

/// The 3-form does not define a G2-structure (B_phi not positive definite).
class NotPositive : public Error {
 public:
  using Error::Error;
};

class InconsistentTorsion : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace g2forge
