#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace derksen {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
  DivisionByZero() : Error("division by zero") {}
};

class NoSuchRoot : public Error {
public:
  using Error::Error;
};

/// Operands live in different rings, or a vector has the wrong length.
class ArityMismatch : public Error {
public:
  using Error::Error;
};

/// A Groebner computation, closure or saturation exceeded its configured cap.
class ResourceLimit : public Error {
public:
  using Error::Error;
};

class NotInvertible : public Error {
public:
  using Error::Error;
};

class GroupTooLarge : public Error {
public:
  explicit GroupTooLarge(std::size_t cap)
      : Error("group closure exceeds cap of " + std::to_string(cap) + " elements"), cap_(cap) {}
  std::size_t cap() const { return cap_; }

private:
  std::size_t cap_;
};

/// The characteristic divides |G|, so there is no Reynolds operator.
class NotReductive : public Error {
public:
  using Error::Error;
};

/// Two independent computations of the same object disagreed.
class CrossCheckFailure : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace derksen
