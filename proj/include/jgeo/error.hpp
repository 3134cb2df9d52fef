#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace jgeo {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position` is a 0-based byte offset into the source.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), detail_(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }
  /// The message without the position suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t position_;
};

/// Evaluation left the domain of an elementary function (log of a nonpositive
/// number, division by zero, sqrt of a negative number).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Shape mismatch: wrong chart dimension, incompatible variance, ...
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix field is singular at a sample point.
class SingularError : public Error {
 public:
  SingularError(const std::string& what, std::vector<double> point)
      : Error(what), point_(std::move(point)) {}
  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::vector<double> point_;
};

/// Input document does not follow the schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Bad invocation: unknown suite, missing structures for a suite, ...
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace jgeo
