#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace surf4 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset()` is the byte offset of the problem.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Evaluation outside the domain of a sub-expression (log of a non-positive
/// number, division by zero, ...). `subtree()` is the printed offending node.
class DomainError : public Error {
 public:
  DomainError(const std::string& msg, std::string subtree)
      : Error(msg + " in `" + subtree + "`"), subtree_(std::move(subtree)) {}
  explicit DomainError(const std::string& msg) : Error(msg) {}

  const std::string& subtree() const noexcept { return subtree_; }

 private:
  std::string subtree_;
};

/// A regularity condition of the parametrization fails at a point.
class RegularityError : public Error {
 public:
  using Error::Error;
};

/// Degenerate geometric input: collapsed tangent plane, undefined frame.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Finite-difference stencil leaves the parameter domain.
class StencilError : public Error {
 public:
  using Error::Error;
};

}  // namespace surf4
