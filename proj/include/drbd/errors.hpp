#pragma once

#include <stdexcept>
#include <string>

namespace drbd {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Lexical or syntax error in a model file. Carries the 1-based source
/// position of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Semantic error: duplicate or unknown ids, spare misuse, unbound
/// variables, repeated blocks in read-once contexts, and the like.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Invalid index-set structure (empty or overlapping sets).
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: quadrature that cannot reach the requested
/// tolerance, non-finite integrands, and so on.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A user-supplied sampler produced an unusable value.
class SamplingError : public Error {
 public:
  explicit SamplingError(const std::string& block, const std::string& what)
      : Error("sampling block '" + block + "': " + what), block_(block) {}

  const std::string& block() const { return block_; }

 private:
  std::string block_;
};

}  // namespace drbd
