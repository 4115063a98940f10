#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace formcalc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `position()` is the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Arity, degree or ambient-dimension mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input file that is not valid JSON or does not follow the expected schema.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Mathematical failure: singular evaluation, inconsistent data, non-closed input.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace formcalc
