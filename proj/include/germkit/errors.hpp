#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace germkit {

// Base of every germkit failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed expression text; `offset` is the byte position in the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Evaluation outside the natural domain of an expression (division by zero,
// log of a non-positive argument, fractional power of a negative base, ...),
// or evaluation of a map outside its constructed range.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A caller-side precondition was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An iterative numerical procedure failed to converge within its budget.
class NumericsError : public Error {
 public:
  using Error::Error;
};

// No conjugating map exists for the requested pair (incompatible phase
// portraits, or a field vanishing inside the working neighborhood).
class ConjugacyError : public Error {
 public:
  using Error::Error;
};

// The germ carries no finite jet data (flat or identically zero), so the
// requested finite normal form / conjugator does not exist.
class NotFinitelyDetermined : public Error {
 public:
  using Error::Error;
};

}  // namespace germkit
