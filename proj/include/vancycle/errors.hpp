#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vancycle {

/// Base of every error raised by the library. The CLI maps these to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input (polynomial text, matrix files, flags).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : InputError(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

class IndexOutOfRange : public InputError {
 public:
  using InputError::InputError;
};

class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

class SingularGenerator : public InputError {
 public:
  using InputError::InputError;
};

class NonRealCriticalPoint : public InputError {
 public:
  using InputError::InputError;
};

class DegenerateCriticalPoint : public InputError {
 public:
  using InputError::InputError;
};

class GcdOutOfRange : public InputError {
 public:
  using InputError::InputError;
};

class NotAComposition : public InputError {
 public:
  using InputError::InputError;
};

class DegenerateOverlap : public InputError {
 public:
  using InputError::InputError;
};

/// Equality of two critical-value sums could be neither proven nor refuted.
class UndecidedCoincidence : public Error {
 public:
  using Error::Error;
};

/// Two cycles with the same critical value have nonzero intersection.
class NonCommutingGroup : public Error {
 public:
  using Error::Error;
};

/// A proper orbit span that no symmetry explains.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class EigenFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace vancycle
