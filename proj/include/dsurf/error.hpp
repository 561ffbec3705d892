#pragma once

#include <stdexcept>
#include <string>

namespace dsurf {

enum class ErrorKind {
  Parse,
  UnknownVariable,
  FieldMismatch,
  DivisionByZero,
  NonInvertible,
  NotPrime,
  NotMonic,
  DegreeTooSmall,
  NotUnivariate,
  ZeroInput,
  ConstantInputs,
  ComaximalityFails,
  NotDivisible,
  Precondition,
  SpecMismatch,
  Unverified,
  SearchOverflow,
  Undecided,
  ExponentOverflow,
  Internal,
};

const char* to_string(ErrorKind kind);

/// All library failures are reported through this type. `kind()` is stable and
/// is what callers (and the CLI exit-code mapping) switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse errors carry the byte offset into the input text.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorKind::Parse, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace dsurf
