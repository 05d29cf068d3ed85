#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hitbend {

enum class ErrorCode {
  DivisionByZero,
  NotFoundWithinBound,
  PreconditionViolated,
  NotSquarefree,
  ZeroConstantTerm,
  UnsupportedDegree,
  Singular,
  IntegralityViolated,
  SizeMismatch,
  Overflow,
  OddDimensionSignFlip,
  NoInvariantLattice,
  NoRationalForm,
  ReciprocalSpectrum,
  RelatorBroken,
  G2Unsupported,
  Inconclusive,
  IncomparableClasses,
  BadPrime,
  InvalidResidue,
  TooLarge,
  NotCyclic,
  NoKnownSeed,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// All library failures are reported through this exception; `code()` is the
/// machine-readable tag, `what()` carries context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace hitbend
