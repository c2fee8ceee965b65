#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace regcoset {

// Every failure the library reports is one of these kinds. The CLI maps
// InternalAssertion to exit code 1 and everything else to exit code 2.
enum class ErrorKind {
  NotPositiveDefinite,
  SingularGram,
  NotComplete,
  NotUnimodular,
  NotReduced,
  NotPrimitive,
  DenominatorAtP,
  NotIntegralLattice,
  PrimeDividesNorm,
  EvenPrime,
  BehavesWellAtP,
  PrimeDividesConductor,
  InvalidArgument,
  ParseError,
  OutOfRange,
  InternalAssertion,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when an invariant that the mathematics guarantees turns out false.
[[noreturn]] inline void internal_assert_failed(const std::string& what) {
  throw Error(ErrorKind::InternalAssertion, what);
}

inline void ensure(bool condition, const std::string& what) {
  if (!condition) internal_assert_failed(what);
}

}  // namespace regcoset
