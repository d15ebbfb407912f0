#pragma once

#include <stdexcept>
#include <string>

namespace rado {

// Error taxonomy shared across the library. `Input` class errors mean the
// request itself is malformed; `Unsupported` class errors mean the request is
// well-formed but outside what this implementation decides; `Budget` class
// errors mean a documented enumeration cap was hit.
enum class Err {
  NonFieldDescriptor,
  DimensionMismatch,
  NotADomain,
  UnsupportedRing,
  UnsupportedPair,
  NotPrime,
  PrimeTooSmall,
  InfiniteQuotient,
  NotAnIdeal,
  InconsistentData,
  MalformedInput,
  MalformedCertificate,
  HNotKnownZero,
  SearchBudgetExceeded,
  BudgetExceeded,
  BudgetExhausted,
  Internal,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}

  Err code() const { return code_; }

  // Process exit code contract: 1 for bad input, 2 for unsupported requests
  // and exhausted budgets.
  int exit_code() const;

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

}  // namespace rado
