#pragma once

#include <stdexcept>
#include <string>

namespace torhom {

enum class Err {
  RingMismatch,
  ShapeMismatch,
  NotGraded,
  ZeroPolyDegree,
  DivisionByZero,
  NotNonZeroDivisor,
  DeclaredPrimeInvalid,
  SearchExhausted,
  SaturationCapExceeded,
  PrimeNotDeclared,
  StabilizationCapExceeded,
  TorsionInput,
  ZeroDual,
  NotAFactorization,
  SizeMismatch,
  NotPeriodic,
  LiftFailed,
  ThetaUndefined,
  SyntaxError,
  UnknownSymbol,
  Unsupported,
  Internal,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}

  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

}  // namespace torhom
