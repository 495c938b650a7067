#pragma once

#include <stdexcept>
#include <string>

namespace saxl {

enum class ErrorCode {
  NotPrime,
  Reducible,
  TooLarge,
  DivisionByZero,
  EvenCharacteristic,
  NotSubfieldDegree,
  NonzeroTrace,
  NonUnitNorm,
  BadT,
  NoUnitDetLift,
  UnsupportedCase,
  BadSubfieldDegree,
  ConditionsNotMet,
  SearchExhausted,
  NotSubset,
  NotSubgroup,
  UnfaithfulAction,
  TooManyPoints,
  NotBaseTwo,
  MisalignedActions,
  FamilyMismatch,
  NotInvolution,
  InsideM,
  NoConjugateInH,
  BadParameters,
  DegeneratePair,
  Disconnected,
  Internal,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace saxl
