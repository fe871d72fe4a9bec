#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chromalg {

enum class ErrorCode {
  DivisionByZero,
  UnsupportedExtension,
  UnsupportedField,
  NotPIntegral,
  VarMismatch,
  NonzeroConstantTerm,
  NonUnitLeadingCoefficient,
  BaseMismatch,
  GradingMismatch,
  CoefficientNotInFpn,
  PrecisionExhausted,
  InvalidWitness,
  IndexOutOfRange,
  HeightTooLow,
  CompatibilityFailure,
  RelationNotPreserved,
  ParseError,
  ConfigError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace chromalg
