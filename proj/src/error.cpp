#include "chromalg/error.hpp"

namespace chromalg {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::UnsupportedExtension: return "UnsupportedExtension";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::NotPIntegral: return "NotPIntegral";
    case ErrorCode::VarMismatch: return "VarMismatch";
    case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorCode::NonUnitLeadingCoefficient: return "NonUnitLeadingCoefficient";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::GradingMismatch: return "GradingMismatch";
    case ErrorCode::CoefficientNotInFpn: return "CoefficientNotInFpn";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::InvalidWitness: return "InvalidWitness";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::HeightTooLow: return "HeightTooLow";
    case ErrorCode::CompatibilityFailure: return "CompatibilityFailure";
    case ErrorCode::RelationNotPreserved: return "RelationNotPreserved";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace chromalg
