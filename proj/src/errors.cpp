#include "qherm/errors.hpp"

namespace qherm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidOperator: return "InvalidOperator";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::NonHermitianMetric: return "NonHermitianMetric";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::SelfOrthogonal: return "SelfOrthogonal";
    case ErrorCode::ComplexSpectrum: return "ComplexSpectrum";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::SingularPseudoMetric: return "SingularPseudoMetric";
    case ErrorCode::BrokenPhase: return "BrokenPhase";
    case ErrorCode::ExceptionalPoint: return "ExceptionalPoint";
    case ErrorCode::NotPTSymmetric: return "NotPTSymmetric";
    case ErrorCode::BadGrid: return "BadGrid";
    case ErrorCode::SigmaVanishes: return "SigmaVanishes";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EvalError: return "EvalError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ParityViolation: return "ParityViolation";
  }
  return "Unknown";
}

}  // namespace qherm
