#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qherm {

enum class ErrorCode {
  DimensionMismatch,
  InvalidOperator,
  SingularMetric,
  NonHermitianMetric,
  DegenerateSpectrum,
  NonConvergence,
  SelfOrthogonal,
  ComplexSpectrum,
  NonPositiveWeight,
  NotPositive,
  SingularPseudoMetric,
  BrokenPhase,
  ExceptionalPoint,
  NotPTSymmetric,
  BadGrid,
  SigmaVanishes,
  ParseError,
  EvalError,
  SchemaError,
  ParityViolation,
};

std::string_view to_string(ErrorCode code);

/// Typed failure raised by every core operation. `detail` carries the one
/// number worth reporting (max |Im lambda|, parse position, offending x...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<double> detail = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<double> detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::optional<double> detail_;
};

}  // namespace qherm
