#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace irbox {

enum class ErrorCode {
  // core_model
  IdentityViolation,
  NegativeDebt,
  NegativeEquityOutsideDistressMode,
  DegenerateRecord,
  EmptyPanel,
  MixedFirms,
  MixedPeriods,
  DuplicateKey,
  PeriodsNotIncreasing,
  InvalidRecord,
  // risk_indices
  ZeroAssets,
  // irbox_geometry
  OutOfRange,
  NoDebtPositiveRecords,
  NoDistressExtension,
  // fractal_gasket
  DepthLimit,
  // fractal_dimension
  ScaleFinerThanDepth,
  InsufficientScales,
  // economy_model
  BudgetViolation,
  UnboundedProgram,
  ZeroAggregateAssets,
  InvalidParameters,
  // io
  SchemaViolation,
  EmptyLayerSet,
  MalformedInput,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Domain error carrying a machine-readable code. Every failure path named in
/// the module contracts surfaces as one of these.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace irbox
