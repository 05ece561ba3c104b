#include "irbox/error.hpp"

namespace irbox {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::NegativeDebt: return "NegativeDebt";
    case ErrorCode::NegativeEquityOutsideDistressMode: return "NegativeEquityOutsideDistressMode";
    case ErrorCode::DegenerateRecord: return "DegenerateRecord";
    case ErrorCode::EmptyPanel: return "EmptyPanel";
    case ErrorCode::MixedFirms: return "MixedFirms";
    case ErrorCode::MixedPeriods: return "MixedPeriods";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::PeriodsNotIncreasing: return "PeriodsNotIncreasing";
    case ErrorCode::InvalidRecord: return "InvalidRecord";
    case ErrorCode::ZeroAssets: return "ZeroAssets";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NoDebtPositiveRecords: return "NoDebtPositiveRecords";
    case ErrorCode::NoDistressExtension: return "NoDistressExtension";
    case ErrorCode::DepthLimit: return "DepthLimit";
    case ErrorCode::ScaleFinerThanDepth: return "ScaleFinerThanDepth";
    case ErrorCode::InsufficientScales: return "InsufficientScales";
    case ErrorCode::BudgetViolation: return "BudgetViolation";
    case ErrorCode::UnboundedProgram: return "UnboundedProgram";
    case ErrorCode::ZeroAggregateAssets: return "ZeroAggregateAssets";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::EmptyLayerSet: return "EmptyLayerSet";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

}  // namespace irbox
