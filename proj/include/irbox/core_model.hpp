#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "irbox/decimal.hpp"
#include "irbox/error.hpp"

namespace irbox {

inline constexpr double kDefaultIdentityTolerance = 1e-9;

/// One firm-period balance sheet observation. Amounts are exact decimals.
struct BalanceSheetRecord {
  std::string firm_id;
  std::int64_t period = 0;
  Decimal debt;
  Decimal equity;
  Decimal assets;
  /// True when assets were absent on ingestion and filled in as debt + equity.
  bool assets_synthesized = false;

  /// Builds a record; when `assets` is omitted it is synthesized as d + e.
  static BalanceSheetRecord make(std::string firm_id, std::int64_t period, Decimal debt,
                                 Decimal equity, std::optional<Decimal> assets = std::nullopt);

  [[nodiscard]] double d() const { return debt.to_double(); }
  [[nodiscard]] double e() const { return equity.to_double(); }
  [[nodiscard]] double a() const { return assets.to_double(); }
  [[nodiscard]] std::string key() const;
};

struct ValidationResult {
  std::optional<ErrorCode> failure;
  std::string detail;

  [[nodiscard]] bool accepted() const noexcept { return !failure.has_value(); }
  explicit operator bool() const noexcept { return accepted(); }
};

/// Checks the record invariants in order: non-negative debt, non-negative
/// equity (unless `distress_mode`), positive d + e, then the accounting
/// identity |a - (d + e)| <= tol_rel * max(1, a).
ValidationResult validate_record(const BalanceSheetRecord& rec,
                                 double tol_rel = kDefaultIdentityTolerance,
                                 bool distress_mode = false);

enum class PanelAxis { TimeSeries, CrossSection };

/// Validated, immutable collection of records along a single axis.
class Panel {
 public:
  [[nodiscard]] std::span<const BalanceSheetRecord> records() const noexcept { return records_; }
  [[nodiscard]] PanelAxis axis() const noexcept { return axis_; }
  [[nodiscard]] bool distress_mode() const noexcept { return distress_mode_; }
  [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }

  friend Panel build_panel(std::vector<BalanceSheetRecord> records, PanelAxis axis,
                           bool distress_mode, double tol_rel);

 private:
  Panel(std::vector<BalanceSheetRecord> records, PanelAxis axis, bool distress_mode)
      : records_(std::move(records)), axis_(axis), distress_mode_(distress_mode) {}

  std::vector<BalanceSheetRecord> records_;
  PanelAxis axis_;
  bool distress_mode_;
};

/// Throws Error with EmptyPanel, InvalidRecord (wrapping the record's failure),
/// MixedFirms, MixedPeriods, DuplicateKey or PeriodsNotIncreasing.
Panel build_panel(std::vector<BalanceSheetRecord> records, PanelAxis axis,
                  bool distress_mode = false, double tol_rel = kDefaultIdentityTolerance);

}  // namespace irbox
