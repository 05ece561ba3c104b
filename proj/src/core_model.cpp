#include "irbox/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace irbox {

BalanceSheetRecord BalanceSheetRecord::make(std::string firm_id, std::int64_t period,
                                            Decimal debt, Decimal equity,
                                            std::optional<Decimal> assets) {
  BalanceSheetRecord rec;
  rec.firm_id = std::move(firm_id);
  rec.period = period;
  rec.debt = debt;
  rec.equity = equity;
  rec.assets_synthesized = !assets.has_value();
  rec.assets = assets ? *assets : debt + equity;
  return rec;
}

std::string BalanceSheetRecord::key() const {
  return firm_id + "@" + std::to_string(period);
}

ValidationResult validate_record(const BalanceSheetRecord& rec, double tol_rel,
                                 bool distress_mode) {
  if (!(tol_rel >= 0.0)) throw std::invalid_argument("tol_rel must be non-negative");
  if (rec.debt.is_negative()) {
    return {ErrorCode::NegativeDebt, rec.key() + ": debt " + rec.debt.to_string() + " < 0"};
  }
  if (rec.equity.is_negative() && !distress_mode) {
    return {ErrorCode::NegativeEquityOutsideDistressMode,
            rec.key() + ": equity " + rec.equity.to_string() + " < 0 outside distress mode"};
  }
  Decimal total = rec.debt + rec.equity;
  if (total.sign() <= 0) {
    return {ErrorCode::DegenerateRecord,
            rec.key() + ": debt + equity = " + total.to_string() + " (must be > 0)"};
  }
  // The difference is exact; only the tolerance comparison is in binary.
  double gap = 0.0;
  try {
    gap = std::fabs((rec.assets - total).to_double());
  } catch (const std::overflow_error&) {
    // Operands more than 38 digits apart: the gap is dominated by the larger one.
    gap = std::fabs(rec.assets.to_double() - total.to_double());
  }
  double bound = tol_rel * std::max(1.0, std::fabs(rec.assets.to_double()));
  if (gap > bound) {
    return {ErrorCode::IdentityViolation, rec.key() + ": assets " + rec.assets.to_string() +
                                              " != debt + equity " + total.to_string()};
  }
  return {};
}

Panel build_panel(std::vector<BalanceSheetRecord> records, PanelAxis axis, bool distress_mode,
                  double tol_rel) {
  if (records.empty()) throw Error(ErrorCode::EmptyPanel, "panel needs at least one record");
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto result = validate_record(records[i], tol_rel, distress_mode);
    if (!result) {
      throw Error(ErrorCode::InvalidRecord, "record " + std::to_string(i) + " (" +
                                                std::string(to_string(*result.failure)) +
                                                "): " + result.detail);
    }
  }
  const auto& first = records.front();
  if (axis == PanelAxis::TimeSeries) {
    for (std::size_t i = 1; i < records.size(); ++i) {
      const auto& rec = records[i];
      if (rec.firm_id != first.firm_id) {
        throw Error(ErrorCode::MixedFirms, "time series holds firms '" + first.firm_id +
                                               "' and '" + rec.firm_id + "'");
      }
      if (rec.period == records[i - 1].period) {
        throw Error(ErrorCode::DuplicateKey, "duplicate record " + rec.key());
      }
      if (rec.period < records[i - 1].period) {
        throw Error(ErrorCode::PeriodsNotIncreasing,
                    "period " + std::to_string(rec.period) + " follows " +
                        std::to_string(records[i - 1].period) + " for firm " + rec.firm_id);
      }
    }
  } else {
    std::set<std::string> seen;
    for (const auto& rec : records) {
      if (rec.period != first.period) {
        throw Error(ErrorCode::MixedPeriods, "cross section holds periods " +
                                                 std::to_string(first.period) + " and " +
                                                 std::to_string(rec.period));
      }
      if (!seen.insert(rec.firm_id).second) {
        throw Error(ErrorCode::DuplicateKey, "duplicate record " + rec.key());
      }
    }
  }
  return Panel(std::move(records), axis, distress_mode);
}

}  // namespace irbox
