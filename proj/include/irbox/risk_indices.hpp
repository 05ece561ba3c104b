#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irbox/core_model.hpp"

namespace irbox {

/// The index family for one balance sheet.
///
/// Amount-valued fields (tr, nr, aco) are in currency units; the rest are
/// dimensionless. `gear` is empty when equity is zero.
struct RiskIndexSet {
  double tr = 0;      ///< total risk, d + e
  double nr = 0;      ///< net risk, |d - e|
  double aco = 0;     ///< asset-capital overlap, tr - nr = 2 min(d, e)
  double firi = 0;    ///< aco / tr, in [0, 1]
  double firi_h = 0;  ///< 1 - (d - e)/(d + e) = 2e/(d + e), in [0, 2]
  double firi_v = 0;  ///< 1 + (d - e)/(d + e) = 2d/(d + e), in [0, 2]
  std::optional<double> gear;  ///< d / e
  double pi = 0;      ///< (a - (e - d)) / a, evaluated with the record's assets
};

/// Index family from raw amounts, taking assets a = d + e.
/// Throws Error(DegenerateRecord) unless d + e > 0.
RiskIndexSet compute_indices(double debt, double equity);

/// Index family for a record; pi uses the record's own assets column.
RiskIndexSet compute_indices(const BalanceSheetRecord& rec);

/// Fraction of assets at risk: (a - (e - d)) / a. Throws Error(ZeroAssets) for a == 0.
double pi_fraction(double assets, double debt, double equity);

struct ScoredRecord {
  std::string key;
  RiskIndexSet indices;
};

/// One index set per record, in panel order.
std::vector<ScoredRecord> score_panel(const Panel& panel);

}  // namespace irbox
