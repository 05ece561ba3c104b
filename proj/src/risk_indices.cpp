#include "irbox/risk_indices.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "accurate_sum.hpp"

namespace irbox {

RiskIndexSet compute_indices(double debt, double equity) {
  RiskIndexSet out;
  out.tr = debt + equity;
  if (!(out.tr > 0.0)) {
    throw Error(ErrorCode::DegenerateRecord, "debt + equity must be positive");
  }
  out.nr = std::fabs(debt - equity);
  // 2 min(d, e) rather than tr - nr: no cancellation near the axes.
  out.aco = 2.0 * std::min(debt, equity);
  out.firi = out.aco / out.tr;
  out.firi_h = 2.0 * equity / out.tr;
  out.firi_v = 2.0 * debt / out.tr;
  if (equity != 0.0) out.gear = debt / equity;
  out.pi = pi_fraction(out.tr, debt, equity);
  return out;
}

RiskIndexSet compute_indices(const BalanceSheetRecord& rec) {
  RiskIndexSet out = compute_indices(rec.d(), rec.e());
  if (rec.assets.is_zero()) throw Error(ErrorCode::ZeroAssets, "pi needs non-zero assets");
  // The numerator a - (e - d) is exact in decimal; only the quotient rounds.
  try {
    out.pi = (rec.assets - rec.equity + rec.debt).to_double() / rec.a();
  } catch (const std::overflow_error&) {
    out.pi = pi_fraction(rec.a(), rec.d(), rec.e());
  }
  return out;
}

double pi_fraction(double assets, double debt, double equity) {
  if (assets == 0.0) throw Error(ErrorCode::ZeroAssets, "pi needs non-zero assets");
  // a - (e - d) as one compensated sum; the naive form cancels badly when d << e.
  return detail::accurate_sum({assets, -equity, debt}) / assets;
}

std::vector<ScoredRecord> score_panel(const Panel& panel) {
  std::vector<ScoredRecord> out;
  out.reserve(panel.size());
  for (const auto& rec : panel.records()) {
    try {
      out.push_back({rec.key(), compute_indices(rec)});
    } catch (const Error& err) {
      throw Error(err.code(), rec.key() + ": " + err.what());
    }
  }
  return out;
}

}  // namespace irbox
