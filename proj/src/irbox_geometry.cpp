#include "irbox/irbox_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace irbox {

bool IRBox::contains(PlanePoint p) const {
  double lo = e_min.value_or(0.0);
  return p.e >= lo && p.e <= side && p.d >= 0.0 && p.d <= side;
}

IRBox build_irbox(std::span<const PlanePoint> points) {
  IRBox box;
  double lowest_e = 0.0;
  for (const auto& p : points) {
    box.side = std::max({box.side, p.d, p.e});
    lowest_e = std::min(lowest_e, p.e);
  }
  box.area = box.side * box.side;
  if (lowest_e < 0.0) box.e_min = lowest_e;
  return box;
}

IRBox build_irbox(const Panel& panel) {
  std::vector<PlanePoint> points;
  points.reserve(panel.size());
  for (const auto& rec : panel.records()) points.push_back({rec.e(), rec.d()});
  IRBox box = build_irbox(points);
  // Validation already keeps e >= 0 outside distress mode; this only
  // documents the contract.
  if (!panel.distress_mode()) box.e_min.reset();
  return box;
}

std::string_view to_string(IsoclineKind kind) {
  switch (kind) {
    case IsoclineKind::TotalRisk: return "tr";
    case IsoclineKind::NetRisk: return "nr";
    case IsoclineKind::AssetCapitalOverlap: return "aco";
    case IsoclineKind::FiriRay: return "firi";
  }
  return "?";
}

Isocline total_risk_locus(const IRBox& box, double level) {
  Isocline out{IsoclineKind::TotalRisk, level, {}};
  const double s = box.side;
  if (level < 0.0 || level > 2.0 * s) return out;
  if (level <= s) {
    out.segments.push_back({{level, 0.0}, {0.0, level}});
  } else {
    out.segments.push_back({{s, level - s}, {level - s, s}});
  }
  return out;
}

Isocline net_risk_locus(const IRBox& box, double level) {
  Isocline out{IsoclineKind::NetRisk, level, {}};
  const double s = box.side;
  if (level < 0.0 || level > s) return out;
  // d - e = level (debt side) then e - d = level (equity side).
  out.segments.push_back({{0.0, level}, {s - level, s}});
  if (level > 0.0) out.segments.push_back({{level, 0.0}, {s, s - level}});
  return out;
}

Isocline aco_locus(const IRBox& box, double level) {
  Isocline out{IsoclineKind::AssetCapitalOverlap, level, {}};
  const double s = box.side;
  const double half = level / 2.0;
  if (level < 0.0 || half > s) return out;
  out.segments.push_back({{half, half}, {s, half}});
  out.segments.push_back({{half, half}, {half, s}});
  return out;
}

Isocline firi_rays(const IRBox& box, double level) {
  auto [lower, upper] = firi_ray_slopes(level);
  Isocline out{IsoclineKind::FiriRay, level, {}};
  const double s = box.side;
  auto ray = [s](double slope) -> Segment {
    if (slope <= 1.0) return {{0.0, 0.0}, {s, slope * s}};
    return {{0.0, 0.0}, {s / slope, s}};
  };
  out.segments.push_back(ray(lower));
  if (upper != lower) out.segments.push_back(ray(upper));
  return out;
}

Segment unity_line(const IRBox& box) { return {{0.0, 0.0}, {box.side, box.side}}; }

std::pair<double, double> firi_ray_slopes(double level) {
  if (!(level > 0.0 && level <= 1.0)) {
    throw Error(ErrorCode::OutOfRange,
                "FIRI ray level must lie in (0, 1], got " + std::to_string(level));
  }
  return {level / (2.0 - level), (2.0 - level) / level};
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::AboveUnity: return "AboveUnity";
    case Region::OnUnity: return "OnUnity";
    case Region::BelowUnity: return "BelowUnity";
    case Region::Distress: return "Distress";
  }
  return "?";
}

Region classify_point(double debt, double equity) {
  if (equity <= 0.0) return Region::Distress;
  if (debt > equity) return Region::AboveUnity;
  if (debt < equity) return Region::BelowUnity;
  return Region::OnUnity;
}

Region classify_point(const BalanceSheetRecord& rec) {
  // Exact decimal comparison so ties are never lost to rounding.
  if (rec.equity.sign() <= 0) return Region::Distress;
  if (rec.debt > rec.equity) return Region::AboveUnity;
  if (rec.debt < rec.equity) return Region::BelowUnity;
  return Region::OnUnity;
}

double empirical_insolvency_probability(std::span<const PlanePoint> points) {
  std::size_t conditioning = 0;
  std::size_t insolvent = 0;
  for (const auto& p : points) {
    if (p.d > 0.0) {
      ++conditioning;
      if (p.e <= 0.0) ++insolvent;
    }
  }
  if (conditioning == 0) {
    throw Error(ErrorCode::NoDebtPositiveRecords, "no observation has d > 0");
  }
  return static_cast<double>(insolvent) / static_cast<double>(conditioning);
}

double geometric_insolvency_probability(const IRBox& box) {
  if (!box.e_min || !(*box.e_min < 0.0)) {
    throw Error(ErrorCode::NoDistressExtension, "box has no negative-equity extension");
  }
  if (!(box.side > 0.0)) {
    throw Error(ErrorCode::NoDebtPositiveRecords, "box has no positive-debt extent");
  }
  return -*box.e_min / (box.side - *box.e_min);
}

double insolvency_probability(const Panel& panel, ProbabilityMethod method) {
  if (method == ProbabilityMethod::UniformGeometric) {
    return geometric_insolvency_probability(build_irbox(panel));
  }
  std::vector<PlanePoint> points;
  points.reserve(panel.size());
  for (const auto& rec : panel.records()) points.push_back({rec.e(), rec.d()});
  return empirical_insolvency_probability(points);
}

}  // namespace irbox
