#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "irbox/core_model.hpp"

namespace irbox {

/// A point of the risk plane. Horizontal axis is equity, vertical is debt.
struct PlanePoint {
  double e = 0;
  double d = 0;
  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

struct Segment {
  PlanePoint from;
  PlanePoint to;
};

/// Insolvency Risk Box: the square [0, side]^2 in (e, d), optionally extended
/// left to e_min < 0 when the panel holds distressed firms.
struct IRBox {
  double side = 0;
  double area = 0;
  std::optional<double> e_min;

  [[nodiscard]] bool contains(PlanePoint p) const;
};

IRBox build_irbox(const Panel& panel);
/// Box over raw points; e_min is set iff some point has e < 0.
IRBox build_irbox(std::span<const PlanePoint> points);

enum class IsoclineKind { TotalRisk, NetRisk, AssetCapitalOverlap, FiriRay };

std::string_view to_string(IsoclineKind kind);

/// Locus of constant index value, clipped to the first-quadrant square.
struct Isocline {
  IsoclineKind kind;
  double level;
  std::vector<Segment> segments;
};

/// d + e = level.
Isocline total_risk_locus(const IRBox& box, double level);
/// |d - e| = level: two slope +1 segments.
Isocline net_risk_locus(const IRBox& box, double level);
/// 2 min(d, e) = level: the L-shaped pair d = level/2 (e >= level/2) and
/// e = level/2 (d >= level/2).
Isocline aco_locus(const IRBox& box, double level);
/// FIRI = level: two rays from the origin.
Isocline firi_rays(const IRBox& box, double level);
/// d = e.
Segment unity_line(const IRBox& box);

/// Slopes d/e of the two equi-FIRI rays for level c in (0, 1]:
/// (c / (2 - c), (2 - c) / c). Throws Error(OutOfRange).
std::pair<double, double> firi_ray_slopes(double level);

enum class Region { AboveUnity, OnUnity, BelowUnity, Distress };

std::string_view to_string(Region region);

Region classify_point(double debt, double equity);
Region classify_point(const BalanceSheetRecord& rec);

enum class ProbabilityMethod { Empirical, UniformGeometric };

/// P(e <= 0 | d > 0).
///
/// Empirical counts panel records; UniformGeometric is the share of the
/// distress-extended box [e_min, side] x (0, side] lying at e <= 0 under the
/// uniform measure. Throws Error(NoDebtPositiveRecords) or
/// Error(NoDistressExtension).
double insolvency_probability(const Panel& panel, ProbabilityMethod method);
double empirical_insolvency_probability(std::span<const PlanePoint> points);
double geometric_insolvency_probability(const IRBox& box);

}  // namespace irbox
