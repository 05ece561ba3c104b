#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "irbox/fractal_gasket.hpp"
#include "irbox/irbox_geometry.hpp"

namespace irbox {

struct ScaleWindow {
  int m_min = 3;
  int m_max = 9;
};

struct BoxCountSample {
  int scale_log2 = 0;           ///< grid of 2^m x 2^m cells over the unit square
  std::uint64_t occupied = 0;   ///< N(m)
};

struct BoxCountFit {
  std::vector<BoxCountSample> samples;
  double dimension = 0;    ///< OLS slope of log N(m) against log 2^m
  double fit_quality = 0;  ///< coefficient of determination
  ScaleWindow window;
};

/// What a triangle list stands for when counted below its own resolution.
enum class CountTarget {
  /// The limit set the gasket approximates; scales finer than the depth are refused.
  GasketLimit,
  /// The filled triangles themselves, at any scale (the depth-0 state is the square).
  FilledTriangles,
};

/// When a grid cell counts as occupied by a triangle set.
enum class CellRule {
  /// The open cell meets the set: cells touching it only along an edge or at
  /// a corner are skipped. For the gasket at m <= depth this gives
  /// N(m) = 2*3^m - 2^m.
  Interior,
  /// The closed cell meets the closed set, so edge and corner contact counts.
  Closed,
};

/// Number of cells of the 2^m dyadic grid on [0,1]^2 occupied by the union of
/// the triangles under `rule`. Exact integer geometry.
std::uint64_t box_count(std::span<const DyadicTriangle> triangles, int m,
                        CellRule rule = CellRule::Interior);

/// Throws Error(ScaleFinerThanDepth) if m > depth for CountTarget::GasketLimit.
std::uint64_t box_count(const GasketState& gasket, int m,
                        CountTarget target = CountTarget::GasketLimit,
                        CellRule rule = CellRule::Interior);

/// Closed-cell count for points (a point has no interior) in [0,1]^2; a point on a grid line sits in
/// every cell sharing it.
std::uint64_t box_count(std::span<const PlanePoint> points, int m);

/// Least-squares slope over the samples. Throws Error(InsufficientScales) for
/// fewer than three samples.
BoxCountFit fit_dimension(std::span<const BoxCountSample> samples);

BoxCountFit fit_dimension(const GasketState& gasket, ScaleWindow window,
                          CountTarget target = CountTarget::GasketLimit,
                          CellRule rule = CellRule::Interior);
BoxCountFit fit_dimension(std::span<const DyadicTriangle> triangles, int depth,
                          ScaleWindow window, CountTarget target = CountTarget::GasketLimit,
                          CellRule rule = CellRule::Interior);
BoxCountFit fit_dimension(std::span<const PlanePoint> points, ScaleWindow window);

/// Skips m = 0..2 and the depth itself: (3, depth - 1).
ScaleWindow default_window(int depth);

}  // namespace irbox
