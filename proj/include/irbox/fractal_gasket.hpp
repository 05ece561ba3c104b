#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "irbox/rational.hpp"

namespace irbox {

/// Exact dyadic rational numerator / 2^exponent, normalized so the numerator
/// is odd (or the value is 0/2^0).
struct Dyadic {
  std::int64_t numerator = 0;
  std::int32_t exponent = 0;

  static Dyadic from_units(std::int64_t units, int exponent);
  /// Numerator over 2^exponent; requires this->exponent <= exponent.
  [[nodiscard]] std::int64_t to_units(int exponent) const;
  [[nodiscard]] Rational to_rational() const;
  [[nodiscard]] double to_double() const;

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
};

struct DyadicPoint {
  Dyadic x;  // equity axis
  Dyadic y;  // debt axis
  friend bool operator==(const DyadicPoint&, const DyadicPoint&) = default;
};

/// Corner of the triangle's bounding square that holds the right angle. The
/// legs run from it along the two adjacent sides of that square.
enum class RightAngle : std::uint8_t { SouthWest = 0, SouthEast = 1, NorthWest = 2, NorthEast = 3 };

/// Right isosceles triangle with axis-parallel legs of length 2^-leg_log2 and
/// its right-angle corner at (corner_x, corner_y) * 2^-leg_log2.
struct DyadicTriangle {
  std::int32_t leg_log2 = 0;
  std::int64_t corner_x = 0;
  std::int64_t corner_y = 0;
  RightAngle right_angle = RightAngle::SouthWest;

  /// Leg directions as (+1 | -1) along x and y.
  [[nodiscard]] int leg_dx() const noexcept;
  [[nodiscard]] int leg_dy() const noexcept;

  /// Right-angle corner first, then the x-leg end, then the y-leg end.
  [[nodiscard]] std::array<DyadicPoint, 3> vertices() const;
  [[nodiscard]] Rational area() const;
  /// q with perimeter = q * (2 + sqrt 2); equals the leg length.
  [[nodiscard]] Rational perimeter_coefficient() const;

  /// The three corner sub-triangles kept by one subdivision step.
  [[nodiscard]] std::array<DyadicTriangle, 3> corner_children() const;
  /// The medial triangle removed by one subdivision step.
  [[nodiscard]] DyadicTriangle medial() const;

  /// Closed-set membership, exact.
  [[nodiscard]] bool contains(const Rational& x, const Rational& y) const;

  friend bool operator==(const DyadicTriangle&, const DyadicTriangle&) = default;
};

/// Similarity p -> (p + fixed_point) / 2.
struct ContractionMap {
  DyadicPoint fixed_point;

  [[nodiscard]] DyadicPoint apply(const DyadicPoint& p) const;
  [[nodiscard]] DyadicTriangle apply(const DyadicTriangle& t) const;
};

/// The three half-scale maps fixing each vertex of `parent`.
std::array<ContractionMap, 3> contraction_maps(const DyadicTriangle& parent);

struct GasketLimits {
  int depth_cap = 12;
};

struct GasketState {
  int depth = 0;
  std::vector<DyadicTriangle> remaining;
  std::uint64_t removed_last_step = 0;
  std::uint64_t removed_count_total = 0;
  Rational area_removed;
  /// Total perimeter of the remaining triangles is this times (2 + sqrt 2).
  Rational perimeter_coefficient;
};

/// Depth 0: the unit square cut along d = e into two unit right triangles.
GasketState initial_state();

/// One subdivision step on every remaining triangle. Area and perimeter are
/// re-accumulated by enumeration. Throws Error(DepthLimit) past the cap.
GasketState iterate(const GasketState& state, const GasketLimits& limits = {});

GasketState build_gasket(int depth, const GasketLimits& limits = {});

/// Sum of exact areas over a triangle list.
Rational enumerated_area(std::span<const DyadicTriangle> triangles);
/// Sum of perimeter coefficients over a triangle list.
Rational enumerated_perimeter_coefficient(std::span<const DyadicTriangle> triangles);

/// 1 - (3/4)^k.
Rational closed_form_area_removed(int k);
/// 2 (3/2)^k, the coefficient of (2 + sqrt 2) in the total perimeter.
Rational closed_form_perimeter(int k);
/// Partial sum 3/2 + 9/4 + ... + (3/2)^k = 3((3/2)^k - 1). This is a series
/// over iterations, not the perimeter at depth k; kept to report the gap
/// between the two.
Rational cumulative_perimeter_series(int k);

double perimeter_value(const Rational& coefficient);

/// Binary triangle list, little-endian:
///   "IRGT" | u32 version (1) | u32 depth | u64 count
///   count x { i32 leg_log2 | u8 right_angle |
///             i64 x_numerator | i32 x_exponent | i64 y_numerator | i32 y_exponent }
/// Coordinates are the right-angle corner as normalized dyadics.
void write_triangle_list(std::ostream& out, int depth, std::span<const DyadicTriangle> triangles);

struct TriangleList {
  int depth = 0;
  std::vector<DyadicTriangle> triangles;
};

/// Throws Error(MalformedInput) on a bad header, truncated body or a corner
/// that is not on the triangle's own dyadic grid.
TriangleList read_triangle_list(std::istream& in);

}  // namespace irbox
