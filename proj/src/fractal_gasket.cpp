#include "irbox/fractal_gasket.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "irbox/error.hpp"

namespace irbox {
namespace {

constexpr int kMaxLegLog2 = 30;

void check_leg(int leg_log2) {
  if (leg_log2 < 0 || leg_log2 > kMaxLegLog2) {
    throw std::out_of_range("triangle leg_log2 outside [0, 30]");
  }
}

// Per-leg histogram; every sum over a triangle list reduces to it.
std::array<std::uint64_t, kMaxLegLog2 + 1> leg_histogram(std::span<const DyadicTriangle> ts) {
  std::array<std::uint64_t, kMaxLegLog2 + 1> counts{};
  for (const auto& t : ts) {
    check_leg(t.leg_log2);
    ++counts[static_cast<std::size_t>(t.leg_log2)];
  }
  return counts;
}

Rational count_times(std::uint64_t count, const Rational& unit) {
  return Rational(static_cast<std::int64_t>(count)) * unit;
}

}  // namespace

Dyadic Dyadic::from_units(std::int64_t units, int exponent) {
  Dyadic out{units, exponent};
  if (units == 0) return {0, 0};
  while (out.exponent > 0 && (out.numerator & 1) == 0) {
    out.numerator /= 2;
    --out.exponent;
  }
  return out;
}

std::int64_t Dyadic::to_units(int target) const {
  if (exponent > target) throw std::invalid_argument("dyadic finer than target grid");
  return numerator * (std::int64_t{1} << (target - exponent));
}

Rational Dyadic::to_rational() const { return Rational(numerator) * Rational::power_of_two(-exponent); }

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(numerator), -exponent); }

int DyadicTriangle::leg_dx() const noexcept {
  return (right_angle == RightAngle::SouthWest || right_angle == RightAngle::NorthWest) ? 1 : -1;
}

int DyadicTriangle::leg_dy() const noexcept {
  return (right_angle == RightAngle::SouthWest || right_angle == RightAngle::SouthEast) ? 1 : -1;
}

std::array<DyadicPoint, 3> DyadicTriangle::vertices() const {
  auto at = [this](std::int64_t ux, std::int64_t uy) {
    return DyadicPoint{Dyadic::from_units(ux, leg_log2), Dyadic::from_units(uy, leg_log2)};
  };
  return {at(corner_x, corner_y), at(corner_x + leg_dx(), corner_y),
          at(corner_x, corner_y + leg_dy())};
}

Rational DyadicTriangle::area() const { return Rational::power_of_two(-2 * leg_log2 - 1); }

Rational DyadicTriangle::perimeter_coefficient() const { return Rational::power_of_two(-leg_log2); }

std::array<DyadicTriangle, 3> DyadicTriangle::corner_children() const {
  const std::int32_t m = leg_log2 + 1;
  const std::int64_t cx = 2 * corner_x;
  const std::int64_t cy = 2 * corner_y;
  return {DyadicTriangle{m, cx, cy, right_angle},
          DyadicTriangle{m, cx + leg_dx(), cy, right_angle},
          DyadicTriangle{m, cx, cy + leg_dy(), right_angle}};
}

DyadicTriangle DyadicTriangle::medial() const {
  // Right angle at the hypotenuse midpoint, legs pointing back at the corner.
  RightAngle opposite = RightAngle::SouthWest;
  switch (right_angle) {
    case RightAngle::SouthWest: opposite = RightAngle::NorthEast; break;
    case RightAngle::SouthEast: opposite = RightAngle::NorthWest; break;
    case RightAngle::NorthWest: opposite = RightAngle::SouthEast; break;
    case RightAngle::NorthEast: opposite = RightAngle::SouthWest; break;
  }
  return {leg_log2 + 1, 2 * corner_x + leg_dx(), 2 * corner_y + leg_dy(), opposite};
}

bool DyadicTriangle::contains(const Rational& x, const Rational& y) const {
  const Rational scale = Rational::power_of_two(leg_log2);
  // Local leg coordinates: u, v >= 0 and u + v <= 1 inside.
  Rational u = (x * scale - Rational(corner_x)) * Rational(leg_dx());
  Rational v = (y * scale - Rational(corner_y)) * Rational(leg_dy());
  return u >= Rational(0) && v >= Rational(0) && u + v <= Rational(1);
}

DyadicPoint ContractionMap::apply(const DyadicPoint& p) const {
  auto mid = [](const Dyadic& a, const Dyadic& b) {
    int e = std::max(a.exponent, b.exponent) + 1;
    return Dyadic::from_units((a.to_units(e - 1) + b.to_units(e - 1)), e);
  };
  return {mid(p.x, fixed_point.x), mid(p.y, fixed_point.y)};
}

DyadicTriangle ContractionMap::apply(const DyadicTriangle& t) const {
  // A positive homothety keeps orientation and halves the leg.
  DyadicPoint corner = apply(t.vertices()[0]);
  const int m = t.leg_log2 + 1;
  return {m, corner.x.to_units(m), corner.y.to_units(m), t.right_angle};
}

std::array<ContractionMap, 3> contraction_maps(const DyadicTriangle& parent) {
  auto v = parent.vertices();
  return {ContractionMap{v[0]}, ContractionMap{v[1]}, ContractionMap{v[2]}};
}

GasketState initial_state() {
  GasketState state;
  state.depth = 0;
  // Below the diagonal (e > d): vertices (0,0), (1,0), (1,1).
  state.remaining.push_back({0, 1, 0, RightAngle::SouthEast});
  // Above the diagonal (d > e): vertices (0,0), (0,1), (1,1).
  state.remaining.push_back({0, 0, 1, RightAngle::NorthWest});
  state.area_removed = Rational(0);
  state.perimeter_coefficient = enumerated_perimeter_coefficient(state.remaining);
  return state;
}

GasketState iterate(const GasketState& state, const GasketLimits& limits) {
  if (state.depth + 1 > limits.depth_cap) {
    throw Error(ErrorCode::DepthLimit, "depth " + std::to_string(state.depth + 1) +
                                           " exceeds cap " + std::to_string(limits.depth_cap));
  }
  if (state.depth + 1 > kMaxLegLog2) {
    throw Error(ErrorCode::DepthLimit, "depth beyond exact 64-bit dyadic range");
  }
  GasketState next;
  next.depth = state.depth + 1;
  next.remaining.reserve(state.remaining.size() * 3);
  std::vector<DyadicTriangle> removed;
  removed.reserve(state.remaining.size());
  for (const auto& t : state.remaining) {
    for (const auto& child : t.corner_children()) next.remaining.push_back(child);
    removed.push_back(t.medial());
  }
  next.removed_last_step = removed.size();
  next.removed_count_total = state.removed_count_total + removed.size();
  next.area_removed = state.area_removed + enumerated_area(removed);
  next.perimeter_coefficient = enumerated_perimeter_coefficient(next.remaining);
  return next;
}

GasketState build_gasket(int depth, const GasketLimits& limits) {
  if (depth < 0) throw std::invalid_argument("depth must be non-negative");
  if (depth > limits.depth_cap) {
    throw Error(ErrorCode::DepthLimit, "depth " + std::to_string(depth) + " exceeds cap " +
                                           std::to_string(limits.depth_cap));
  }
  GasketState state = initial_state();
  while (state.depth < depth) state = iterate(state, limits);
  return state;
}

Rational enumerated_area(std::span<const DyadicTriangle> triangles) {
  auto counts = leg_histogram(triangles);
  Rational total(0);
  for (int m = 0; m <= kMaxLegLog2; ++m) {
    if (counts[m] != 0) total += count_times(counts[m], Rational::power_of_two(-2 * m - 1));
  }
  return total;
}

Rational enumerated_perimeter_coefficient(std::span<const DyadicTriangle> triangles) {
  auto counts = leg_histogram(triangles);
  Rational total(0);
  for (int m = 0; m <= kMaxLegLog2; ++m) {
    if (counts[m] != 0) total += count_times(counts[m], Rational::power_of_two(-m));
  }
  return total;
}

Rational closed_form_area_removed(int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  return Rational(1) - Rational::pow(Rational(3, 4), k);
}

Rational closed_form_perimeter(int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  return Rational(2) * Rational::pow(Rational(3, 2), k);
}

Rational cumulative_perimeter_series(int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  return Rational(3) * (Rational::pow(Rational(3, 2), k) - Rational(1));
}

double perimeter_value(const Rational& coefficient) {
  return coefficient.to_double() * (2.0 + std::sqrt(2.0));
}

// ---- binary triangle list ---------------------------------------------------

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  using U = std::make_unsigned_t<T>;
  auto bits = static_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.put(static_cast<char>((bits >> (8 * i)) & 0xFF));
  }
}

template <typename T>
T get_le(std::istream& in) {
  using U = std::make_unsigned_t<T>;
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    int c = in.get();
    if (c == std::char_traits<char>::eof()) {
      throw Error(ErrorCode::MalformedInput, "truncated triangle list");
    }
    bits |= static_cast<U>(static_cast<U>(static_cast<unsigned char>(c)) << (8 * i));
  }
  return static_cast<T>(bits);
}

constexpr char kMagic[4] = {'I', 'R', 'G', 'T'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

void write_triangle_list(std::ostream& out, int depth, std::span<const DyadicTriangle> triangles) {
  out.write(kMagic, sizeof kMagic);
  put_le<std::uint32_t>(out, kVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(depth));
  put_le<std::uint64_t>(out, triangles.size());
  for (const auto& t : triangles) {
    auto corner = t.vertices()[0];
    put_le<std::int32_t>(out, t.leg_log2);
    put_le<std::uint8_t>(out, static_cast<std::uint8_t>(t.right_angle));
    put_le<std::int64_t>(out, corner.x.numerator);
    put_le<std::int32_t>(out, corner.x.exponent);
    put_le<std::int64_t>(out, corner.y.numerator);
    put_le<std::int32_t>(out, corner.y.exponent);
  }
}

TriangleList read_triangle_list(std::istream& in) {
  char magic[4] = {};
  in.read(magic, sizeof magic);
  if (!in || std::string(magic, 4) != std::string(kMagic, 4)) {
    throw Error(ErrorCode::MalformedInput, "not a triangle list (bad magic)");
  }
  if (auto version = get_le<std::uint32_t>(in); version != kVersion) {
    throw Error(ErrorCode::MalformedInput, "unsupported triangle list version " +
                                               std::to_string(version));
  }
  TriangleList list;
  list.depth = static_cast<int>(get_le<std::uint32_t>(in));
  auto count = get_le<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < count; ++i) {
    DyadicTriangle t;
    t.leg_log2 = get_le<std::int32_t>(in);
    auto angle = get_le<std::uint8_t>(in);
    Dyadic x{get_le<std::int64_t>(in), get_le<std::int32_t>(in)};
    Dyadic y{get_le<std::int64_t>(in), get_le<std::int32_t>(in)};
    if (t.leg_log2 < 0 || t.leg_log2 > kMaxLegLog2 || angle > 3 || x.exponent < 0 ||
        y.exponent < 0 || x.exponent > t.leg_log2 || y.exponent > t.leg_log2) {
      throw Error(ErrorCode::MalformedInput, "triangle " + std::to_string(i) + " is malformed");
    }
    t.right_angle = static_cast<RightAngle>(angle);
    t.corner_x = x.to_units(t.leg_log2);
    t.corner_y = y.to_units(t.leg_log2);
    list.triangles.push_back(t);
  }
  return list;
}

}  // namespace irbox
