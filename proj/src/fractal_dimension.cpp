#include "irbox/fractal_dimension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "irbox/error.hpp"

namespace irbox {
namespace {

constexpr int kMaxGridLog2 = 14;

void check_grid(int m) {
  if (m < 0 || m > kMaxGridLog2) {
    throw std::out_of_range("grid scale must lie in [0, " + std::to_string(kMaxGridLog2) + "]");
  }
}

void check_window(ScaleWindow window) {
  if (window.m_min < 0 || window.m_max - window.m_min < 2) {
    throw Error(ErrorCode::InsufficientScales,
                "window " + std::to_string(window.m_min) + ".." + std::to_string(window.m_max) +
                    " holds fewer than three scales");
  }
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace

std::uint64_t box_count(std::span<const DyadicTriangle> triangles, int m, CellRule rule) {
  check_grid(m);
  int resolution = m;
  for (const auto& t : triangles) resolution = std::max(resolution, t.leg_log2);
  if (resolution > 62 - 2) throw std::out_of_range("triangle resolution too fine");

  const std::int64_t cells = std::int64_t{1} << m;
  const std::int64_t cell = std::int64_t{1} << (resolution - m);
  const std::int64_t extent = std::int64_t{1} << resolution;
  std::vector<bool> occupied(static_cast<std::size_t>(cells * cells), false);

  for (const auto& t : triangles) {
    const int shift = resolution - t.leg_log2;
    const std::int64_t leg = std::int64_t{1} << shift;
    const std::int64_t cx = t.corner_x << shift;
    const std::int64_t cy = t.corner_y << shift;
    const int dx = t.leg_dx();
    const int dy = t.leg_dy();
    const std::int64_t x0 = std::min(cx, cx + dx * leg);
    const std::int64_t x1 = std::max(cx, cx + dx * leg);
    const std::int64_t y0 = std::min(cy, cy + dy * leg);
    const std::int64_t y1 = std::max(cy, cy + dy * leg);
    if (x0 < 0 || y0 < 0 || x1 > extent || y1 > extent) {
      throw std::out_of_range("triangle leaves the unit square");
    }
    // Closed cells [i*cell, (i+1)*cell] meeting [x0, x1], or open cells
    // meeting (x0, x1).
    const bool closed = rule == CellRule::Closed;
    const std::int64_t i_lo = std::max<std::int64_t>(0, closed ? ceil_div(x0, cell) - 1 : floor_div(x0, cell));
    const std::int64_t i_hi = std::min(cells - 1, closed ? floor_div(x1, cell) : ceil_div(x1, cell) - 1);
    const std::int64_t j_lo = std::max<std::int64_t>(0, closed ? ceil_div(y0, cell) - 1 : floor_div(y0, cell));
    const std::int64_t j_hi = std::min(cells - 1, closed ? floor_div(y1, cell) : ceil_div(y1, cell) - 1);
    const std::int64_t reach = closed ? leg : leg - 1;
    for (std::int64_t j = j_lo; j <= j_hi; ++j) {
      const std::int64_t ry0 = std::max(y0, j * cell);
      const std::int64_t ry1 = std::min(y1, (j + 1) * cell);
      // Leg-coordinate sum is linear, so its minimum over the cell/bbox overlap
      // sits at the corner nearest the right angle.
      const std::int64_t v = dy > 0 ? ry0 - cy : cy - ry1;
      for (std::int64_t i = i_lo; i <= i_hi; ++i) {
        const std::int64_t rx0 = std::max(x0, i * cell);
        const std::int64_t rx1 = std::min(x1, (i + 1) * cell);
        const std::int64_t u = dx > 0 ? rx0 - cx : cx - rx1;
        if (u + v <= reach) occupied[static_cast<std::size_t>(j * cells + i)] = true;
      }
    }
  }
  return static_cast<std::uint64_t>(std::count(occupied.begin(), occupied.end(), true));
}

std::uint64_t box_count(const GasketState& gasket, int m, CountTarget target, CellRule rule) {
  if (target == CountTarget::GasketLimit && m > gasket.depth) {
    throw Error(ErrorCode::ScaleFinerThanDepth,
                "scale " + std::to_string(m) + " is finer than depth " +
                    std::to_string(gasket.depth));
  }
  return box_count(std::span<const DyadicTriangle>(gasket.remaining), m, rule);
}

std::uint64_t box_count(std::span<const PlanePoint> points, int m) {
  check_grid(m);
  const std::int64_t cells = std::int64_t{1} << m;
  std::vector<bool> occupied(static_cast<std::size_t>(cells * cells), false);
  // Scaling by 2^m is exact in binary floating point.
  auto cell_range = [cells, m](double coord) {
    const double t = std::ldexp(coord, m);
    const double f = std::floor(t);
    auto hi = static_cast<std::int64_t>(f);
    std::int64_t lo = (t == f) ? hi - 1 : hi;
    return std::pair{std::max<std::int64_t>(0, lo), std::min(cells - 1, hi)};
  };
  for (const auto& p : points) {
    if (!(p.e >= 0.0 && p.e <= 1.0 && p.d >= 0.0 && p.d <= 1.0)) {
      throw std::out_of_range("point outside the unit square");
    }
    auto [i_lo, i_hi] = cell_range(p.e);
    auto [j_lo, j_hi] = cell_range(p.d);
    for (auto j = j_lo; j <= j_hi; ++j) {
      for (auto i = i_lo; i <= i_hi; ++i) occupied[static_cast<std::size_t>(j * cells + i)] = true;
    }
  }
  return static_cast<std::uint64_t>(std::count(occupied.begin(), occupied.end(), true));
}

BoxCountFit fit_dimension(std::span<const BoxCountSample> samples) {
  if (samples.size() < 3) {
    throw Error(ErrorCode::InsufficientScales, "need at least three scales for a slope");
  }
  BoxCountFit fit;
  fit.samples.assign(samples.begin(), samples.end());
  fit.window = {samples.front().scale_log2, samples.back().scale_log2};

  // log N / log 2^m == log2 N / m, so regress log2 N on m directly; this keeps
  // power-of-two counts exact.
  const auto n = static_cast<double>(samples.size());
  double mean_x = 0, mean_y = 0;
  for (const auto& s : samples) {
    if (s.occupied == 0) throw std::invalid_argument("box count of an empty set");
    mean_x += s.scale_log2;
    mean_y += std::log2(static_cast<double>(s.occupied));
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& s : samples) {
    const double dx = s.scale_log2 - mean_x;
    const double dy = std::log2(static_cast<double>(s.occupied)) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw Error(ErrorCode::InsufficientScales, "all samples share one scale");
  fit.dimension = sxy / sxx;
  // A constant count is fitted perfectly by a zero slope.
  fit.fit_quality = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

BoxCountFit fit_dimension(std::span<const DyadicTriangle> triangles, int depth,
                          ScaleWindow window, CountTarget target, CellRule rule) {
  check_window(window);
  if (target == CountTarget::GasketLimit && window.m_max > depth) {
    throw Error(ErrorCode::ScaleFinerThanDepth,
                "window reaches scale " + std::to_string(window.m_max) + " beyond depth " +
                    std::to_string(depth));
  }
  std::vector<BoxCountSample> samples;
  for (int m = window.m_min; m <= window.m_max; ++m) {
    samples.push_back({m, box_count(triangles, m, rule)});
  }
  return fit_dimension(samples);
}

BoxCountFit fit_dimension(const GasketState& gasket, ScaleWindow window, CountTarget target,
                          CellRule rule) {
  return fit_dimension(gasket.remaining, gasket.depth, window, target, rule);
}

BoxCountFit fit_dimension(std::span<const PlanePoint> points, ScaleWindow window) {
  check_window(window);
  std::vector<BoxCountSample> samples;
  for (int m = window.m_min; m <= window.m_max; ++m) {
    samples.push_back({m, box_count(points, m)});
  }
  return fit_dimension(samples);
}

ScaleWindow default_window(int depth) { return {3, depth - 1}; }

}  // namespace irbox
