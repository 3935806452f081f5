#pragma once

// Synthetic point sets. All coordinates are integers well inside the exact
// range, and every distribution except grid-collinear is redrawn point by
// point until no three points are collinear.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mer/error.hpp"
#include "mer/geom.hpp"
#include "mer/rng.hpp"

namespace mer {

enum class Distribution { uniform_square, gaussian, convex_position, grid_collinear };

inline const char* to_string(Distribution d) {
  switch (d) {
    case Distribution::uniform_square: return "uniform-square";
    case Distribution::gaussian: return "gaussian";
    case Distribution::convex_position: return "convex-position";
    case Distribution::grid_collinear: return "grid-collinear";
  }
  return "?";
}

inline std::optional<Distribution> parse_distribution(const std::string& s) {
  for (Distribution d : {Distribution::uniform_square, Distribution::gaussian, Distribution::convex_position,
                         Distribution::grid_collinear}) {
    if (s == to_string(d)) return d;
  }
  return std::nullopt;
}

namespace detail {

inline constexpr double kHalfSquare = 500000.0;
inline constexpr double kGaussianSigma = 100000.0;
inline constexpr double kEllipseA = 500000.0;
inline constexpr double kEllipseB = 350000.0;

inline Point draw_base_point(Distribution dist, std::size_t i, std::size_t n, Rng& rng) {
  switch (dist) {
    case Distribution::uniform_square: {
      const auto h = static_cast<std::int64_t>(kHalfSquare);
      return {static_cast<double>(rng.between(-h, h)), static_cast<double>(rng.between(-h, h))};
    }
    case Distribution::gaussian: {
      auto coord = [&] { return std::clamp(std::round(kGaussianSigma * rng.normal()), -kHalfSquare, kHalfSquare); };
      const double x = coord();
      return {x, coord()};
    }
    case Distribution::convex_position: {
      // Even spacing with a small jitter keeps the points in convex position.
      const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
      const double angle = step * (static_cast<double>(i) + 0.25 * (rng.uniform01() - 0.5));
      return {std::round(kEllipseA * std::cos(angle)), std::round(kEllipseB * std::sin(angle))};
    }
    case Distribution::grid_collinear: break;
  }
  return {};
}

inline Point draw_outlier(double radius, Rng& rng) {
  const double angle = 2.0 * std::numbers::pi * rng.uniform01();
  const double r = radius * (1.5 + 0.5 * rng.uniform01());
  return {std::round(r * std::cos(angle)), std::round(r * std::sin(angle))};
}

inline std::vector<Point> grid_with_collinear_run(std::size_t n, Rng& rng) {
  const auto side = static_cast<std::int64_t>(std::ceil(std::sqrt(3.0 * static_cast<double>(n)))) + 2;
  std::set<std::pair<std::int64_t, std::int64_t>> used;
  std::vector<Point> pts;
  // A planted run of three equally spaced grid points.
  for (;;) {
    const std::int64_t dx = rng.between(-2, 2), dy = rng.between(-2, 2);
    if (dx == 0 && dy == 0) continue;
    const std::int64_t x0 = rng.between(0, side - 1), y0 = rng.between(0, side - 1);
    const std::int64_t x2 = x0 + 2 * dx, y2 = y0 + 2 * dy;
    if (x2 < 0 || x2 >= side || y2 < 0 || y2 >= side) continue;
    for (std::int64_t k = 0; k < 3 && pts.size() < n; ++k) {
      used.insert({x0 + k * dx, y0 + k * dy});
      pts.push_back({static_cast<double>(x0 + k * dx), static_cast<double>(y0 + k * dy)});
    }
    break;
  }
  while (pts.size() < n) {
    const std::int64_t x = rng.between(0, side - 1), y = rng.between(0, side - 1);
    if (used.insert({x, y}).second) pts.push_back({static_cast<double>(x), static_cast<double>(y)});
  }
  return pts;
}

}  // namespace detail

/// n points from `dist` followed by `outliers` far-away points, all drawn from `seed`.
inline std::vector<Point> generate(Distribution dist, std::size_t n, std::uint64_t seed, std::size_t outliers = 0) {
  if (n < 3) throw Error(ErrorCode::InvalidParameter, "generators need n >= 3");
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(dist) + 100));
  std::vector<Point> pts;
  if (dist == Distribution::grid_collinear) {
    pts = detail::grid_with_collinear_run(n, rng);
  } else {
    pts.reserve(n + outliers);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(detail::draw_base_point(dist, i, n, rng));
  }
  double radius = 1.0;
  for (const Point& p : pts) radius = std::max({radius, std::fabs(p.x), std::fabs(p.y)});
  for (std::size_t i = 0; i < outliers; ++i) pts.push_back(detail::draw_outlier(radius, rng));
  if (dist == Distribution::grid_collinear) return pts;

  // Redraw one point of each collinear triple (or coincident pair) until none is left.
  for (;;) {
    const auto triple = find_collinear_triple(PointSet(pts, true));
    if (!triple) break;
    const std::size_t i = std::max({(*triple)[0], (*triple)[1], (*triple)[2]});
    pts[i] = i < n ? detail::draw_base_point(dist, i, n, rng) : detail::draw_outlier(radius, rng);
  }
  return pts;
}

}  // namespace mer
