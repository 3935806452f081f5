#pragma once

// Planar primitives shared by every stage of the solver.
//
// Coordinates are stored as doubles. In integer mode every coordinate is an
// integer with magnitude at most 2^20, so differences fit in 21 bits and every
// cross/dot product of differences fits in 44 bits: all of them are computed
// exactly in double precision. Areas are kept as exact rationals
// (numerator < 2^88, denominator < 2^44) and compared with 192-bit products.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mer/error.hpp"

namespace mer {

using u128 = unsigned __int128;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }

inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

/// Lexicographic (x, then y) order.
inline bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

inline constexpr double kIntegerBound = 1048576.0;  // 2^20
inline constexpr double kDefaultTolerance = 1e-9;

/// An indexed planar point set. Indices are stable for the lifetime of the set.
class PointSet {
 public:
  PointSet() = default;

  /// Integer mode is enabled when every coordinate is an integer within 2^20.
  explicit PointSet(std::vector<Point> points) : points_(std::move(points)) {
    validate();
    integer_mode_ = std::all_of(points_.begin(), points_.end(), [](Point p) {
      return fits_integer(p.x) && fits_integer(p.y);
    });
    compute_scale();
  }

  PointSet(std::vector<Point> points, bool integer_mode)
      : points_(std::move(points)), integer_mode_(integer_mode) {
    validate();
    if (integer_mode_) {
      for (const Point& p : points_) {
        if (!fits_integer(p.x) || !fits_integer(p.y)) {
          throw Error(ErrorCode::InvalidInput,
                      "integer mode requires integer coordinates with |c| <= 2^20");
        }
      }
    }
    compute_scale();
  }

  std::size_t size() const { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }
  bool integer_mode() const { return integer_mode_; }

  /// Diagonal of the bounding box (1 for a single point).
  double scale() const { return scale_; }

  /// Relative tolerance used by float-mode membership tests.
  double tolerance() const { return tolerance_; }
  void set_tolerance(double relative) { tolerance_ = relative; }

  /// Absolute length tolerance for float-mode membership; zero in integer mode.
  double length_tolerance() const { return integer_mode_ ? 0.0 : tolerance_ * scale_; }

  /// The subset at `indices`, keeping this set's arithmetic mode.
  PointSet subset(const std::vector<std::size_t>& indices) const {
    std::vector<Point> pts;
    pts.reserve(indices.size());
    for (std::size_t i : indices) pts.push_back(points_[i]);
    PointSet out;
    out.points_ = std::move(pts);
    out.integer_mode_ = integer_mode_;
    out.tolerance_ = tolerance_;
    out.validate();
    out.compute_scale();
    return out;
  }

  static bool fits_integer(double c) { return std::floor(c) == c && std::abs(c) <= kIntegerBound; }

 private:
  void validate() const {
    if (points_.empty()) throw Error(ErrorCode::InvalidInput, "point set is empty");
    for (const Point& p : points_) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw Error(ErrorCode::InvalidInput, "non-finite coordinate");
      }
    }
  }

  void compute_scale() {
    double lo_x = points_[0].x, hi_x = lo_x, lo_y = points_[0].y, hi_y = lo_y;
    for (const Point& p : points_) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
    scale_ = std::hypot(hi_x - lo_x, hi_y - lo_y);
    if (scale_ == 0.0) scale_ = 1.0;
  }

  std::vector<Point> points_;
  bool integer_mode_ = false;
  double scale_ = 1.0;
  double tolerance_ = kDefaultTolerance;
};

/// +1 if c is strictly left of ray a->b, -1 if strictly right, 0 if collinear.
inline int orientation(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  return (v > 0) - (v < 0);
}

/// True iff the clockwise angle from ray origin->ref to origin->p is strictly
/// smaller than the one to origin->q. Uses orientation signs only.
inline bool clockwise_less(Point origin, Point ref, Point p, Point q) {
  if (p == origin || q == origin || ref == origin) {
    throw Error(ErrorCode::UndefinedOrder, "angular order around a coincident point");
  }
  const Point r = ref - origin;
  // Half 0 holds clockwise angles in [0, pi), half 1 holds [pi, 2pi).
  auto half = [&](Point w) {
    const double c = cross(r, w);
    if (c < 0) return 0;
    if (c > 0) return 1;
    return dot(r, w) > 0 ? 0 : 1;
  };
  const Point wp = p - origin;
  const Point wq = q - origin;
  const int hp = half(wp);
  const int hq = half(wq);
  if (hp != hq) return hp < hq;
  return cross(wp, wq) < 0;
}

/// Base direction given by the ordered pair (P_i1, P_i2).
struct Frame {
  std::size_t i1 = 0;
  std::size_t i2 = 0;
  Point origin;  // P_i1
  Point d;       // P_i2 - P_i1, nonzero

  double norm2() const { return dot(d, d); }

  static Frame make(const PointSet& ps, std::size_t i1, std::size_t i2) {
    if (i1 == i2 || ps[i1] == ps[i2]) {
      throw Error(ErrorCode::DegenerateFrame, "frame needs two distinct points");
    }
    return Frame{i1, i2, ps[i1], ps[i2] - ps[i1]};
  }
};

struct Projection {
  double u = 0.0;  // dot(d, p - P1): signed distance along the base times |d|
  double v = 0.0;  // cross(d, p - P1): signed distance from the base line times |d|
};

inline Projection project(const Frame& f, Point p) {
  const Point w = p - f.origin;
  return {dot(f.d, w), cross(f.d, w)};
}

// ---------------------------------------------------------------------------
// Exact-when-possible areas.

/// Area of an axis-aligned box in a frame: width * height / |d|^2. In integer
/// mode the value is also held as a reduced fraction num / den.
struct Area {
  double value = 0.0;
  bool exact = false;
  u128 num = 0;
  std::uint64_t den = 1;

  static Area infinite() { return Area{std::numeric_limits<double>::infinity(), false, 0, 1}; }
};

namespace detail {

inline u128 gcd(u128 a, u128 b) {
  while (b != 0) {
    const u128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

inline u128 abs_to_u128(double v) { return static_cast<u128>(static_cast<std::uint64_t>(std::fabs(v))); }

// a * b as three little-endian 64-bit words.
inline std::array<std::uint64_t, 3> mul_wide(u128 a, std::uint64_t b) {
  const u128 lo = static_cast<u128>(static_cast<std::uint64_t>(a)) * b;
  const u128 hi = static_cast<u128>(static_cast<std::uint64_t>(a >> 64)) * b;
  const u128 mid = (lo >> 64) + static_cast<std::uint64_t>(hi);
  return {static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(mid),
          static_cast<std::uint64_t>((hi >> 64) + (mid >> 64))};
}

inline long double to_long_double(u128 v) {
  return static_cast<long double>(static_cast<std::uint64_t>(v >> 64)) * 18446744073709551616.0L +
         static_cast<long double>(static_cast<std::uint64_t>(v));
}

}  // namespace detail

/// Builds the area width * height / norm2. `width`, `height` and `norm2` must
/// be exact integers when `exact` is set.
inline Area make_area(double width, double height, double norm2, bool exact) {
  Area a;
  a.exact = exact;
  if (exact) {
    u128 num = detail::abs_to_u128(width) * detail::abs_to_u128(height);
    u128 den = static_cast<u128>(static_cast<std::uint64_t>(norm2));
    if (num == 0) {
      den = 1;
    } else {
      const u128 g = detail::gcd(num, den);
      num /= g;
      den /= g;
    }
    a.num = num;
    a.den = static_cast<std::uint64_t>(den);
    a.value = static_cast<double>(detail::to_long_double(num) / static_cast<long double>(a.den));
  } else {
    a.value = static_cast<double>(static_cast<long double>(std::fabs(width)) *
                                  static_cast<long double>(std::fabs(height)) /
                                  static_cast<long double>(norm2));
  }
  return a;
}

inline constexpr double kAreaRelativeTolerance = 1e-12;

/// Exact comparison when both areas are exact; otherwise floating comparison
/// that treats a relative difference up to 1e-12 as equality.
inline std::weak_ordering compare(const Area& a, const Area& b) {
  if (a.exact && b.exact) {
    const auto lhs = detail::mul_wide(a.num, b.den);
    const auto rhs = detail::mul_wide(b.num, a.den);
    for (int w = 2; w >= 0; --w) {
      if (lhs[w] != rhs[w]) return lhs[w] < rhs[w] ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    return std::weak_ordering::equivalent;
  }
  if (std::isinf(a.value) || std::isinf(b.value)) {
    if (a.value == b.value) return std::weak_ordering::equivalent;
    return a.value < b.value ? std::weak_ordering::less : std::weak_ordering::greater;
  }
  const double diff = a.value - b.value;
  if (std::fabs(diff) <= kAreaRelativeTolerance * std::max(std::fabs(a.value), std::fabs(b.value))) {
    return std::weak_ordering::equivalent;
  }
  return diff < 0 ? std::weak_ordering::less : std::weak_ordering::greater;
}

// ---------------------------------------------------------------------------
// Oriented rectangles.

/// A rectangle aligned with a frame: [u_lo, u_hi] x [v_lo, v_hi] in the
/// frame's unnormalized coordinates measured from P_{frame.i1}.
struct OrientedRectangle {
  std::array<std::size_t, 5> supports{};  // P1..P5
  Frame frame;
  double u_lo = 0.0, u_hi = 0.0, v_lo = 0.0, v_hi = 0.0;
  std::array<Point, 4> corners{};  // counterclockwise
  Area area;
  long long enclosed_count = -1;  // -1 until counted
  bool degenerate = false;        // zero area
};

inline OrientedRectangle make_rectangle(const PointSet& ps, const Frame& f, double u_lo, double u_hi,
                                        double v_lo, double v_hi,
                                        const std::array<std::size_t, 5>& supports) {
  OrientedRectangle r;
  r.supports = supports;
  r.frame = f;
  r.u_lo = u_lo;
  r.u_hi = u_hi;
  r.v_lo = v_lo;
  r.v_hi = v_hi;
  const double n2 = f.norm2();
  r.area = make_area(u_hi - u_lo, v_hi - v_lo, n2, ps.integer_mode());
  r.degenerate = (u_hi == u_lo) || (v_hi == v_lo);
  auto corner = [&](double u, double v) {
    const long double inv = 1.0L / static_cast<long double>(n2);
    const long double x = static_cast<long double>(u) * f.d.x - static_cast<long double>(v) * f.d.y;
    const long double y = static_cast<long double>(u) * f.d.y + static_cast<long double>(v) * f.d.x;
    return Point{static_cast<double>(f.origin.x + x * inv), static_cast<double>(f.origin.y + y * inv)};
  };
  r.corners = {corner(u_lo, v_lo), corner(u_hi, v_lo), corner(u_hi, v_hi), corner(u_lo, v_hi)};
  return r;
}

/// Rectangle bounded by the line P1P2, its parallel through P3 and the two
/// perpendiculars through P4 and P5.
inline OrientedRectangle rect_from_supports(const PointSet& ps, std::size_t i1, std::size_t i2, std::size_t i3,
                                            std::size_t i4, std::size_t i5, bool allow_degenerate = false) {
  const Frame f = Frame::make(ps, i1, i2);
  const double v3 = project(f, ps[i3]).v;
  if (v3 == 0.0 && !allow_degenerate) {
    throw Error(ErrorCode::DegenerateRectangle, "P3 lies on the base line");
  }
  const Projection p4 = project(f, ps[i4]);
  const Projection p5 = project(f, ps[i5]);
  const double v_lo = std::min(0.0, v3);
  const double v_hi = std::max(0.0, v3);
  for (const Projection& p : {p4, p5}) {
    if (p.v < v_lo || p.v > v_hi) {
      throw Error(ErrorCode::InvalidSupports, "P4/P5 must lie between the base line and its parallel through P3");
    }
  }
  return make_rectangle(ps, f, std::min(p4.u, p5.u), std::max(p4.u, p5.u), v_lo, v_hi, {i1, i2, i3, i4, i5});
}

struct Coverage {
  std::size_t count = 0;
  std::vector<bool> inside;
};

/// Closed-rectangle membership: boundary points count as enclosed.
inline bool encloses(const PointSet& ps, const OrientedRectangle& r, Point p) {
  const Projection q = project(r.frame, p);
  const double tol = ps.length_tolerance() * std::sqrt(r.frame.norm2());
  return q.u >= r.u_lo - tol && q.u <= r.u_hi + tol && q.v >= r.v_lo - tol && q.v <= r.v_hi + tol;
}

inline Coverage count_enclosed(const PointSet& ps, const OrientedRectangle& r) {
  Coverage c;
  c.inside.resize(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    c.inside[i] = encloses(ps, r, ps[i]);
    c.count += c.inside[i] ? 1 : 0;
  }
  return c;
}

inline std::weak_ordering compare_areas(const OrientedRectangle& a, const OrientedRectangle& b) {
  return compare(a.area, b.area);
}

/// Some collinear triple (or coincident pair, reported with a repeated index),
/// found in O(n^2 log n) by sorting directions around each point.
inline std::optional<std::array<std::size_t, 3>> find_collinear_triple(const PointSet& ps) {
  const std::size_t n = ps.size();
  std::vector<std::size_t> order;
  for (std::size_t a = 0; a < n; ++a) {
    order.clear();
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a) continue;
      if (ps[b] == ps[a]) return std::array<std::size_t, 3>{a, b, b};
      order.push_back(b);
    }
    // Directions folded onto a half-plane so opposite rays compare equal.
    auto fold = [&](std::size_t i) {
      Point w = ps[i] - ps[a];
      if (w.y < 0 || (w.y == 0 && w.x < 0)) w = Point{-w.x, -w.y};
      return w;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      const double c = cross(fold(i), fold(j));
      return c > 0 || (c == 0 && i < j);
    });
    for (std::size_t k = 1; k < order.size(); ++k) {
      if (cross(fold(order[k - 1]), fold(order[k])) == 0) {
        return std::array<std::size_t, 3>{a, order[k - 1], order[k]};
      }
    }
  }
  return std::nullopt;
}

}  // namespace mer
