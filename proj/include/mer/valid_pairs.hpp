#pragma once

// Valid pairs: ordered point pairs whose line leaves at most t points strictly
// on one side. For every pivot P1 a line through P1 is rotated clockwise by
// half a turn; the points strictly left and right of the rotating ray are kept
// in two queues sorted by the angle at which the line meets them, and each
// point met moves from the head of one queue to the tail of the other.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "mer/error.hpp"
#include "mer/geom.hpp"
#include "mer/parallel.hpp"

namespace mer {

enum class Side { left, right };

inline Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }

struct ValidPair {
  std::size_t i1 = 0;  // i1 < i2
  std::size_t i2 = 0;
  std::size_t excluded_count = 0;
  Side excluded_side = Side::left;  // relative to ray P_i1 -> P_i2

  friend auto operator<=>(const ValidPair&, const ValidPair&) = default;
};

/// One stop of the rotating line around `pivot`. The strict counts exclude the
/// points on the line; `left_after`/`right_after` are the queue sizes once the
/// batch on the line has been moved to the opposite queue.
struct SweepStep {
  std::size_t pivot = 0;
  std::size_t strict_left = 0;
  std::size_t strict_right = 0;
  std::size_t on_line = 0;
  std::size_t from_left = 0;
  std::size_t from_right = 0;
  std::size_t left_after = 0;
  std::size_t right_after = 0;
};

using SweepObserver = std::function<void(const SweepStep&)>;

inline void check_outlier_budget(std::size_t n, long long t) {
  if (t < 0 || 2 * static_cast<unsigned long long>(t) >= n) {
    throw Error(ErrorCode::InvalidT, "outlier budget must satisfy 0 <= t < n/2");
  }
}

namespace detail {

inline ValidPair canonical_pair(std::size_t a, std::size_t b, std::size_t count, Side side_of_ab) {
  if (a < b) return {a, b, count, side_of_ab};
  return {b, a, count, opposite(side_of_ab)};
}

inline void sweep_pivot(const PointSet& ps, std::size_t p1, std::size_t t, bool collinear_robust,
                        std::vector<ValidPair>& out, const SweepObserver* observer) {
  const std::size_t n = ps.size();
  const Point c = ps[p1];

  // Rotation starts at the lexicographically smallest point distinct from P1.
  std::optional<std::size_t> p0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == p1) continue;
    if (ps[i] == c) {
      if (!collinear_robust) throw Error(ErrorCode::CollinearInput, "coincident points");
      continue;  // always on the line, never excluded
    }
    if (!p0 || lex_less(ps[i], ps[*p0])) p0 = i;
  }
  if (!p0) return;
  const Point r = ps[*p0] - c;

  struct Item {
    std::size_t idx;
    Point w;
  };
  std::vector<Item> left, right;
  std::vector<std::size_t> forward, backward;  // initially on the line
  for (std::size_t i = 0; i < n; ++i) {
    if (i == p1 || ps[i] == c) continue;
    const Point w = ps[i] - c;
    const double side = cross(r, w);
    if (side > 0) {
      left.push_back({i, w});
    } else if (side < 0) {
      right.push_back({i, w});
    } else {
      (dot(r, w) > 0 ? forward : backward).push_back(i);
    }
  }
  if (!collinear_robust && forward.size() + backward.size() > 1) {
    throw Error(ErrorCode::CollinearInput, "three collinear points");
  }

  // Inside one open half-plane the clockwise angle from r is ordered by the
  // sign of the cross product alone.
  auto by_clockwise_angle = [](const Item& a, const Item& b) {
    const double s = cross(a.w, b.w);
    return s < 0 || (s == 0 && a.idx < b.idx);
  };
  std::sort(left.begin(), left.end(), by_clockwise_angle);
  std::sort(right.begin(), right.end(), by_clockwise_angle);

  // Queues: the sorted originals followed by points appended after being met.
  std::vector<std::size_t> lq, rq;
  lq.reserve(n);
  rq.reserve(n);
  for (const Item& it : left) lq.push_back(it.idx);
  for (const Item& it : right) rq.push_back(it.idx);
  std::size_t lh = 0, rh = 0;
  const std::size_t l_orig = left.size(), r_orig = right.size();

  // Emits (P1, q) for each side of the line with at most t strict points.
  // `nl`/`nr` are relative to the rotating ray; q on the backward ray sees them swapped.
  auto emit = [&](std::size_t q, bool on_forward_ray, std::size_t nl, std::size_t nr) {
    const std::size_t q_left = on_forward_ray ? nl : nr;
    const std::size_t q_right = on_forward_ray ? nr : nl;
    if (q_left <= t) out.push_back(canonical_pair(p1, q, q_left, Side::left));
    if (q_right <= t) out.push_back(canonical_pair(p1, q, q_right, Side::right));
  };

  auto step = [&](const std::vector<std::size_t>& from_right, const std::vector<std::size_t>& from_left) {
    const std::size_t nl = lq.size() - lh;
    const std::size_t nr = rq.size() - rh;
    for (std::size_t q : from_right) emit(q, true, nl, nr);
    for (std::size_t q : from_left) emit(q, false, nl, nr);
    // Past the line, forward-ray points lie left of the ray and backward-ray points right.
    lq.insert(lq.end(), from_right.begin(), from_right.end());
    rq.insert(rq.end(), from_left.begin(), from_left.end());
    if (observer) {
      (*observer)(SweepStep{p1, nl, nr, from_right.size() + from_left.size(), from_left.size(),
                            from_right.size(), lq.size() - lh, rq.size() - rh});
    }
  };

  step(forward, backward);

  std::vector<std::size_t> batch_r, batch_l;
  while (lh < l_orig || rh < r_orig) {
    bool take_r = false, take_l = false;
    if (lh == l_orig) {
      take_r = true;
    } else if (rh == r_orig) {
      take_l = true;
    } else {
      // The forward ray meets right[rh] at angle beta, the backward ray meets
      // left[lh] at angle alpha - pi; beta < alpha - pi iff right[rh] is
      // clockwise of left[lh].
      const double s = cross(left[lh].w, right[rh].w);
      take_r = s <= 0;
      take_l = s >= 0;
    }
    batch_r.clear();
    batch_l.clear();
    if (take_r) {
      const Point w = right[rh].w;
      while (rh < r_orig && cross(w, right[rh].w) == 0) batch_r.push_back(right[rh++].idx);
    }
    if (take_l) {
      const Point w = left[lh].w;
      while (lh < l_orig && cross(w, left[lh].w) == 0) batch_l.push_back(left[lh++].idx);
    }
    if (!collinear_robust && batch_r.size() + batch_l.size() > 1) {
      throw Error(ErrorCode::CollinearInput, "three collinear points");
    }
    step(batch_r, batch_l);
  }
}

}  // namespace detail

/// All valid pairs, deduplicated to canonical (i1 < i2, side) form and sorted.
/// In general-position mode a collinear triple raises CollinearInput. With an
/// observer the sweeps run sequentially and report every stop.
inline std::vector<ValidPair> valid_pairs(const PointSet& ps, long long t, bool collinear_robust,
                                          const SweepObserver& observer = {}) {
  const std::size_t n = ps.size();
  if (n < 2) throw Error(ErrorCode::InvalidInput, "valid pairs need at least two points");
  check_outlier_budget(n, t);
  const auto budget = static_cast<std::size_t>(t);

  std::vector<std::vector<ValidPair>> per_pivot(n);
  if (observer) {
    for (std::size_t p = 0; p < n; ++p) detail::sweep_pivot(ps, p, budget, collinear_robust, per_pivot[p], &observer);
  } else {
    parallel_for(n, [&](std::size_t p) {
      detail::sweep_pivot(ps, p, budget, collinear_robust, per_pivot[p], nullptr);
    });
  }

  std::vector<ValidPair> pairs;
  for (auto& v : per_pivot) pairs.insert(pairs.end(), v.begin(), v.end());
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

/// Points not strictly on the excluded side of the pair's line (points on the
/// line included), and the excluded count.
struct EnclosedSide {
  std::vector<std::size_t> members;
  std::size_t excluded = 0;
};

inline EnclosedSide enclosed_side_points(const PointSet& ps, const ValidPair& vp) {
  const Frame f = Frame::make(ps, vp.i1, vp.i2);
  EnclosedSide out;
  out.excluded = vp.excluded_count;
  out.members.reserve(ps.size() - vp.excluded_count);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double v = project(f, ps[i]).v;
    const bool excluded = vp.excluded_side == Side::left ? v > 0 : v < 0;
    if (!excluded) out.members.push_back(i);
  }
  return out;
}

}  // namespace mer
