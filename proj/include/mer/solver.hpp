#pragma once

// Minimum-area rectangle covering all but at most t points.
//
// solve_exact runs over every valid pair as the base side, asks enclose for
// the support triples that leave out t (or fewer) points and keeps the
// smallest rectangle. solve_oracle and kappa_oracle are slow, independent
// enumerations for small inputs. solve_sampled solves a random subset and
// re-counts on the full set.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "mer/enclose.hpp"
#include "mer/error.hpp"
#include "mer/geom.hpp"
#include "mer/layers.hpp"
#include "mer/parallel.hpp"
#include "mer/rng.hpp"
#include "mer/valid_pairs.hpp"

namespace mer {

enum class SolveMode { exact, sampled, oracle };

inline const char* to_string(SolveMode m) {
  switch (m) {
    case SolveMode::exact: return "exact";
    case SolveMode::sampled: return "sampled";
    case SolveMode::oracle: return "oracle";
  }
  return "?";
}

struct SolveStats {
  std::size_t k = 0;  // points on the first t + 1 convex layers
  std::size_t valid_pair_count = 0;
  std::size_t triples_examined = 0;
  double time_valid_pairs = 0.0;  // seconds
  double time_enclose = 0.0;
  double time_total = 0.0;
};

struct SampleParams {
  double epsilon = 0.1;
  double c = 1.0;
  std::uint64_t seed = 0;
  std::size_t s = 0;
  std::size_t t_prime = 0;

  /// Sample size min(n, ceil(c ln n / eps^2)) (at least 3) and the sample's
  /// outlier budget floor((t/n + eps - eps t/n) s).
  static SampleParams make(std::size_t n, long long t, double epsilon, double c, std::uint64_t seed) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::InvalidParameter, "epsilon must lie in (0, 1)");
    if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::InvalidParameter, "c must be positive");
    if (n < 3) throw Error(ErrorCode::InvalidParameter, "sampling needs at least three points");
    if (t < 0) throw Error(ErrorCode::InvalidT, "t must be nonnegative");
    SampleParams p;
    p.epsilon = epsilon;
    p.c = c;
    p.seed = seed;
    const long double raw = std::ceil(static_cast<long double>(c) * std::log(static_cast<long double>(n)) /
                                      (static_cast<long double>(epsilon) * epsilon));
    p.s = raw >= static_cast<long double>(n) ? n : std::max<std::size_t>(3, static_cast<std::size_t>(raw));
    p.s = std::min(p.s, n);
    const long double frac = static_cast<long double>(t) / static_cast<long double>(n);
    const long double tp = std::floor((frac + epsilon - epsilon * frac) * static_cast<long double>(p.s));
    p.t_prime = static_cast<std::size_t>(tp);
    if (2 * p.t_prime >= p.s) {
      throw Error(ErrorCode::InvalidParameter, "derived sample outlier budget must be below half the sample");
    }
    return p;
  }
};

struct SolveReport {
  OrientedRectangle rectangle;
  std::vector<std::size_t> enclosed_indices;
  std::vector<std::size_t> outlier_indices;
  SolveMode mode = SolveMode::exact;
  SolveStats stats;
  std::optional<SampleParams> sample_params;
};

struct Verification {
  std::size_t enclosed = 0;
  std::size_t excluded = 0;
  bool feasible = false;
};

/// Recounts closed-rectangle membership; feasible when at least n - t points are covered.
inline Verification verify(const PointSet& ps, const OrientedRectangle& r, long long t) {
  const Coverage cov = count_enclosed(ps, r);
  Verification v;
  v.enclosed = cov.count;
  v.excluded = ps.size() - cov.count;
  v.feasible = t >= 0 && static_cast<long long>(v.enclosed) + t >= static_cast<long long>(ps.size());
  return v;
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

inline void check_solve_preconditions(std::size_t n, long long t) {
  check_outlier_budget(n, t);
  if (static_cast<long long>(n) - t < 3) throw Error(ErrorCode::Infeasible, "fewer than three points to cover");
}

/// Fills in the partition of the point set for a finished rectangle.
inline void finish_report(const PointSet& ps, SolveReport& rep) {
  const Coverage cov = count_enclosed(ps, rep.rectangle);
  rep.rectangle.enclosed_count = static_cast<long long>(cov.count);
  rep.enclosed_indices.clear();
  rep.outlier_indices.clear();
  for (std::size_t i = 0; i < ps.size(); ++i) (cov.inside[i] ? rep.enclosed_indices : rep.outlier_indices).push_back(i);
}

struct PairBest {
  Area area;
  std::array<std::size_t, 5> supports{};
  std::size_t triples = 0;
  bool found = false;
};

inline bool better(const Area& a, const std::array<std::size_t, 5>& sa, const Area& b,
                   const std::array<std::size_t, 5>& sb) {
  const auto c = compare(a, b);
  if (c != 0) return c < 0;
  return sa < sb;
}

inline PairBest best_for_pair(const PointSet& ps, const ValidPair& vp, std::size_t t, bool collinear_robust) {
  PairBest best;
  const std::size_t m = vp.excluded_count;
  if (m > t) return best;
  const Frame f = Frame::make(ps, vp.i1, vp.i2);
  // Enclosed side, oriented so that w >= 0.
  const int sign = vp.excluded_side == Side::left ? -1 : 1;
  std::vector<Member> members;
  members.reserve(ps.size() - m);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Projection p = project(f, ps[i]);
    const double w = sign * p.v;
    if (w >= 0) members.push_back({i, p.u, w});
  }

  // General position: the optimum excludes t or t - 1 points. With collinear
  // points it may exclude fewer, so every budget down to m is tried.
  const std::size_t lowest = collinear_robust ? m : (t >= 1 ? std::max(m, t - 1) : 0);
  const Candidates cands = collect_candidates(members, t - m, f.norm2());
  std::vector<CandidateTriple> triples;
  for (std::size_t target = t + 1; target-- > lowest;) {
    if (target < m) break;
    scan_triples(cands, target - m, target, !collinear_robust, triples);
  }
  best.triples = triples.size();

  const double n2 = f.norm2();
  for (const CandidateTriple& c : triples) {
    const Projection p3 = project(f, ps[c.i3]);
    const Projection p4 = project(f, ps[c.i4]);
    const Projection p5 = project(f, ps[c.i5]);
    const Area a = make_area(p5.u - p4.u, p3.v, n2, ps.integer_mode());
    const std::array<std::size_t, 5> s{vp.i1, vp.i2, c.i3, c.i4, c.i5};
    if (!best.found || better(a, s, best.area, best.supports)) {
      best.area = a;
      best.supports = s;
      best.found = true;
    }
  }
  return best;
}

}  // namespace detail

/// Exact minimum-area rectangle leaving out at most t points.
inline SolveReport solve_exact(const PointSet& ps, long long t, bool collinear_robust = false) {
  const auto start = detail::Clock::now();
  const std::size_t n = ps.size();
  detail::check_solve_preconditions(n, t);
  const auto budget = static_cast<std::size_t>(t);

  SolveReport rep;
  rep.mode = SolveMode::exact;
  const std::vector<ValidPair> pairs = valid_pairs(ps, t, collinear_robust);
  rep.stats.time_valid_pairs = detail::seconds_since(start);
  rep.stats.valid_pair_count = pairs.size();

  const auto enclose_start = detail::Clock::now();
  std::vector<detail::PairBest> slots(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    slots[k] = detail::best_for_pair(ps, pairs[k], budget, collinear_robust);
  });

  // Sequential reduction in pair order keeps the winner independent of scheduling.
  const detail::PairBest* winner = nullptr;
  for (const auto& s : slots) {
    rep.stats.triples_examined += s.triples;
    if (!s.found) continue;
    if (!winner || detail::better(s.area, s.supports, winner->area, winner->supports)) winner = &s;
  }
  rep.stats.time_enclose = detail::seconds_since(enclose_start);
  if (!winner) throw Error(ErrorCode::Infeasible, "no candidate rectangle found");

  const auto& sp = winner->supports;
  rep.rectangle = rect_from_supports(ps, sp[0], sp[1], sp[2], sp[3], sp[4], collinear_robust);
  detail::finish_report(ps, rep);
  rep.stats.k = k_first_layers(ps, budget);
  rep.stats.time_total = detail::seconds_since(start);
  return rep;
}

namespace detail {

inline constexpr std::size_t kOracleMaxPoints = 64;

// Base directions up to a quarter turn, one per ordered pair of distinct
// points. Integer directions are reduced by their gcd.
inline std::vector<Point> oracle_directions(const PointSet& ps) {
  std::vector<Point> dirs;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < ps.size(); ++j) {
      if (i == j || ps[i] == ps[j]) continue;
      Point d = ps[j] - ps[i];
      while (!(d.x > 0 && d.y >= 0)) d = Point{-d.y, d.x};
      if (ps.integer_mode()) {
        const auto g = std::gcd(static_cast<long long>(d.x), static_cast<long long>(d.y));
        d = Point{d.x / static_cast<double>(g), d.y / static_cast<double>(g)};
      }
      dirs.push_back(d);
    }
  }
  std::sort(dirs.begin(), dirs.end(), [](Point a, Point b) { return lex_less(a, b); });
  dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
  return dirs;
}

// Absolute projections of every point onto a direction, points sorted by u.
struct DirectionView {
  Point d;
  double norm2 = 0.0;
  std::vector<double> u, v;          // by point index
  std::vector<std::size_t> by_u;     // point indices in ascending u
  std::vector<double> levels;        // distinct v values, ascending
};

inline DirectionView view_along(const PointSet& ps, Point d) {
  DirectionView dv;
  dv.d = d;
  dv.norm2 = dot(d, d);
  const std::size_t n = ps.size();
  dv.u.resize(n);
  dv.v.resize(n);
  dv.by_u.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    dv.u[i] = dot(d, ps[i]);
    dv.v[i] = cross(d, ps[i]);
    dv.by_u[i] = i;
  }
  std::sort(dv.by_u.begin(), dv.by_u.end(), [&](std::size_t a, std::size_t b) {
    return dv.u[a] < dv.u[b] || (dv.u[a] == dv.u[b] && a < b);
  });
  dv.levels = dv.v;
  std::sort(dv.levels.begin(), dv.levels.end());
  dv.levels.erase(std::unique(dv.levels.begin(), dv.levels.end()), dv.levels.end());
  return dv;
}

inline void strip_u(const DirectionView& dv, double lo, double hi, std::vector<double>& out) {
  out.clear();
  for (std::size_t i : dv.by_u) {
    if (dv.v[i] >= lo && dv.v[i] <= hi) out.push_back(dv.u[i]);
  }
}

}  // namespace detail

/// Brute-force minimum over all directions, strips and windows; O(n^5).
inline SolveReport solve_oracle(const PointSet& ps, long long t) {
  const auto start = detail::Clock::now();
  const std::size_t n = ps.size();
  if (n > detail::kOracleMaxPoints) throw Error(ErrorCode::SizeGuard, "oracle is limited to 64 points");
  detail::check_solve_preconditions(n, t);
  const std::size_t need = n - static_cast<std::size_t>(t);
  const bool exact = ps.integer_mode();

  Area best = Area::infinite();
  Point best_d{};
  double best_u_lo = 0, best_u_hi = 0, best_v_lo = 0, best_v_hi = 0;
  std::vector<double> us;
  for (const Point d : detail::oracle_directions(ps)) {
    const detail::DirectionView dv = detail::view_along(ps, d);
    const auto& lv = dv.levels;
    for (std::size_t a = 0; a < lv.size(); ++a) {
      for (std::size_t b = a; b < lv.size(); ++b) {
        detail::strip_u(dv, lv[a], lv[b], us);
        if (us.size() < need) continue;
        std::size_t at = 0;
        for (std::size_t i = 1; i + need <= us.size(); ++i) {
          if (us[i + need - 1] - us[i] < us[at + need - 1] - us[at]) at = i;
        }
        const Area area = make_area(us[at + need - 1] - us[at], lv[b] - lv[a], dv.norm2, exact);
        if (compare(area, best) < 0) {
          best = area;
          best_d = d;
          best_u_lo = us[at];
          best_u_hi = us[at + need - 1];
          best_v_lo = lv[a];
          best_v_hi = lv[b];
        }
      }
    }
  }

  // Re-express the box through supports: a side holding two distinct covered
  // points becomes the base.
  const detail::DirectionView dv = detail::view_along(ps, best_d);
  const double tol = ps.length_tolerance() * std::sqrt(dv.norm2);
  auto near = [tol](double a, double b) { return std::fabs(a - b) <= tol; };
  std::vector<std::size_t> covered;
  for (std::size_t i = 0; i < n; ++i) {
    if (dv.u[i] >= best_u_lo - tol && dv.u[i] <= best_u_hi + tol && dv.v[i] >= best_v_lo - tol &&
        dv.v[i] <= best_v_hi + tol) {
      covered.push_back(i);
    }
  }
  std::optional<std::pair<std::size_t, std::size_t>> base;
  for (int side = 0; side < 4 && !base; ++side) {
    std::optional<std::size_t> a;
    for (std::size_t i : covered) {
      const bool on = side == 0 ? near(dv.v[i], best_v_lo)
                    : side == 1 ? near(dv.v[i], best_v_hi)
                    : side == 2 ? near(dv.u[i], best_u_lo)
                                : near(dv.u[i], best_u_hi);
      if (!on) continue;
      if (!a) {
        a = i;
      } else if (!(ps[i] == ps[*a])) {
        base = std::pair{*a, i};
        break;
      }
    }
  }
  if (!base) throw std::logic_error("oracle optimum has no side through two points");

  const Frame f = Frame::make(ps, base->first, base->second);
  std::size_t i3 = covered.front(), i4 = covered.front(), i5 = covered.front();
  for (std::size_t i : covered) {
    const Projection p = project(f, ps[i]);
    if (std::fabs(p.v) > std::fabs(project(f, ps[i3]).v)) i3 = i;
    if (p.u < project(f, ps[i4]).u) i4 = i;
    if (p.u > project(f, ps[i5]).u) i5 = i;
  }

  SolveReport rep;
  rep.mode = SolveMode::oracle;
  rep.rectangle = rect_from_supports(ps, base->first, base->second, i3, i4, i5, true);
  detail::finish_report(ps, rep);
  rep.stats.k = k_first_layers(ps, static_cast<std::size_t>(t));
  rep.stats.time_total = detail::seconds_since(start);
  return rep;
}

/// Largest number of points covered by a non-degenerate rectangle of area at
/// most alpha (at least 1: a single point fits in any positive area).
inline std::size_t kappa_oracle(const PointSet& ps, const Area& alpha) {
  const std::size_t n = ps.size();
  if (n > detail::kOracleMaxPoints) throw Error(ErrorCode::SizeGuard, "oracle is limited to 64 points");
  const bool exact = ps.integer_mode() && alpha.exact;
  std::size_t best = 1;
  std::vector<double> us;
  for (const Point d : detail::oracle_directions(ps)) {
    const detail::DirectionView dv = detail::view_along(ps, d);
    const auto& lv = dv.levels;
    for (std::size_t a = 0; a < lv.size(); ++a) {
      for (std::size_t b = a + 1; b < lv.size(); ++b) {
        const double height = lv[b] - lv[a];
        detail::strip_u(dv, lv[a], lv[b], us);
        if (us.size() <= best) continue;
        auto fits = [&](double width) {
          return width == 0 || compare(make_area(width, height, dv.norm2, exact), alpha) <= 0;
        };
        std::size_t j = 0;
        for (std::size_t i = 0; i < us.size(); ++i) {
          j = std::max(j, i);
          while (j + 1 < us.size() && fits(us[j + 1] - us[i])) ++j;
          if (us[j] > us[i]) best = std::max(best, j - i + 1);
        }
      }
    }
  }
  return best;
}

inline std::size_t kappa_oracle(const PointSet& ps, double alpha) {
  Area a;
  a.value = alpha;
  return kappa_oracle(ps, a);
}

/// Uniform sample of `s` distinct indices out of n, ascending.
inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t s, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(derive_seed(seed, 1));
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(s);
  std::sort(idx.begin(), idx.end());
  return idx;
}

/// Solves a random sample with the derived budget and re-counts on the full set.
/// The reported outliers may exceed t when the sample was unlucky.
inline SolveReport solve_sampled(const PointSet& ps, long long t, const SampleParams& params,
                                 bool collinear_robust = false) {
  const auto start = detail::Clock::now();
  check_outlier_budget(ps.size(), t);
  const SampleParams p = SampleParams::make(ps.size(), t, params.epsilon, params.c, params.seed);
  const std::vector<std::size_t> chosen = sample_indices(ps.size(), p.s, p.seed);
  const PointSet sub = ps.subset(chosen);
  const SolveReport inner = solve_exact(sub, static_cast<long long>(p.t_prime), collinear_robust);

  SolveReport rep;
  rep.mode = SolveMode::sampled;
  rep.stats = inner.stats;
  rep.sample_params = p;
  const auto& s = inner.rectangle.supports;
  rep.rectangle = rect_from_supports(ps, chosen[s[0]], chosen[s[1]], chosen[s[2]], chosen[s[3]], chosen[s[4]],
                                     collinear_robust);
  detail::finish_report(ps, rep);
  rep.stats.k = k_first_layers(ps, static_cast<std::size_t>(t));
  rep.stats.time_total = detail::seconds_since(start);
  return rep;
}

}  // namespace mer
