#pragma once

// Support triples for a fixed base line. Given the points M on the enclosed
// side of the line P1P2, find every (P3, P4, P5) such that the rectangle with
// its base on P1P2, its top through P3 and its sides through P4 and P5 leaves
// out exactly the requested number of points.
//
// Coordinates per member: u along the ray P1->P2 and w >= 0 away from the
// base (both scaled by |d|). For a fixed left side the right side moves
// outward through the rightmost candidates while the top moves down through
// the farthest candidates; both pointers only advance, so one left side costs
// O(|H| + |G|).

#include <algorithm>
#include <cstddef>
#include <limits>
#include <tuple>
#include <utility>
#include <vector>

#include "mer/error.hpp"
#include "mer/geom.hpp"

namespace mer {

struct CandidateTriple {
  std::size_t i3 = 0;  // top support
  std::size_t i4 = 0;  // left support
  std::size_t i5 = 0;  // right support
  std::size_t target_excluded = 0;

  friend auto operator<=>(const CandidateTriple&, const CandidateTriple&) = default;
};

struct ExtremeCandidates {
  std::vector<std::size_t> leftmost;   // J, ascending u
  std::vector<std::size_t> rightmost;  // H, ascending u
  std::vector<std::size_t> farthest;   // G, descending distance from the base line
};

/// Pointer positions visited by the scan, for inspection in tests.
struct EncloseTrace {
  struct Step {
    std::size_t target = 0;
    std::size_t left_group = 0;
    std::size_t right_group = 0;
    std::size_t far_group = 0;
  };
  std::vector<Step> steps;
};

namespace detail {

struct Member {
  std::size_t idx = 0;
  double u = 0.0;
  double w = 0.0;
};

/// +1 when the members lie left of the ray P1->P2 (or on the line), -1 otherwise.
inline int enclosed_side_sign(const PointSet& ps, const Frame& f, const std::vector<std::size_t>& members) {
  for (std::size_t i : members) {
    const double v = project(f, ps[i]).v;
    if (v != 0) return v > 0 ? 1 : -1;
  }
  return 1;
}

inline std::vector<Member> project_members(const PointSet& ps, const Frame& f, const std::vector<std::size_t>& members,
                                           int side_sign) {
  std::vector<Member> out;
  out.reserve(members.size());
  for (std::size_t i : members) {
    const Projection p = project(f, ps[i]);
    out.push_back({i, p.u, side_sign * p.v});
  }
  return out;
}

// The `count` best members under `better`, widened to every member tied with
// the last one when `extend_ties` is set. Linear selection, then a sort of the
// selected prefix.
template <class Better, class Tied>
std::vector<Member> select_extreme(std::vector<Member> pool, std::size_t count, bool extend_ties, Better better,
                                   Tied tied) {
  count = std::min(count, pool.size());
  if (count == 0) return {};
  std::nth_element(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count - 1), pool.end(), better);
  const Member boundary = pool[count - 1];
  auto end = pool.begin() + static_cast<std::ptrdiff_t>(count);
  if (extend_ties) {
    end = std::partition(end, pool.end(), [&](const Member& m) { return tied(m, boundary); });
  }
  std::vector<Member> out(pool.begin(), end);
  std::sort(out.begin(), out.end(), better);
  return out;
}

inline bool by_u(const Member& a, const Member& b) { return a.u < b.u || (a.u == b.u && a.idx < b.idx); }
inline bool by_u_desc(const Member& a, const Member& b) { return a.u > b.u || (a.u == b.u && a.idx < b.idx); }
inline bool by_w_desc(const Member& a, const Member& b) { return a.w > b.w || (a.w == b.w && a.idx < b.idx); }

/// Candidate lists for at most `budget` exclusions among the members, with
/// ties at the cut completed so that each list holds whole groups of equal
/// coordinate.
struct Candidates {
  std::vector<Member> left;   // ascending u
  std::vector<Member> right;  // ascending u
  std::vector<Member> far;    // descending w
  double base_u = 0.0;        // u of P2, i.e. |d|^2
};

inline Candidates collect_candidates(const std::vector<Member>& members, std::size_t budget, double base_u) {
  Candidates c;
  c.base_u = base_u;
  const auto same_u = [](const Member& m, const Member& b) { return m.u == b.u; };
  const auto same_w = [](const Member& m, const Member& b) { return m.w == b.w; };
  c.left = select_extreme(members, budget + 1, true, by_u, same_u);
  c.right = select_extreme(members, budget + 1, true, by_u_desc, same_u);
  std::reverse(c.right.begin(), c.right.end());
  c.far = select_extreme(members, budget + 1, true, by_w_desc, same_w);
  return c;
}

// [begin, end) ranges of equal keys in a sorted list.
template <class Key>
std::vector<std::pair<std::size_t, std::size_t>> groups_of(const std::vector<Member>& list, Key key) {
  std::vector<std::pair<std::size_t, std::size_t>> g;
  for (std::size_t k = 0; k < list.size(); ++k) {
    if (k == 0 || key(list[k]) != key(list[k - 1])) g.push_back({k, k + 1});
    else g.back().second = k + 1;
  }
  return g;
}

/// Appends every support triple whose rectangle excludes exactly `budget`
/// members. `target` is only recorded in the output.
inline void scan_triples(const Candidates& c, std::size_t budget, std::size_t target, bool general_position,
                         std::vector<CandidateTriple>& out, EncloseTrace* trace = nullptr) {
  const auto lg = groups_of(c.left, [](const Member& m) { return m.u; });
  const auto rg = groups_of(c.right, [](const Member& m) { return m.u; });
  const auto fg = groups_of(c.far, [](const Member& m) { return m.w; });
  if (general_position) {
    for (const auto* groups : {&lg, &rg, &fg}) {
      for (const auto& [b, e] : *groups) {
        if (e - b > 2) throw Error(ErrorCode::CollinearInput, "three collinear points");
      }
    }
  }
  const std::size_t num_far = fg.size();
  constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  std::vector<std::size_t> far_group_of_entry(c.far.size());
  for (std::size_t g = 0; g < num_far; ++g) {
    for (std::size_t k = fg[g].first; k < fg[g].second; ++k) far_group_of_entry[k] = g;
  }
  // Far group of each right entry, if the point is also a far candidate.
  std::vector<std::size_t> far_group_of_right(c.right.size(), npos);
  {
    std::vector<std::pair<std::size_t, std::size_t>> far_by_idx;
    far_by_idx.reserve(c.far.size());
    for (std::size_t k = 0; k < c.far.size(); ++k) far_by_idx.push_back({c.far[k].idx, far_group_of_entry[k]});
    std::sort(far_by_idx.begin(), far_by_idx.end());
    for (std::size_t k = 0; k < c.right.size(); ++k) {
      auto it = std::lower_bound(far_by_idx.begin(), far_by_idx.end(), std::pair{c.right[k].idx, std::size_t{0}});
      if (it != far_by_idx.end() && it->first == c.right[k].idx) far_group_of_right[k] = it->second;
    }
  }

  // Lowest-index member of [b, e) with w <= top, or npos.
  auto support_below = [&](const std::vector<Member>& list, std::size_t b, std::size_t e, double top) {
    std::size_t best = npos;
    for (std::size_t k = b; k < e; ++k) {
      if (list[k].w <= top && list[k].idx < best) best = list[k].idx;
    }
    return best;
  };

  std::vector<std::size_t> in_window(num_far);
  for (std::size_t gl = 0; gl < lg.size(); ++gl) {
    const std::size_t excluded_left = lg[gl].first;
    const double u_left = c.left[lg[gl].first].u;
    // P1 sits at u = 0 and must stay inside.
    if (excluded_left > budget || u_left > 0) break;
    const std::size_t need_base = budget - excluded_left;

    // Skip right sides that cut off too many points or would exclude P2.
    std::size_t gr0 = 0;
    while (gr0 < rg.size() &&
           (c.right[rg[gr0].first].u < c.base_u || c.right.size() - rg[gr0].second > need_base)) {
      ++gr0;
    }
    if (gr0 == rg.size()) continue;

    const double u_first = c.right[rg[gr0].first].u;
    std::fill(in_window.begin(), in_window.end(), 0);
    for (std::size_t k = 0; k < c.far.size(); ++k) {
      if (c.far[k].u >= u_left && c.far[k].u <= u_first) ++in_window[far_group_of_entry[k]];
    }
    std::size_t level = 0;  // candidate top group
    std::size_t above = 0;  // window members strictly above the level

    for (std::size_t gr = gr0; gr < rg.size(); ++gr) {
      if (gr > gr0) {
        for (std::size_t k = rg[gr].first; k < rg[gr].second; ++k) {
          const std::size_t g = far_group_of_right[k];
          if (g == npos) continue;
          ++in_window[g];
          if (g < level) ++above;
        }
      }
      const std::size_t need = need_base - (c.right.size() - rg[gr].second);
      while (level < num_far && (above < need || (above == need && in_window[level] == 0))) {
        above += in_window[level];
        ++level;
      }
      if (trace) trace->steps.push_back({target, gl, gr, level});
      if (level == num_far || above != need) continue;

      const double top = c.far[fg[level].first].w;
      const std::size_t i4 = support_below(c.left, lg[gl].first, lg[gl].second, top);
      const std::size_t i5 = support_below(c.right, rg[gr].first, rg[gr].second, top);
      if (i4 == npos || i5 == npos) continue;
      const double u_right = c.right[rg[gr].first].u;
      std::size_t i3 = npos;
      for (std::size_t k = fg[level].first; k < fg[level].second; ++k) {
        const Member& m = c.far[k];
        if (m.u >= u_left && m.u <= u_right && m.idx < i3) i3 = m.idx;
      }
      out.push_back({i3, i4, i5, target});
    }
  }
}

}  // namespace detail

/// J, H and G for at most `t` exclusions among `members`: sizes min(t+1, |M|),
/// extended in collinear-robust mode to every point tied with the last one.
inline ExtremeCandidates extreme_candidates(const PointSet& ps, const std::vector<std::size_t>& members,
                                            const Frame& f, std::size_t t, bool collinear_robust) {
  const int sign = detail::enclosed_side_sign(ps, f, members);
  const auto projected = detail::project_members(ps, f, members, sign);
  const auto same_u = [](const detail::Member& m, const detail::Member& b) { return m.u == b.u; };
  const auto same_w = [](const detail::Member& m, const detail::Member& b) { return m.w == b.w; };
  auto left = detail::select_extreme(projected, t + 1, collinear_robust, detail::by_u, same_u);
  auto right = detail::select_extreme(projected, t + 1, collinear_robust, detail::by_u_desc, same_u);
  std::reverse(right.begin(), right.end());
  auto far = detail::select_extreme(projected, t + 1, collinear_robust, detail::by_w_desc, same_w);
  auto ids = [](const std::vector<detail::Member>& v) {
    std::vector<std::size_t> out;
    out.reserve(v.size());
    for (const auto& m : v) out.push_back(m.idx);
    return out;
  };
  return {ids(left), ids(right), ids(far)};
}

/// Every support triple whose rectangle (base through the frame's pair)
/// excludes exactly `target_t` points, `m` of which lie beyond the base line.
/// Triples come out in (i4, i5, i3) order. Candidate lists always include
/// complete tie groups; in general-position mode a tie group of three or more
/// raises CollinearInput.
inline std::vector<CandidateTriple> enclose(const PointSet& ps, const std::vector<std::size_t>& members,
                                            std::size_t target_t, const Frame& f, std::size_t m,
                                            bool collinear_robust, EncloseTrace* trace = nullptr) {
  if (m > target_t || members.empty()) return {};
  const std::size_t budget = target_t - m;
  const int sign = detail::enclosed_side_sign(ps, f, members);
  const auto projected = detail::project_members(ps, f, members, sign);
  const auto cands = detail::collect_candidates(projected, budget, f.norm2());
  std::vector<CandidateTriple> out;
  detail::scan_triples(cands, budget, target_t, !collinear_robust, out, trace);
  std::sort(out.begin(), out.end(), [](const CandidateTriple& a, const CandidateTriple& b) {
    return std::tie(a.i4, a.i5, a.i3) < std::tie(b.i4, b.i5, b.i3);
  });
  return out;
}

}  // namespace mer
