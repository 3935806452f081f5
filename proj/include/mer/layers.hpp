#pragma once

// Convex hull and convex layers (onion peeling).

#include <algorithm>
#include <cstddef>
#include <vector>

#include "mer/geom.hpp"

namespace mer {

/// Hull boundary of the points at `indices`: vertices plus points interior to
/// hull edges, counterclockwise from the lexicographically smallest point.
/// Points sharing coordinates are all reported, adjacent in index order.
inline std::vector<std::size_t> convex_hull(const PointSet& ps, const std::vector<std::size_t>& indices) {
  if (indices.empty()) return {};
  std::vector<std::size_t> sorted = indices;
  std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
    if (ps[a] == ps[b]) return a < b;
    return lex_less(ps[a], ps[b]);
  });

  // Collapse coincident points; each group is reported as a unit.
  std::vector<std::size_t> group_start;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (k == 0 || !(ps[sorted[k]] == ps[sorted[k - 1]])) group_start.push_back(k);
  }
  const std::size_t m = group_start.size();
  auto rep = [&](std::size_t g) { return ps[sorted[group_start[g]]]; };
  auto expand = [&](const std::vector<std::size_t>& groups) {
    std::vector<std::size_t> out;
    for (std::size_t g : groups) {
      const std::size_t end = g + 1 < m ? group_start[g + 1] : sorted.size();
      for (std::size_t k = group_start[g]; k < end; ++k) out.push_back(sorted[k]);
    }
    return out;
  };

  std::vector<std::size_t> all(m);
  for (std::size_t g = 0; g < m; ++g) all[g] = g;
  if (m <= 2) return expand(all);

  bool collinear = true;
  for (std::size_t g = 2; g < m && collinear; ++g) {
    collinear = orientation(rep(0), rep(1), rep(g)) == 0;
  }
  if (collinear) return expand(all);

  // Monotone chain that keeps collinear boundary points (pops only on right turns).
  std::vector<std::size_t> chain;
  auto push = [&](std::size_t g) {
    while (chain.size() >= 2 &&
           orientation(rep(chain[chain.size() - 2]), rep(chain.back()), rep(g)) < 0) {
      chain.pop_back();
    }
    chain.push_back(g);
  };
  for (std::size_t g = 0; g < m; ++g) push(g);
  std::vector<std::size_t> lower = chain;
  chain.clear();
  for (std::size_t g = m; g-- > 0;) push(g);
  std::vector<std::size_t> upper = chain;

  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return expand(lower);
}

inline std::vector<std::size_t> convex_hull(const PointSet& ps) {
  std::vector<std::size_t> all(ps.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return convex_hull(ps, all);
}

struct LayerDecomposition {
  std::vector<std::vector<std::size_t>> layers;  // layers[0] is outermost
  std::size_t depth = 0;                         // number of nonempty peeled layers
  std::vector<std::size_t> layer_of;             // 1-based; max_layers + 1 if not peeled
};

/// Peels hulls until the set is empty or `max_layers` layers were taken.
inline LayerDecomposition convex_layers(const PointSet& ps, std::size_t max_layers) {
  LayerDecomposition out;
  out.layer_of.assign(ps.size(), max_layers + 1);
  std::vector<std::size_t> remaining(ps.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;

  while (!remaining.empty() && out.layers.size() < max_layers) {
    std::vector<std::size_t> hull = convex_hull(ps, remaining);
    const std::size_t layer = out.layers.size() + 1;
    for (std::size_t i : hull) out.layer_of[i] = layer;
    std::vector<std::size_t> rest;
    rest.reserve(remaining.size() - hull.size());
    for (std::size_t i : remaining) {
      if (out.layer_of[i] != layer) rest.push_back(i);
    }
    remaining = std::move(rest);
    out.layers.push_back(std::move(hull));
  }
  out.depth = out.layers.size();
  return out;
}

/// Number of points on the first t + 1 convex layers.
inline std::size_t k_first_layers(const PointSet& ps, std::size_t t) {
  const LayerDecomposition d = convex_layers(ps, t + 1);
  std::size_t k = 0;
  for (const auto& layer : d.layers) k += layer.size();
  return k;
}

}  // namespace mer
