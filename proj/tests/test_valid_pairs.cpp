#include <gtest/gtest.h>

#include <cstdlib>
#include <map>

#include "support/brute_force.hpp"

using namespace mer;
using mer::testing::brute_valid_pairs;

namespace {

PointSet octagon() { return PointSet(generate(Distribution::convex_position, 8, 11)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST(ValidPairs, ConvexOctagonCounts) {
  EXPECT_EQ(valid_pairs(octagon(), 1, false).size(), 16u);
  EXPECT_EQ(valid_pairs(octagon(), 2, false).size(), 24u);
  EXPECT_EQ(valid_pairs(octagon(), 0, false).size(), 8u);
}

TEST(ValidPairs, ConvexPositionIsAlwaysNTimesTPlusOne) {
  for (std::size_t n : {7, 10, 15}) {
    const PointSet ps(generate(Distribution::convex_position, n, n));
    for (long long t = 0; 2 * t < static_cast<long long>(n); ++t) {
      EXPECT_EQ(valid_pairs(ps, t, false).size(), n * static_cast<std::size_t>(t + 1)) << n << ' ' << t;
    }
  }
}

TEST(ValidPairs, SquareWithCenterHullEdgesOnly) {
  const PointSet ps({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}});
  const auto pairs = valid_pairs(ps, 0, true);
  const std::vector<ValidPair> expect{
      {0, 1, 0, Side::right}, {0, 3, 0, Side::left}, {1, 2, 0, Side::right}, {2, 3, 0, Side::right}};
  EXPECT_EQ(pairs, expect);
}

TEST(ValidPairs, HullEdgesAreValidOutward) {
  const PointSet ps(generate(Distribution::uniform_square, 60, 4));
  const auto pairs = valid_pairs(ps, 0, false);
  const auto hull = convex_hull(ps);
  for (std::size_t k = 0; k < hull.size(); ++k) {
    const std::size_t a = hull[k], b = hull[(k + 1) % hull.size()];
    // Counterclockwise hull: the outside of edge a->b is to its right.
    const ValidPair expect = a < b ? ValidPair{a, b, 0, Side::right} : ValidPair{b, a, 0, Side::left};
    EXPECT_TRUE(std::binary_search(pairs.begin(), pairs.end(), expect)) << a << ' ' << b;
  }
  EXPECT_EQ(pairs.size(), hull.size());
}

TEST(ValidPairs, MatchesBruteForceInGeneralPosition) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const std::size_t n = 5 + seed % 40;
    const PointSet ps(generate(Distribution::uniform_square, n, seed));
    const long long t = static_cast<long long>(seed % ((n - 1) / 2 + 1));
    EXPECT_EQ(valid_pairs(ps, t, false), brute_valid_pairs(ps, static_cast<std::size_t>(t))) << seed;
  }
}

TEST(ValidPairs, MatchesBruteForceWithCollinearPoints) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const std::size_t n = 5 + seed % 30;
    const PointSet ps(generate(Distribution::grid_collinear, n, seed));
    const long long t = static_cast<long long>(seed % ((n - 1) / 2 + 1));
    EXPECT_EQ(valid_pairs(ps, t, true), brute_valid_pairs(ps, static_cast<std::size_t>(t))) << seed;
  }
}

TEST(ValidPairs, CoincidentPointsInRobustMode) {
  const PointSet ps({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {4, 0}, {1, 2}});
  EXPECT_EQ(valid_pairs(ps, 1, true), brute_valid_pairs(ps, 1));
  EXPECT_EQ(code_of([&] { valid_pairs(ps, 1, false); }), ErrorCode::CollinearInput);
}

TEST(ValidPairs, Errors) {
  const PointSet ps(generate(Distribution::uniform_square, 6, 1));
  EXPECT_EQ(code_of([&] { valid_pairs(ps, 3, false); }), ErrorCode::InvalidT);
  EXPECT_EQ(code_of([&] { valid_pairs(ps, -1, false); }), ErrorCode::InvalidT);
  const PointSet line({{0, 0}, {1, 1}, {2, 2}, {5, 0}, {0, 7}});
  EXPECT_EQ(code_of([&] { valid_pairs(line, 1, false); }), ErrorCode::CollinearInput);
  EXPECT_NO_THROW(valid_pairs(line, 1, true));
}

TEST(ValidPairs, ExcludedCountIsOpenHalfPlaneCount) {
  const PointSet ps(generate(Distribution::grid_collinear, 25, 9));
  for (const ValidPair& vp : valid_pairs(ps, 5, true)) {
    std::size_t count = 0;
    for (std::size_t k = 0; k < ps.size(); ++k) {
      const int o = orientation(ps[vp.i1], ps[vp.i2], ps[k]);
      count += vp.excluded_side == Side::left ? o > 0 : o < 0;
    }
    EXPECT_EQ(count, vp.excluded_count);
    EXPECT_LE(vp.excluded_count, 5u);
    EXPECT_LT(vp.i1, vp.i2);
  }
}

TEST(ValidPairs, SweepBookkeeping) {
  const PointSet ps(generate(Distribution::grid_collinear, 30, 2));
  std::map<std::size_t, std::size_t> steps;
  valid_pairs(ps, 4, true, [&](const SweepStep& s) {
    ++steps[s.pivot];
    EXPECT_EQ(s.strict_left + s.strict_right + s.on_line, ps.size() - 1);
    EXPECT_EQ(s.left_after, s.strict_left + s.from_right);
    EXPECT_EQ(s.right_after, s.strict_right + s.from_left);
    EXPECT_EQ(s.on_line, s.from_left + s.from_right);
  });
  EXPECT_EQ(steps.size(), ps.size());
}

TEST(ValidPairs, StrictCountsMatchLineThroughPivot) {
  const PointSet ps(generate(Distribution::uniform_square, 25, 8));
  valid_pairs(ps, 3, false, [&](const SweepStep& s) {
    EXPECT_EQ(s.on_line, 1u);
    // Every stop splits the other n - 2 points between the two sides.
    EXPECT_EQ(s.strict_left + s.strict_right, ps.size() - 2);
  });
}

TEST(ValidPairs, IndependentOfWorkerCount) {
  const PointSet ps(generate(Distribution::uniform_square, 300, 21));
  setenv("MER_WORKERS", "1", 1);
  const auto one = valid_pairs(ps, 6, false);
  setenv("MER_WORKERS", "4", 1);
  const auto four = valid_pairs(ps, 6, false);
  unsetenv("MER_WORKERS");
  EXPECT_EQ(one, four);
}

TEST(EnclosedSide, SquareWithCenterBottomEdge) {
  const PointSet ps({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}});
  const EnclosedSide s = enclosed_side_points(ps, {0, 1, 0, Side::right});
  EXPECT_EQ(s.members, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(s.excluded, 0u);
}

TEST(EnclosedSide, SquareWithOutlierTopEdge) {
  const PointSet ps({{0, 0}, {4, 0}, {4, 3}, {0, 3}, {2, 1}, {10, 10}});
  // Ray (0,3) -> (4,3) has the outlier on its left.
  const ValidPair vp{2, 3, 1, Side::right};  // ray (4,3) -> (0,3): outlier on the right
  const EnclosedSide s = enclosed_side_points(ps, vp);
  EXPECT_EQ(s.members.size(), 5u);
  EXPECT_EQ(s.excluded, 1u);
  EXPECT_TRUE(std::find(s.members.begin(), s.members.end(), 5u) == s.members.end());
}

TEST(EnclosedSide, PointsOnTheLineAreEnclosed) {
  const PointSet ps({{0, 0}, {1, 0}, {2, 0}, {0, 1}});
  const EnclosedSide s = enclosed_side_points(ps, {0, 2, 0, Side::right});
  EXPECT_TRUE(std::find(s.members.begin(), s.members.end(), 1u) != s.members.end());
  EXPECT_EQ(s.members.size(), 4u);
}
