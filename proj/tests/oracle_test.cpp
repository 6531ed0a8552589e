#include <gtest/gtest.h>

#include "support.hpp"
#include "trajint/construct.hpp"
#include "trajint/oracle.hpp"

namespace trajint {
namespace {

using testing::one_step;
using D = double;

TEST(Grid, BinomialCall) {
  const auto t = one_step<D>(1.0, {2.0, 0.5});
  const auto f = Payoff<D>::call(1.0).tabulate(t);
  EXPECT_NEAR(grid_superhedge(t, f, NodePath::root(), {-5, 5, 1e-4}).value(), 1.0 / 3.0, 1e-4);
  EXPECT_NEAR(grid_superhedge(t, constant_function(t, ExtReal<D>(0.0)), NodePath::root(), {-5, 5, 1e-3}).value(), 0.0,
              1e-12);
}

TEST(Grid, TypeIIFollowsTheRange) {
  const auto t = one_step<D>(1.0, {2.0, 3.0});
  const auto f = constant_function(t, ExtReal<D>(0.0));
  const double a = grid_superhedge(t, f, NodePath::root(), {-10, 10, 1e-2}).value();
  const double b = grid_superhedge(t, f, NodePath::root(), {-10, 100, 1e-2}).value();
  EXPECT_NEAR(a, -10.0, 1e-9);
  EXPECT_NEAR(b, -100.0, 1e-9);
}

TEST(Grid, Budget) {
  const auto t = one_step<D>(1.0, {2.0, 0.5});
  const auto f = constant_function(t, ExtReal<D>(0.0));
  EXPECT_THROW(grid_superhedge(t, f, NodePath::root(), {-1e4, 1e4, 1e-3}), Error);
}

TEST(Dual, Examples) {
  EXPECT_NEAR(martingale_measure_value({{-0.5, 0.0}, {1.0, 1.0}}).value(), 1.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(martingale_measure_value({{-1.0, 1.0}, {1.0, 1.0}}).value(), 1.0);
  EXPECT_DOUBLE_EQ(martingale_measure_value({{0.0, 5.0}}).value(), 5.0);
  EXPECT_THROW(martingale_measure_value({{1.0, 0.0}, {2.0, 0.0}}), Error);
}

TEST(Enumerate, CallWithOneAndTwoTerms) {
  const auto t = one_step<D>(1.0, {2.0, 0.5});
  const auto f = Payoff<D>::call(1.0).tabulate(t);
  const std::vector<D> grid{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
  const double one = enumerate_superpositions(t, f, NodePath::root(), 1, grid).value();
  const double two = enumerate_superpositions(t, f, NodePath::root(), 2, grid).value();
  EXPECT_NEAR(one, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(two, 1.0 / 3.0, 1e-12);
}

TEST(Enumerate, IndicatorBelowArbitrageOne) {
  const auto t = one_step<D>(1.0, {2.0, 1.0});
  const auto f = Payoff<D>::indicator({NodePath{0}}).tabulate(t);
  double prev = INFINITY;
  for (double top : {0.25, 0.5, 1.0}) {
    const double v = enumerate_superpositions(t, f, NodePath::root(), 1, {0.0, top}).value();
    EXPECT_LE(v, prev);
    prev = v;
  }
  EXPECT_NEAR(prev, 0.0, 1e-12);
}

TEST(Enumerate, MonotoneInTermsAndAboveDP) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto t = random_tree<D>(testing::random_options(2, 2), seed);
    const auto f = random_leaf_function(t, seed, 0, 300);
    const std::vector<D> grid{-2, -1, 0, 1, 2};
    const double dp = price_all(t, f, PriceMode::norm).at(0).value();
    const double one = enumerate_superpositions(t, f, NodePath::root(), 1, grid).value();
    const double two = enumerate_superpositions(t, f, NodePath::root(), 2, {-1, 0, 1}).value();
    EXPECT_GE(one, dp - 1e-9);
    EXPECT_GE(two, dp - 1e-9);
    const double two_wide = enumerate_superpositions(t, f, NodePath::root(), 1, {-1, 0, 1}).value();
    EXPECT_LE(two, two_wide + 1e-12);
  }
}

TEST(Enumerate, Budget) {
  const auto t = testing::pm_one_binomial<D>(3);
  const auto f = constant_function(t, ExtReal<D>(0.0));
  std::vector<D> grid(20, 0.0);
  EXPECT_THROW(enumerate_superpositions(t, f, NodePath::root(), 3, grid), Error);
}

TEST(Oracles, AgreeWithDPOnRandomTrees) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto t = random_tree<D>(testing::random_options(3), seed);
    const auto f = Payoff<D>::call(t.s0()).tabulate(t);
    const auto dp = price_all(t, f, PriceMode::upper);
    for (NodeId id = 0; id < t.size(); ++id) {
      if (t.is_leaf(id)) continue;
      std::vector<HedgePoint<D>> pts;
      for (NodeId c : t.children(id)) pts.push_back({t.increment(c), dp.at(c)});
      EXPECT_NEAR(martingale_measure_value(pts).value(), dp.at(id).value(), 1e-9);
    }
    EXPECT_NEAR(grid_superhedge(t, f, NodePath::root(), {-2, 2, 1e-3}).value(), dp.at(0).value(), 1e-2) << seed;
  }
}

}  // namespace
}  // namespace trajint
