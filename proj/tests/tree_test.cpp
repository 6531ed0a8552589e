#include <gtest/gtest.h>

#include <set>

#include "support.hpp"
#include "trajint/construct.hpp"
#include "trajint/payoff.hpp"
#include "trajint/tree.hpp"

namespace trajint {
namespace {

using testing::one_step;
using testing::pm_one_binomial;

TEST(NodePath, ParseAndPrint) {
  EXPECT_EQ(NodePath::parse("root"), NodePath::root());
  EXPECT_EQ(NodePath::parse(""), NodePath::root());
  EXPECT_EQ(NodePath::parse("0.2.1"), (NodePath{0, 2, 1}));
  EXPECT_EQ(NodePath::parse("[0,2,1]"), (NodePath{0, 2, 1}));
  EXPECT_EQ((NodePath{1, 0}).to_string(), "1.0");
  EXPECT_EQ(NodePath::root().to_string(), "root");
  EXPECT_TRUE((NodePath{1}).is_prefix_of(NodePath{1, 0}));
  EXPECT_FALSE((NodePath{0}).is_prefix_of(NodePath{1, 0}));
  EXPECT_THROW(NodePath::parse("0.x"), InputError);
}

TEST(Tree, BuildValidates) {
  TreeSpec<double> spec{1.0, {{2.0, {}}, {0.5, {{0.4, {}}}}}};
  EXPECT_THROW(TrajectoryTree<double>::build(1.0, 1, spec), InputError);  // leaf at depth 2
  TreeSpec<double> short_leaf{1.0, {{2.0, {{3.0, {}}}}, {0.5, {}}}};
  EXPECT_THROW(TrajectoryTree<double>::build(1.0, 2, short_leaf), InputError);
  EXPECT_THROW(TrajectoryTree<double>::build(2.0, 1, one_step<double>(1.0, {2.0, 0.5}).to_spec()), InputError);
}

TEST(Tree, IncrementsAndPaths) {
  const auto t = one_step<double>(1.0, {2.0, 0.5});
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.leaf_count(), 2u);
  EXPECT_DOUBLE_EQ(t.increment(t.find(NodePath{0})), 1.0);
  EXPECT_DOUBLE_EQ(t.increment(t.find(NodePath{1})), -0.5);
  EXPECT_EQ(t.path(2), (NodePath{1}));
  EXPECT_THROW(t.find(NodePath{2}), Error);
}

TEST(Tree, ConditionalSpacesPartitionTheLeaves) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto t = random_tree<Rational>(testing::random_options(3), seed);
    for (std::size_t d = 0; d <= t.horizon(); ++d) {
      std::multiset<NodeId> seen;
      for (NodeId n : t.nodes_at_depth(d)) {
        for (NodeId leaf : t.leaves_under(n)) {
          seen.insert(leaf);
          EXPECT_EQ(t.ancestor(leaf, d), n);
        }
      }
      EXPECT_EQ(seen.size(), t.leaf_count()) << "seed " << seed << " depth " << d;
      EXPECT_EQ(std::set<NodeId>(seen.begin(), seen.end()).size(), t.leaf_count());
    }
  }
}

TEST(Tree, SpecRoundTrip) {
  const auto t = pm_one_binomial<Rational>(3);
  const auto again = TrajectoryTree<Rational>::build(t.s0(), t.horizon(), t.to_spec());
  ASSERT_EQ(again.size(), t.size());
  for (NodeId id = 0; id < t.size(); ++id) EXPECT_EQ(again.value(id), t.value(id));
}

TEST(Tree, ConditionalLeaves) {
  const auto t = pm_one_binomial<Rational>(2);
  const auto leaves = conditional_leaves(t, NodePath{1});
  ASSERT_EQ(leaves.size(), 2u);
  EXPECT_EQ(leaves[0], (NodePath{1, 0}));
  EXPECT_EQ(leaves[1], (NodePath{1, 1}));
  const auto prices = t.price_path(t.find(NodePath{1, 0}));
  EXPECT_EQ(prices, (std::vector<Rational>{0, -1, 0}));
}

TEST(Payoff, Evaluation) {
  const auto t = pm_one_binomial<Rational>(2, Rational(5));
  const NodePath up_up{0, 0};
  const NodePath down_up{1, 0};
  EXPECT_EQ(Payoff<Rational>::call(Rational(6)).evaluate(t, up_up), ExtReal<Rational>(Rational(1)));
  EXPECT_EQ(Payoff<Rational>::put(Rational(6)).evaluate(t, down_up), ExtReal<Rational>(Rational(1)));
  EXPECT_EQ(Payoff<Rational>::terminal().evaluate(t, up_up), ExtReal<Rational>(Rational(7)));
  EXPECT_EQ(Payoff<Rational>::abs_increment(0).evaluate(t, down_up), ExtReal<Rational>(Rational(1)));
  EXPECT_EQ(Payoff<Rational>::indicator({up_up}).evaluate(t, up_up), ExtReal<Rational>(Rational(1)));
  EXPECT_EQ(Payoff<Rational>::indicator({up_up}).evaluate(t, down_up), ExtReal<Rational>(Rational(0)));
  EXPECT_THROW(Payoff<Rational>::terminal().evaluate(t, NodePath{0}), Error);
  EXPECT_THROW(Payoff<Rational>::table({{up_up, Rational(1)}}).evaluate(t, down_up), Error);
}

TEST(Payoff, LiftFromDepth) {
  const auto t = pm_one_binomial<Rational>(2);
  std::vector<ExtReal<Rational>> node_values(t.size(), ExtReal<Rational>(Rational(0)));
  node_values[t.find(NodePath{0})] = Rational(4);
  node_values[t.find(NodePath{1})] = ExtReal<Rational>::neg_inf();
  const auto lifted = lift_from_depth(t, node_values, 1);
  ASSERT_EQ(lifted.size(), 4u);
  EXPECT_EQ(lifted[0], ExtReal<Rational>(Rational(4)));
  EXPECT_EQ(lifted[1], ExtReal<Rational>(Rational(4)));
  EXPECT_TRUE(lifted[2].is_neg_inf());
  EXPECT_TRUE(lifted[3].is_neg_inf());
}

}  // namespace
}  // namespace trajint
