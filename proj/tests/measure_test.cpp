#include <gtest/gtest.h>

#include "support.hpp"
#include "trajint/construct.hpp"
#include "trajint/measure.hpp"
#include "trajint/oracle.hpp"

namespace trajint {
namespace {

using testing::one_step;
using testing::pm_one_binomial;
using R = Rational;

// ±1 binomial whose up child is an ArbitrageI node: {+1 jump, 0 flat}.
TrajectoryTree<R> binomial_with_jump() {
  TreeSpec<R> spec{R(0), {{R(1), {{R(2), {}}, {R(1), {}}}}, {R(-1), {{R(0), {}}, {R(-2), {}}}}}};
  return TrajectoryTree<R>::build(R(0), 2, spec);
}

ElementaryFunction<R> delta0(const R& V = R(0)) {
  ElementaryFunction<R> p;
  p.V = V;
  p.H[NodePath::root()] = R(1);
  p.maturity = 1;
  return p;
}

TEST(Null, EmptySetIsNull) {
  const auto t = pm_one_binomial<R>(2);
  EXPECT_TRUE(is_conditionally_null(t, {}, NodePath::root()).is_null);
}

TEST(Null, JumpBelowArbitrageOne) {
  const auto t = binomial_with_jump();
  const auto r = is_conditionally_null(t, {NodePath{0, 0}}, NodePath::root());
  EXPECT_TRUE(r.is_null);
  EXPECT_EQ(r.norm_value, ExtReal<R>(R(0)));
  EXPECT_TRUE(is_conditionally_null(t, {NodePath{0, 0}}, NodePath{0}).is_null);
  EXPECT_FALSE(is_conditionally_null(t, {NodePath{0, 1}}, NodePath{0}).is_null);
}

TEST(Null, BinomialLeafIsNotNull) {
  const auto t = pm_one_binomial<R>(2);
  const auto r = is_conditionally_null(t, {NodePath{0, 0}}, NodePath::root());
  EXPECT_FALSE(r.is_null);
  EXPECT_EQ(r.norm_value, ExtReal<R>(R(1, 4)));
  // Float oracle: the grid hedge cannot beat the exact value.
  const auto td = pm_one_binomial<double>(2);
  const auto ind = Payoff<double>::indicator({NodePath{0, 0}}).tabulate(td);
  EXPECT_NEAR(grid_superhedge(td, ind, NodePath::root(), {-2, 2, 1e-4}).value(), 0.25, 1e-3);
}

TEST(Null, NullNodes) {
  const auto t = binomial_with_jump();
  const auto nulls = null_nodes(t);
  EXPECT_FALSE(nulls[t.root()]);
  EXPECT_TRUE(nulls[t.find(NodePath{0, 0})]);
  EXPECT_FALSE(nulls[t.find(NodePath{0, 1})]);
  EXPECT_FALSE(nulls[t.find(NodePath{1})]);
}

TEST(Null, NullNodesMatchIndicatorNorms) {
  RandomTreeOptions opt;
  opt.arbitrage_type1_rate = 0.3;
  opt.arbitrage_type2_rate = 0.15;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto t = random_tree<R>(opt, seed);
    const auto nulls = null_nodes(t);
    for (NodeId id = 0; id < t.size(); ++id) {
      LeafFunction<R> ind(t.leaf_count(), ExtReal<R>(R(0)));
      for (std::size_t p = t.node(id).leaf_begin; p < t.node(id).leaf_end; ++p) ind[p] = ExtReal<R>(R(1));
      EXPECT_EQ(nulls[id], is_zero(conditional_norm(t, ind, NodePath::root())))
          << "seed " << seed << " node " << t.path(id).to_string();
    }
  }
}

TEST(LProperty, Example2HoldsEverywhere) {
  const auto r = check_L_property(gen_example2<R>(8));
  EXPECT_TRUE(r.all);
  for (const auto& [path, v] : r.upper_of_zero) EXPECT_EQ(v, ExtReal<R>(R(0))) << path.to_string();
}

TEST(LProperty, TypeIIFails) {
  TreeSpec<R> spec{R(1), {{R(2), {{R(3), {}}, {R(4), {}}}}, {R(0), {{R(0), {}}}}}};
  const auto t = TrajectoryTree<R>::build(R(1), 2, spec);
  const auto r = check_L_property(t);
  EXPECT_FALSE(r.all);
  EXPECT_FALSE(r.holds.at(NodePath{0}));
  EXPECT_TRUE(r.upper_of_zero.at(NodePath{0}).is_neg_inf());
  EXPECT_TRUE(r.holds.at(NodePath{1}));
}

TEST(LProperty, FlatChainAndTruncatedExample1) {
  EXPECT_TRUE(check_L_property(one_step<R>(R(1), {R(1)})).all);
  // The failure in the untruncated family is a limit effect; every finite
  // truncation satisfies (L).
  EXPECT_TRUE(check_L_property(gen_example1<R>(6)).all);
}

TEST(KProperty, BinomialIncrement) {
  const auto t = pm_one_binomial<R>(1);
  const auto r = check_K_property(t, delta0(), NodePath::root());
  EXPECT_EQ(r.norm_positive, ExtReal<R>(R(1, 2)));
  EXPECT_EQ(r.integral, R(0));
  EXPECT_EQ(r.norm_negative, ExtReal<R>(R(1, 2)));
  EXPECT_TRUE(r.holds);
}

TEST(KProperty, RandomElementaryOnRandomTrees) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto t = random_tree<R>(testing::random_options(3), seed);
    for (std::uint64_t k = 0; k < 5; ++k) {
      const auto p = random_elementary(t, NodePath::root(), seed * 10 + k);
      EXPECT_TRUE(check_K_property(t, p, NodePath::root()).holds) << seed << "/" << k;
    }
  }
}

TEST(Integrable, ElementaryIsIntegrable) {
  const auto t = random_tree<R>(testing::random_options(3), 5);
  const auto p = random_elementary(t, NodePath::root(), 9);
  const auto r = check_integrable(t, tabulate_elementary(p, t), 0);
  EXPECT_TRUE(r.integrable);
  ASSERT_TRUE(r.nodes.front().integral);
  EXPECT_EQ(*r.nodes.front().integral, ExtReal<R>(p.V));
}

TEST(Integrable, TrinomialAbsIncrementIsNot) {
  const auto t = testing::additive_trinomial<R>();
  const auto r = check_integrable(t, Payoff<R>::abs_increment(0).tabulate(t), 0);
  EXPECT_FALSE(r.integrable);
  EXPECT_EQ(r.nodes.front().gap, ExtReal<R>(R(1)));
  EXPECT_EQ(r.exception_norm, ExtReal<R>(R(1)));
  EXPECT_TRUE(check_integrable(t, Payoff<R>::abs_increment(0).tabulate(t), 1).integrable);
}

TEST(Integrable, ChangeOnANullSet) {
  const auto t = binomial_with_jump();
  ElementaryFunction<R> g;
  g.V = R(1);
  g.maturity = 2;
  g.H[NodePath::root()] = R(2);
  g.H[NodePath{1}] = R(-1);
  auto f = tabulate_elementary(g, t);
  f[t.leaf_position(t.find(NodePath{0, 0}))] = ExtReal<R>(R(50));
  for (std::size_t j = 0; j <= 2; ++j) EXPECT_TRUE(check_integrable(t, f, j).integrable) << j;
  EXPECT_EQ(*check_integrable(t, f, 0).nodes.front().integral, ExtReal<R>(R(1)));
}

TEST(Integrable, BinomialTreesAreComplete) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto t = random_tree<R>(testing::random_options(3, 2), seed);
    const auto f = random_leaf_function(t, seed);
    for (std::size_t j = 0; j <= 3; ++j) EXPECT_TRUE(check_integrable(t, f, j).integrable);
  }
}

TEST(Convergence, ScaledElementaryFamily) {
  const auto t = pm_one_binomial<R>(2);
  ElementaryFunction<R> g = delta0(R(2));
  const auto base = tabulate_elementary(g, t);
  std::vector<LeafFunction<R>> family;
  for (long n = 1; n <= 8; ++n) family.push_back(scale(R(n - 1, n), base));
  const auto r = verify_convergence_theorems(t, family, 0, ConvergenceMode::monotone);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.all_integrable);
  const auto& node = r.nodes.front();
  for (std::size_t n = 0; n < 8; ++n) {
    const long k = static_cast<long>(n) + 1;
    EXPECT_EQ(node.residual[n], ExtReal<R>(R(2) * (R(1, k) - R(1, 8))));
  }
}

TEST(Convergence, BeppoLeviPieces) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t = random_tree<R>(testing::random_options(3, 2), seed);
    std::vector<LeafFunction<R>> pieces;
    for (std::uint64_t k = 0; k < 5; ++k) pieces.push_back(random_leaf_function(t, seed * 7 + k, 0, 300));
    const auto r = verify_convergence_theorems(t, pieces, 1, ConvergenceMode::beppo_levi);
    EXPECT_TRUE(r.all_integrable);
    EXPECT_TRUE(r.holds) << seed;
  }
}

TEST(Convergence, ConstantSequenceAndErrors) {
  const auto t = pm_one_binomial<R>(1);
  const auto c = constant_function(t, ExtReal<R>(R(3)));
  const auto r = verify_convergence_theorems(t, {c, c, c}, 0, ConvergenceMode::monotone);
  EXPECT_TRUE(r.holds);
  for (const auto& x : r.nodes.front().residual) EXPECT_EQ(x, ExtReal<R>(R(0)));
  const auto d = constant_function(t, ExtReal<R>(R(1)));
  EXPECT_THROW(verify_convergence_theorems(t, {c, d}, 0, ConvergenceMode::monotone), Error);
  EXPECT_THROW(verify_convergence_theorems(t, {scale(R(-1), c)}, 0, ConvergenceMode::beppo_levi), Error);
}

TEST(Decomposition, IntegrableHasNullRemainder) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t = random_tree<R>(testing::random_options(3, 2), seed);
    const auto f = random_leaf_function(t, seed, 0, 500);
    const auto d = integrable_decomposition(t, f, NodePath::root());
    EXPECT_EQ(d.norm_u, ExtReal<R>(R(0)));
    const auto v = tabulate_elementary(d.v, t);
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_GE(d.u[i], ExtReal<R>(R(0)));
      EXPECT_EQ(v[i] - d.u[i], f[i]);
    }
  }
}

}  // namespace
}  // namespace trajint
