#include <gtest/gtest.h>

#include "support.hpp"
#include "trajint/classify.hpp"
#include "trajint/construct.hpp"
#include "trajint/superhedge.hpp"

namespace trajint {
namespace {

using R = Rational;

std::vector<std::vector<R>> leaf_paths(const TrajectoryTree<R>& t) {
  std::vector<std::vector<R>> out;
  for (NodeId leaf : t.leaves()) out.push_back(t.price_path(leaf));
  return out;
}

TEST(Example1, Leaves) {
  EXPECT_EQ(leaf_paths(gen_example1<R>(1)), (std::vector<std::vector<R>>{{1, 2}, {1, 1}}));
  EXPECT_EQ(leaf_paths(gen_example1<R>(2)), (std::vector<std::vector<R>>{{1, 2, 2}, {1, 1, 2}, {1, 1, 1}}));
  const auto t0 = gen_example1<R>(0);
  EXPECT_EQ(t0.size(), 1u);
  EXPECT_EQ(t0.s0(), R(1));
  EXPECT_EQ(gen_example1<R>(10).leaf_count(), 11u);
}

TEST(Example2, Leaves) {
  EXPECT_EQ(leaf_paths(gen_example2<R>(1)), (std::vector<std::vector<R>>{{2, 3}, {2, 1}, {2, 2}}));
  EXPECT_EQ(gen_example2<R>(2).leaf_count(), 5u);
  EXPECT_EQ(gen_example2<R>(8).leaf_count(), 17u);
}

TEST(Lattice, Shapes) {
  LatticeParams<R> b;
  const auto t = gen_lattice(b, 1, R(1));
  EXPECT_EQ(leaf_paths(t), (std::vector<std::vector<R>>{{1, 2}, {1, R(1, 2)}}));
  LatticeParams<R> tri;
  tri.kind = LatticeKind::trinomial;
  EXPECT_EQ(gen_lattice(tri, 1, R(1)).leaf_count(), 3u);
  EXPECT_EQ(gen_lattice(b, 2, R(1)).leaf_count(), 4u);
  LatticeParams<R> bad;
  bad.up = R(1, 2);
  bad.down = R(2);
  EXPECT_THROW(gen_lattice(bad, 1, R(1)), Error);
}

TEST(RandomTree, DeterministicAndSameInBothScalars) {
  const auto opt = testing::random_options(3);
  const auto a = random_tree<R>(opt, 42);
  const auto b = random_tree<R>(opt, 42);
  const auto d = random_tree<double>(opt, 42);
  ASSERT_EQ(a.size(), b.size());
  ASSERT_EQ(a.size(), d.size());
  for (NodeId id = 0; id < a.size(); ++id) {
    EXPECT_EQ(a.value(id), b.value(id));
    EXPECT_NEAR(a.value(id).get_d(), d.value(id), 1e-12);
    EXPECT_GE(a.value(id), R(1, 10));
    EXPECT_LE(a.value(id), R(10));
  }
}

TEST(RandomTree, ArbitrageRates) {
  RandomTreeOptions opt = testing::random_options(3);
  opt.min_branching = 2;
  opt.arbitrage_type2_rate = 1.0;
  const auto scan = scan_tree(random_tree<R>(opt, 1));
  for (const auto& [path, c] : scan.nodes) EXPECT_EQ(c.kind, NodeKind::arbitrage_type2);
  opt.arbitrage_type2_rate = 0.0;
  opt.arbitrage_type1_rate = 1.0;
  for (const auto& [path, c] : scan_tree(random_tree<R>(opt, 1)).nodes) EXPECT_EQ(c.kind, NodeKind::arbitrage_type1);
}

TEST(Contrarian, Example2WithUnitHoldings) {
  const auto t = gen_example2<R>(5);
  std::map<NodePath, R> F;
  for (NodeId id = 0; id < t.size(); ++id) {
    if (!t.is_leaf(id)) F[t.path(id)] = R(1);
  }
  const auto c = contrarian_trajectory(t, NodePath::root(), F, R(1, 2));
  ASSERT_EQ(c.steps.size(), 5u);
  R cum(0);
  for (const auto& s : c.steps) {
    EXPECT_LE(s.gain, R(0));
    EXPECT_LT(s.gain, s.bound);
    cum += s.gain;
  }
  EXPECT_EQ(c.cumulative, cum);
  EXPECT_EQ(c.steps[0].bound, R(1, 4));
  EXPECT_EQ(c.steps[1].bound, R(1, 8));
}

TEST(Contrarian, ZeroHoldingsGiveLeftmost) {
  const auto t = gen_example2<R>(3);
  const auto c = contrarian_trajectory(t, NodePath::root(), {}, R(1));
  EXPECT_EQ(c.leaf, (NodePath{0, 0, 0}));
}

TEST(Contrarian, PrefersFlatChildAtArbitrageOne) {
  const auto t = gen_example1<R>(3);
  std::map<NodePath, R> F{{NodePath::root(), R(-5)}};
  const auto c = contrarian_trajectory(t, NodePath::root(), F, R(1, 10));
  EXPECT_EQ(c.steps[0].child, 1u);
  EXPECT_EQ(c.steps[0].gain, R(0));
}

TEST(Contrarian, TypeIIStops) {
  TreeSpec<R> spec{R(1), {{R(2), {}}, {R(3), {}}}};
  const auto t = TrajectoryTree<R>::build(R(1), 1, spec);
  EXPECT_THROW(contrarian_trajectory(t, NodePath::root(), {{NodePath::root(), R(1)}}, R(1, 100)), Error);
}

TEST(Contrarian, CumulativeGainBelowEpsilonOnRandomTrees) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto t = random_tree<R>(testing::random_options(4), seed);
    const auto p = random_elementary(t, NodePath::root(), seed);
    const auto c = contrarian_trajectory(t, NodePath::root(), p.H, R(1, 1000));
    R prefix(0);
    for (const auto& s : c.steps) {
      prefix += s.gain;
      EXPECT_LT(prefix, R(1, 1000));
    }
  }
}

TEST(Accumulate, SumsAndChecks) {
  const auto t = testing::pm_one_binomial<R>(2);
  ElementaryFunction<R> a;
  a.V = R(1);
  a.maturity = 1;
  a.H[NodePath::root()] = R(1);
  const auto s = accumulate_portfolios(t, {a, a});
  EXPECT_EQ(s.sum.V, R(2));
  EXPECT_EQ(s.sum.holding(NodePath::root()), R(2));
  EXPECT_TRUE(s.admissible);
  ConstraintSet<R> longs(Interval<R>{ExtReal<R>(R(0)), ExtReal<R>::pos_inf()});
  auto neg = a;
  neg.H[NodePath::root()] = R(-3);
  EXPECT_FALSE(accumulate_portfolios(t, {a, neg}, longs).admissible);
  ElementaryFunction<R> other;
  other.start = 1;
  other.node = NodePath{0};
  other.maturity = 2;
  EXPECT_THROW(accumulate_portfolios(t, {a, other}), Error);
  EXPECT_THROW(accumulate_portfolios(t, {}), Error);
}

TEST(Accumulate, Example1Family) {
  const auto t = gen_example1<R>(4);
  const auto s = accumulate_portfolios(t, example1_family(t, 4));
  EXPECT_EQ(s.sum.V, R(0));
  ASSERT_EQ(s.sum.H.size(), 4u);
  for (const auto& [path, h] : s.sum.H) {
    EXPECT_EQ(h, R(1));
    for (std::size_t i : path.indices) EXPECT_EQ(i, 1u);  // flat prefix
  }
}

TEST(Example1, LFailureWitness) {
  const auto r = verify_example1_L_failure<R>(3, 5);
  EXPECT_EQ(r.jump_leaves, 3u);
  EXPECT_EQ(r.dominated_leaves, 3u);
  EXPECT_EQ(r.total_premium, R(0));
  EXPECT_EQ(r.flat_sum, R(0));
  EXPECT_EQ(r.min_jump_sum, R(1));
  EXPECT_TRUE(r.holds());
  EXPECT_TRUE(verify_example1_L_failure<R>(1, 1).holds());
  EXPECT_THROW(verify_example1_L_failure<R>(4, 3), Error);
}

TEST(Example2, SelectionKeepsGainsNonpositive) {
  const auto t = gen_example2<R>(4);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = random_elementary(t, NodePath::root(), seed);
    for (const auto& s : example2_selection(t, p)) EXPECT_LE(s.gain, R(0)) << seed << " n=" << s.n;
  }
}

}  // namespace
}  // namespace trajint
