#include <gtest/gtest.h>

#include "support.hpp"
#include "trajint/construct.hpp"
#include "trajint/martingale.hpp"

namespace trajint {
namespace {

using testing::pm_one_binomial;
using R = Rational;

TEST(Process, TerminalValueOnBinomial) {
  const auto t = pm_one_binomial<R>(3);
  const auto p = price_process(t, Payoff<R>::terminal().tabulate(t), ProcessMode::integral);
  for (NodeId id = 0; id < t.size(); ++id) EXPECT_EQ(p.values[id], ExtReal<R>(t.value(id)));
  EXPECT_EQ(classify_process(t, p).label(), ProcessClass::martingale);
}

TEST(Process, ConstantPayoff) {
  const auto t = random_tree<R>(testing::random_options(3), 3);
  for (ProcessMode m : {ProcessMode::upper, ProcessMode::lower, ProcessMode::integral}) {
    const auto p = price_process(t, constant_function(t, ExtReal<R>(R(4))), m);
    for (const auto& v : p.values) EXPECT_EQ(v, ExtReal<R>(R(4)));
  }
}

TEST(Process, TrinomialUpperIsStrictSupermartingale) {
  const auto t = testing::additive_trinomial<R>();
  const auto f = Payoff<R>::abs_increment(0).tabulate(t);
  const auto up = price_process(t, f, ProcessMode::upper);
  EXPECT_EQ(up.values[0], ExtReal<R>(R(1)));
  const auto c = classify_process(t, up);
  EXPECT_TRUE(c.supermartingale);
  EXPECT_FALSE(c.submartingale);
  EXPECT_EQ(c.label(), ProcessClass::supermartingale);
  const auto low = classify_process(t, price_process(t, f, ProcessMode::lower));
  EXPECT_EQ(low.label(), ProcessClass::submartingale);
}

TEST(Process, IntegralModeNamesTheNode) {
  const auto t = testing::additive_trinomial<R>();
  try {
    price_process(t, Payoff<R>::abs_increment(0).tabulate(t), ProcessMode::integral);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("root"), std::string::npos);
  }
}

TEST(Process, ClassesOnRandomTrees) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto t = random_tree<R>(testing::random_options(3), seed);
    const auto f = random_leaf_function(t, seed);
    EXPECT_TRUE(classify_process(t, price_process(t, f, ProcessMode::upper)).supermartingale) << seed;
    EXPECT_TRUE(classify_process(t, price_process(t, f, ProcessMode::lower)).submartingale) << seed;
  }
}

TEST(Process, Parse) {
  EXPECT_EQ(parse_process_mode("integral"), ProcessMode::integral);
  EXPECT_THROW(parse_process_mode("mean"), InputError);
  EXPECT_EQ(to_string(ProcessClass::none), "none");
}

TEST(Tower, ElementaryGivesEqualities) {
  const auto t = random_tree<R>(testing::random_options(3), 8);
  const auto p = random_elementary(t, NodePath::root(), 8);
  const auto f = tabulate_elementary(p, t);
  for (std::size_t j = 0; j <= 3; ++j) {
    for (std::size_t k = j; k <= 3; ++k) {
      const auto r = verify_tower(t, f, j, k);
      EXPECT_TRUE(r.chain_holds);
      EXPECT_TRUE(r.integrable);
      EXPECT_TRUE(r.equality_holds);
      for (const auto& n : r.nodes) EXPECT_FALSE(n.strict_somewhere);
    }
  }
}

TEST(Tower, IntegrableOnBinomialTrees) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto t = random_tree<R>(testing::random_options(4, 2), seed);
    const auto f = random_leaf_function(t, seed);
    const auto r = verify_tower(t, f, 1, 3);
    EXPECT_TRUE(r.integrable);
    EXPECT_TRUE(r.chain_holds);
    EXPECT_TRUE(r.equality_holds) << seed;
  }
}

TEST(Tower, NonIntegrableKeepsTheOrder) {
  TreeSpec<R> spec{R(0), {{R(1), {{R(2), {}}, {R(1), {}}, {R(0), {}}}}, {R(-1), {{R(0), {}}, {R(-1), {}}, {R(-2), {}}}}}};
  const auto t = TrajectoryTree<R>::build(R(0), 2, spec);
  const auto f = Payoff<R>::abs_increment(1).tabulate(t);
  const auto r = verify_tower(t, f, 0, 1);
  EXPECT_FALSE(r.integrable);
  EXPECT_TRUE(r.chain_holds);
  ASSERT_EQ(r.nodes.size(), 1u);
  EXPECT_TRUE(r.nodes[0].strict_somewhere);
  EXPECT_EQ(r.nodes[0].upper, ExtReal<R>(R(1)));
  EXPECT_EQ(r.nodes[0].lower, ExtReal<R>(R(0)));
  EXPECT_THROW(verify_tower(t, f, 2, 1), Error);
}

TEST(Tower, DeeperConditioningFixesCoarserProcess) {
  // A depth-j measurable function is its own integral at every k >= j.
  const auto t = random_tree<R>(testing::random_options(3), 4);
  const auto f = random_leaf_function(t, 4);
  const auto upper = price_all(t, f, PriceMode::upper);
  const auto g = lift_from_depth(t, upper.values, 1);
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto r = price_all(t, g, PriceMode::upper);
    const auto l = price_all(t, g, PriceMode::lower);
    for (NodeId id : t.nodes_at_depth(k)) {
      EXPECT_EQ(r.at(id), upper.at(t.ancestor(id, 1)));
      EXPECT_EQ(l.at(id), upper.at(t.ancestor(id, 1)));
    }
  }
}

}  // namespace
}  // namespace trajint
