#include "trajint/martingale.hpp"

namespace trajint {

std::string to_string(ProcessMode m) {
  switch (m) {
    case ProcessMode::upper:
      return "upper";
    case ProcessMode::lower:
      return "lower";
    case ProcessMode::integral:
      return "integral";
  }
  return "?";
}

ProcessMode parse_process_mode(std::string_view text) {
  if (text == "upper") return ProcessMode::upper;
  if (text == "lower") return ProcessMode::lower;
  if (text == "integral") return ProcessMode::integral;
  throw InputError("unknown mode '" + std::string(text) + "' (expected upper|lower|integral)");
}

std::string to_string(ProcessClass c) {
  switch (c) {
    case ProcessClass::martingale:
      return "martingale";
    case ProcessClass::submartingale:
      return "submartingale";
    case ProcessClass::supermartingale:
      return "supermartingale";
    case ProcessClass::none:
      return "none";
  }
  return "?";
}

template <class T>
PriceProcess<T> price_process(const TrajectoryTree<T>& tree, const LeafFunction<T>& f, ProcessMode mode,
                              const ConstraintSet<T>& constraint) {
  PriceProcess<T> p;
  p.mode = mode;
  switch (mode) {
    case ProcessMode::upper:
      p.values = price_all(tree, f, PriceMode::upper, constraint).values;
      break;
    case ProcessMode::lower:
      p.values = price_all(tree, f, PriceMode::lower, constraint).values;
      break;
    case ProcessMode::integral: {
      const auto upper = price_all(tree, f, PriceMode::upper, constraint);
      const auto lower = price_all(tree, f, PriceMode::lower, constraint);
      const auto nulls = null_nodes(tree, constraint);
      for (NodeId id = 0; id < tree.size(); ++id) {
        if (!nulls[id] && !is_zero(upper.at(id) - lower.at(id))) {
          throw Error("payoff is not conditionally integrable at node " + tree.path(id).to_string() + " (upper " +
                      upper.at(id).to_string() + ", lower " + lower.at(id).to_string() + ")");
        }
      }
      p.values = upper.values;
      break;
    }
  }
  return p;
}

template <class T>
TowerReport<T> verify_tower(const TrajectoryTree<T>& tree, const LeafFunction<T>& f, std::size_t j, std::size_t k,
                            const ConstraintSet<T>& constraint) {
  if (j > k || k > tree.horizon()) throw Error("tower check needs 0 <= j <= k <= N");
  const auto upper = price_all(tree, f, PriceMode::upper, constraint);
  const auto lower = price_all(tree, f, PriceMode::lower, constraint);
  const LeafFunction<T> upper_k = lift_from_depth(tree, upper.values, k);
  const LeafFunction<T> lower_k = lift_from_depth(tree, lower.values, k);
  const auto uu = price_all(tree, upper_k, PriceMode::upper, constraint);
  const auto lu = price_all(tree, upper_k, PriceMode::lower, constraint);
  const auto ul = price_all(tree, lower_k, PriceMode::upper, constraint);
  const auto ll = price_all(tree, lower_k, PriceMode::lower, constraint);

  TowerReport<T> r;
  r.j = j;
  r.k = k;
  r.integrable = check_integrable(tree, f, j, constraint).integrable;
  const auto nulls = r.integrable ? null_nodes(tree, constraint) : std::vector<bool>(tree.size(), false);

  for (NodeId id : tree.nodes_at_depth(j)) {
    TowerNode<T> n;
    n.node = tree.path(id);
    n.lower = lower.at(id);
    n.lower_lower = ll.at(id);
    n.lower_upper = lu.at(id);
    n.upper_lower = ul.at(id);
    n.upper_upper = uu.at(id);
    n.upper = upper.at(id);
    const bool chain1 = approx_le(n.lower, n.lower_lower) && approx_le(n.lower_lower, n.lower_upper) &&
                        approx_le(n.lower_upper, n.upper_upper) && approx_le(n.upper_upper, n.upper);
    const bool chain2 = approx_le(n.lower_lower, n.upper_lower) && approx_le(n.upper_lower, n.upper_upper);
    n.chain_holds = chain1 && chain2;
    n.strict_somewhere = !approx_eq(n.lower, n.upper);
    if (r.integrable && !nulls[id]) {
      // ∫_k f lifted is upper_k off the null set; integrate it again at depth j.
      n.tower_equality = approx_eq(n.upper_upper, n.upper) && approx_eq(n.lower_upper, n.upper);
      r.equality_holds = r.equality_holds && *n.tower_equality;
    }
    r.chain_holds = r.chain_holds && n.chain_holds;
    r.nodes.push_back(std::move(n));
  }
  return r;
}

template <class T>
ProcessClassification classify_process(const TrajectoryTree<T>& tree, const PriceProcess<T>& p,
                                       const ConstraintSet<T>& constraint) {
  if (p.values.size() != tree.size()) throw Error("process does not match the tree");
  const auto nulls = null_nodes(tree, constraint);
  ProcessClassification c;
  std::vector<HedgePoint<T>> up;
  std::vector<HedgePoint<T>> down;
  for (NodeId id = 0; id < tree.size(); ++id) {
    if (tree.is_leaf(id) || nulls[id]) continue;
    up.clear();
    down.clear();
    for (NodeId ch : tree.children(id)) {
      up.push_back({tree.increment(ch), p.values[ch]});
      down.push_back({tree.increment(ch), -p.values[ch]});
    }
    const Interval<T>& iv = constraint.at(tree.depth(id));
    const ExtReal<T> next_upper = node_minimax<T>(up, iv).value;
    const ExtReal<T> next_lower = -node_minimax<T>(down, iv).value;
    const ExtReal<T>& here = p.values[id];
    if (!approx_le(next_upper, here)) {
      c.supermartingale = false;
      c.super_violations.push_back(tree.path(id));
    }
    if (!approx_le(here, next_lower)) {
      c.submartingale = false;
      c.sub_violations.push_back(tree.path(id));
    }
    if (!(approx_eq(next_upper, here) && approx_eq(next_lower, here))) c.martingale = false;
  }
  return c;
}

#define TRAJINT_INSTANTIATE(T)                                                                                  \
  template PriceProcess<T> price_process(const TrajectoryTree<T>&, const LeafFunction<T>&, ProcessMode,         \
                                         const ConstraintSet<T>&);                                              \
  template TowerReport<T> verify_tower(const TrajectoryTree<T>&, const LeafFunction<T>&, std::size_t,           \
                                       std::size_t, const ConstraintSet<T>&);                                   \
  template ProcessClassification classify_process(const TrajectoryTree<T>&, const PriceProcess<T>&,             \
                                                  const ConstraintSet<T>&);

TRAJINT_INSTANTIATE(double)
TRAJINT_INSTANTIATE(Rational)

#undef TRAJINT_INSTANTIATE

}  // namespace trajint
