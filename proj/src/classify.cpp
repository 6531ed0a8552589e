#include "trajint/classify.hpp"

namespace trajint {

std::string to_string(NodeKind k) {
  switch (k) {
    case NodeKind::up_down:
      return "UpDown";
    case NodeKind::flat:
      return "Flat";
    case NodeKind::arbitrage_type1:
      return "ArbitrageI";
    case NodeKind::arbitrage_type2:
      return "ArbitrageII";
  }
  return "?";
}

template <class T>
NodeClass<T> classify_node(const TrajectoryTree<T>& tree, NodeId node) {
  if (tree.is_leaf(node)) throw Error("cannot classify leaf node " + tree.path(node).to_string());
  bool first = true;
  T hi(0);
  T lo(0);
  bool has_zero = false;
  for (NodeId c : tree.children(node)) {
    const T d = tree.increment(c);
    if (first || d > hi) hi = d;
    if (first || d < lo) lo = d;
    first = false;
    has_zero = has_zero || is_zero(d);
  }
  NodeClass<T> out;
  out.sup_inc = ExtReal<T>(hi);
  out.inf_inc = ExtReal<T>(lo);
  const int s_hi = sign(hi);
  const int s_lo = sign(lo);
  out.zero_neutral = s_hi >= 0 && s_lo <= 0;
  if (s_hi > 0 && s_lo < 0) {
    out.kind = NodeKind::up_down;
  } else if (s_hi == 0 && s_lo == 0) {
    out.kind = NodeKind::flat;
  } else {
    out.kind = has_zero ? NodeKind::arbitrage_type1 : NodeKind::arbitrage_type2;
  }
  return out;
}

template <class T>
TreeScan<T> scan_tree(const TrajectoryTree<T>& tree) {
  TreeScan<T> scan;
  for (NodeId id = 0; id < tree.size(); ++id) {
    if (tree.is_leaf(id)) continue;
    NodeClass<T> c = classify_node(tree, id);
    scan.locally_0_neutral = scan.locally_0_neutral && c.zero_neutral;
    scan.locally_arbitrage_free = scan.locally_arbitrage_free && c.arbitrage_free();
    scan.has_type_II = scan.has_type_II || c.kind == NodeKind::arbitrage_type2;
    scan.nodes.emplace(tree.path(id), std::move(c));
  }
  return scan;
}

template <class T>
bool has_type_II_below(const TrajectoryTree<T>& tree, NodeId node) {
  // DFS preorder: the subtree of `node` is the id range ending before the next
  // node whose depth is <= depth(node).
  const std::size_t d = tree.depth(node);
  for (NodeId id = node; id < tree.size(); ++id) {
    if (id != node && tree.depth(id) <= d) break;
    if (!tree.is_leaf(id) && classify_node(tree, id).kind == NodeKind::arbitrage_type2) return true;
  }
  return false;
}

template NodeClass<double> classify_node(const TrajectoryTree<double>&, NodeId);
template NodeClass<Rational> classify_node(const TrajectoryTree<Rational>&, NodeId);
template TreeScan<double> scan_tree(const TrajectoryTree<double>&);
template TreeScan<Rational> scan_tree(const TrajectoryTree<Rational>&);
template bool has_type_II_below(const TrajectoryTree<double>&, NodeId);
template bool has_type_II_below(const TrajectoryTree<Rational>&, NodeId);

}  // namespace trajint
