#pragma once

#include <map>
#include <string>

#include "trajint/ext_real.hpp"
#include "trajint/tree.hpp"

namespace trajint {

enum class NodeKind { up_down, flat, arbitrage_type1, arbitrage_type2 };

std::string to_string(NodeKind k);

/// One-step shape of an interior node. sup_inc/inf_inc are the largest and
/// smallest child increments.
template <class T>
struct NodeClass {
  NodeKind kind = NodeKind::flat;
  bool zero_neutral = true;
  ExtReal<T> sup_inc;
  ExtReal<T> inf_inc;

  bool arbitrage_free() const { return kind == NodeKind::up_down || kind == NodeKind::flat; }
};

template <class T>
NodeClass<T> classify_node(const TrajectoryTree<T>& tree, NodeId node);

template <class T>
NodeClass<T> classify_node(const TrajectoryTree<T>& tree, const NodePath& node) {
  return classify_node(tree, tree.find(node));
}

template <class T>
struct TreeScan {
  std::map<NodePath, NodeClass<T>> nodes;
  bool locally_0_neutral = true;
  bool locally_arbitrage_free = true;
  bool has_type_II = false;
};

template <class T>
TreeScan<T> scan_tree(const TrajectoryTree<T>& tree);

/// True when some interior node in the subtree of `node` (inclusive) is type II.
template <class T>
bool has_type_II_below(const TrajectoryTree<T>& tree, NodeId node);

}  // namespace trajint
