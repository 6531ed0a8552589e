#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "trajint/error.hpp"
#include "trajint/scalar.hpp"

namespace trajint {

using NodeId = std::size_t;

/// Child indices from the root. A path of length j names the node (S, j), i.e.
/// the conditional space of all trajectories sharing that prefix.
struct NodePath {
  std::vector<std::size_t> indices;

  NodePath() = default;
  NodePath(std::initializer_list<std::size_t> il) : indices(il) {}
  explicit NodePath(std::vector<std::size_t> v) : indices(std::move(v)) {}

  static NodePath root() { return {}; }

  std::size_t depth() const { return indices.size(); }
  bool is_prefix_of(const NodePath& other) const;
  NodePath prefix(std::size_t length) const;
  NodePath child(std::size_t index) const;

  /// "root" or dot-separated indices, e.g. "0.1.1".
  std::string to_string() const;
  /// Inverse of to_string; also accepts "" and "[0,1]"-style lists.
  static NodePath parse(std::string_view text);

  friend auto operator<=>(const NodePath&, const NodePath&) = default;
  friend bool operator==(const NodePath&, const NodePath&) = default;
};

/// Nested construction input for a TrajectoryTree.
template <class T>
struct TreeSpec {
  T value{};
  std::vector<TreeSpec> children;
};

/// Finite trajectory set truncated at a uniform horizon N. Leaves are the
/// trajectories; every leaf sits at depth exactly N. Node ids follow DFS
/// preorder, so the leaves under any node form a contiguous index range.
template <class T>
class TrajectoryTree {
 public:
  struct Node {
    T value;
    std::size_t depth = 0;
    NodeId parent = 0;
    std::size_t child_index = 0;
    std::vector<NodeId> children;
    std::size_t leaf_begin = 0;  // [leaf_begin, leaf_end) into leaves()
    std::size_t leaf_end = 0;
  };

  /// Validates: root value equals s0, every internal node has a child, every
  /// leaf is at depth `horizon`.
  static TrajectoryTree build(const T& s0, std::size_t horizon, const TreeSpec<T>& spec);

  std::size_t horizon() const { return horizon_; }
  std::size_t size() const { return nodes_.size(); }
  const T& s0() const { return nodes_.front().value; }

  static constexpr NodeId root() { return 0; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const T& value(NodeId id) const { return nodes_.at(id).value; }
  std::size_t depth(NodeId id) const { return nodes_.at(id).depth; }
  bool is_leaf(NodeId id) const { return nodes_.at(id).children.empty(); }
  std::span<const NodeId> children(NodeId id) const { return nodes_.at(id).children; }

  /// Δ at the parent: value(child) - value(parent).
  T increment(NodeId child) const;

  NodeId find(const NodePath& path) const;
  NodePath path(NodeId id) const;
  /// Ancestor of `id` at depth d (d <= depth(id)).
  NodeId ancestor(NodeId id, std::size_t d) const;
  bool is_descendant(NodeId id, NodeId ancestor_id) const;

  std::span<const NodeId> leaves() const { return leaves_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  /// Position of a leaf node in leaves().
  std::size_t leaf_position(NodeId leaf) const;
  std::span<const NodeId> leaves_under(NodeId id) const;

  std::vector<NodeId> nodes_at_depth(std::size_t d) const;
  /// S_0..S_N along the path to `leaf`.
  std::vector<T> price_path(NodeId leaf) const;

  TreeSpec<T> to_spec() const;

 private:
  std::size_t horizon_ = 0;
  std::vector<Node> nodes_;
  std::vector<NodeId> leaves_;
  std::vector<std::size_t> leaf_pos_;  // node id -> leaf position, or npos
};

/// Leaves extending `node` (the conditional space S_(S,j)), as paths.
template <class T>
std::vector<NodePath> conditional_leaves(const TrajectoryTree<T>& tree, const NodePath& node);

}  // namespace trajint
