#include "trajint/tree.hpp"

#include <functional>
#include <limits>
#include <sstream>

namespace trajint {

bool NodePath::is_prefix_of(const NodePath& other) const {
  if (indices.size() > other.indices.size()) return false;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] != other.indices[i]) return false;
  }
  return true;
}

NodePath NodePath::prefix(std::size_t length) const {
  if (length > indices.size()) throw Error("prefix length exceeds path depth");
  return NodePath(std::vector<std::size_t>(indices.begin(), indices.begin() + static_cast<std::ptrdiff_t>(length)));
}

NodePath NodePath::child(std::size_t index) const {
  NodePath p = *this;
  p.indices.push_back(index);
  return p;
}

std::string NodePath::to_string() const {
  if (indices.empty()) return "root";
  std::ostringstream os;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) os << '.';
    os << indices[i];
  }
  return os.str();
}

NodePath NodePath::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != '[' && c != ']' && c != ' ') s.push_back(c == ',' ? '.' : c);
  }
  if (s.empty() || s == "root") return {};
  NodePath p;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto dot = s.find('.', start);
    const std::string part = s.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("invalid node path '" + std::string(text) + "'");
    }
    p.indices.push_back(static_cast<std::size_t>(std::stoull(part)));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return p;
}

template <class T>
TrajectoryTree<T> TrajectoryTree<T>::build(const T& s0, std::size_t horizon, const TreeSpec<T>& spec) {
  if (!(spec.value == s0)) {
    throw InputError("root value " + format_scalar(spec.value) + " differs from s0 " + format_scalar(s0));
  }
  TrajectoryTree tree;
  tree.horizon_ = horizon;

  std::function<NodeId(const TreeSpec<T>&, std::size_t, NodeId, std::size_t, const std::string&)> add;
  add = [&](const TreeSpec<T>& s, std::size_t depth, NodeId parent, std::size_t child_index,
            const std::string& where) -> NodeId {
    const NodeId id = tree.nodes_.size();
    tree.nodes_.push_back(Node{s.value, depth, parent, child_index, {}, tree.leaves_.size(), 0});
    if (s.children.empty()) {
      if (depth != horizon) {
        throw InputError("leaf at " + where + " has depth " + std::to_string(depth) + " but horizon is " +
                         std::to_string(horizon));
      }
      tree.leaves_.push_back(id);
    } else {
      if (depth >= horizon) {
        throw InputError("node at " + where + " has children beyond horizon " + std::to_string(horizon));
      }
      for (std::size_t c = 0; c < s.children.size(); ++c) {
        const std::string child_where = where == "root" ? std::to_string(c) : where + "." + std::to_string(c);
        const NodeId cid = add(s.children[c], depth + 1, id, c, child_where);
        tree.nodes_[id].children.push_back(cid);
      }
    }
    tree.nodes_[id].leaf_end = tree.leaves_.size();
    return id;
  };
  add(spec, 0, 0, 0, "root");

  tree.leaf_pos_.assign(tree.nodes_.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < tree.leaves_.size(); ++i) tree.leaf_pos_[tree.leaves_[i]] = i;
  return tree;
}

template <class T>
T TrajectoryTree<T>::increment(NodeId child) const {
  if (child == root()) throw Error("root has no increment");
  const Node& n = nodes_.at(child);
  return T(n.value - nodes_[n.parent].value);
}

template <class T>
NodeId TrajectoryTree<T>::find(const NodePath& path) const {
  NodeId id = root();
  for (std::size_t step = 0; step < path.indices.size(); ++step) {
    const auto& kids = nodes_[id].children;
    if (path.indices[step] >= kids.size()) {
      throw Error("invalid node path " + path.to_string() + ": no child " + std::to_string(path.indices[step]) +
                  " at depth " + std::to_string(step));
    }
    id = kids[path.indices[step]];
  }
  return id;
}

template <class T>
NodePath TrajectoryTree<T>::path(NodeId id) const {
  std::vector<std::size_t> rev;
  while (id != root()) {
    rev.push_back(nodes_.at(id).child_index);
    id = nodes_[id].parent;
  }
  return NodePath(std::vector<std::size_t>(rev.rbegin(), rev.rend()));
}

template <class T>
NodeId TrajectoryTree<T>::ancestor(NodeId id, std::size_t d) const {
  if (d > depth(id)) throw Error("ancestor depth exceeds node depth");
  while (nodes_[id].depth > d) id = nodes_[id].parent;
  return id;
}

template <class T>
bool TrajectoryTree<T>::is_descendant(NodeId id, NodeId ancestor_id) const {
  return depth(id) >= depth(ancestor_id) && ancestor(id, depth(ancestor_id)) == ancestor_id;
}

template <class T>
std::size_t TrajectoryTree<T>::leaf_position(NodeId leaf) const {
  const std::size_t pos = leaf_pos_.at(leaf);
  if (pos == std::numeric_limits<std::size_t>::max()) throw Error("node " + path(leaf).to_string() + " is not a leaf");
  return pos;
}

template <class T>
std::span<const NodeId> TrajectoryTree<T>::leaves_under(NodeId id) const {
  const Node& n = nodes_.at(id);
  return std::span<const NodeId>(leaves_).subspan(n.leaf_begin, n.leaf_end - n.leaf_begin);
}

template <class T>
std::vector<NodeId> TrajectoryTree<T>::nodes_at_depth(std::size_t d) const {
  std::vector<NodeId> out;
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (nodes_[id].depth == d) out.push_back(id);
  }
  return out;
}

template <class T>
std::vector<T> TrajectoryTree<T>::price_path(NodeId leaf) const {
  std::vector<T> rev;
  NodeId id = leaf;
  for (;;) {
    rev.push_back(nodes_.at(id).value);
    if (id == root()) break;
    id = nodes_[id].parent;
  }
  return std::vector<T>(rev.rbegin(), rev.rend());
}

template <class T>
TreeSpec<T> TrajectoryTree<T>::to_spec() const {
  std::function<TreeSpec<T>(NodeId)> rec = [&](NodeId id) {
    TreeSpec<T> s{nodes_[id].value, {}};
    for (NodeId c : nodes_[id].children) s.children.push_back(rec(c));
    return s;
  };
  return rec(root());
}

template <class T>
std::vector<NodePath> conditional_leaves(const TrajectoryTree<T>& tree, const NodePath& node) {
  std::vector<NodePath> out;
  for (NodeId leaf : tree.leaves_under(tree.find(node))) out.push_back(tree.path(leaf));
  return out;
}

template class TrajectoryTree<double>;
template class TrajectoryTree<Rational>;
template std::vector<NodePath> conditional_leaves(const TrajectoryTree<double>&, const NodePath&);
template std::vector<NodePath> conditional_leaves(const TrajectoryTree<Rational>&, const NodePath&);

}  // namespace trajint
