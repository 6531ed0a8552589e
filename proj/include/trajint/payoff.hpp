#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "trajint/ext_real.hpp"
#include "trajint/tree.hpp"

namespace trajint {

/// Extended-real values of a function on the leaves, aligned with tree.leaves().
template <class T>
using LeafFunction = std::vector<ExtReal<T>>;

template <class T>
class Payoff {
 public:
  struct Constant {
    T c;
  };
  struct TerminalValue {};
  struct Call {
    T strike;
  };
  struct Put {
    T strike;
  };
  /// |S_{step+1} - S_step|.
  struct AbsIncrement {
    std::size_t step = 0;
  };
  struct Indicator {
    std::set<NodePath> leaves;
  };
  struct LeafTable {
    std::map<NodePath, ExtReal<T>> values;
  };

  using Kind = std::variant<Constant, TerminalValue, Call, Put, AbsIncrement, Indicator, LeafTable>;

  Payoff(Kind k) : kind_(std::move(k)) {}  // NOLINT(google-explicit-constructor)

  static Payoff constant(T c) { return Payoff(Constant{std::move(c)}); }
  static Payoff terminal() { return Payoff(TerminalValue{}); }
  static Payoff call(T k) { return Payoff(Call{std::move(k)}); }
  static Payoff put(T k) { return Payoff(Put{std::move(k)}); }
  static Payoff abs_increment(std::size_t i) { return Payoff(AbsIncrement{i}); }
  static Payoff indicator(std::set<NodePath> leaves) { return Payoff(Indicator{std::move(leaves)}); }
  static Payoff table(std::map<NodePath, ExtReal<T>> values) { return Payoff(LeafTable{std::move(values)}); }

  const Kind& kind() const { return kind_; }

  /// Value on one trajectory. Throws Error when `leaf` is not at depth N or a
  /// leaf table has no entry for it.
  ExtReal<T> evaluate(const TrajectoryTree<T>& tree, const NodePath& leaf) const;
  ExtReal<T> evaluate(const TrajectoryTree<T>& tree, NodeId leaf) const;

  LeafFunction<T> tabulate(const TrajectoryTree<T>& tree) const;

  std::string describe() const;

 private:
  Kind kind_;
};

template <class T>
ExtReal<T> evaluate_payoff(const Payoff<T>& f, const TrajectoryTree<T>& tree, const NodePath& leaf) {
  return f.evaluate(tree, leaf);
}

// Pointwise helpers on tabulated functions.

template <class T>
LeafFunction<T> map_leaves(const LeafFunction<T>& f, const std::function<ExtReal<T>(const ExtReal<T>&)>& op) {
  LeafFunction<T> out;
  out.reserve(f.size());
  for (const auto& v : f) out.push_back(op(v));
  return out;
}

template <class T>
LeafFunction<T> negate(const LeafFunction<T>& f) {
  return map_leaves<T>(f, [](const ExtReal<T>& v) { return -v; });
}

template <class T>
LeafFunction<T> abs(const LeafFunction<T>& f) {
  return map_leaves<T>(f, [](const ExtReal<T>& v) { return ext_abs(v); });
}

template <class T>
LeafFunction<T> positive_part(const LeafFunction<T>& f) {
  return map_leaves<T>(f, [](const ExtReal<T>& v) { return positive_part(v); });
}

template <class T>
LeafFunction<T> negative_part(const LeafFunction<T>& f) {
  return map_leaves<T>(f, [](const ExtReal<T>& v) { return negative_part(v); });
}

template <class T>
LeafFunction<T> scale(const T& c, const LeafFunction<T>& f) {
  return map_leaves<T>(f, [&c](const ExtReal<T>& v) { return ext_scale(c, v); });
}

template <class T>
LeafFunction<T> add(const LeafFunction<T>& f, const LeafFunction<T>& g) {
  if (f.size() != g.size()) throw Error("leaf functions have different supports");
  LeafFunction<T> out;
  out.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(f[i] + g[i]);
  return out;
}

template <class T>
LeafFunction<T> constant_function(const TrajectoryTree<T>& tree, const ExtReal<T>& c) {
  return LeafFunction<T>(tree.leaf_count(), c);
}

/// 1 on the listed leaf positions, 0 elsewhere.
template <class T>
LeafFunction<T> indicator_function(const TrajectoryTree<T>& tree, const std::set<std::size_t>& leaf_positions) {
  LeafFunction<T> out(tree.leaf_count(), ExtReal<T>(T(0)));
  for (std::size_t p : leaf_positions) out.at(p) = ExtReal<T>(T(1));
  return out;
}

/// Lifts node values at depth d to a leaf function (each leaf takes the value
/// of its depth-d ancestor). `node_values` is indexed by NodeId.
template <class T>
LeafFunction<T> lift_from_depth(const TrajectoryTree<T>& tree, const std::vector<ExtReal<T>>& node_values,
                                std::size_t d) {
  LeafFunction<T> out;
  out.reserve(tree.leaf_count());
  for (NodeId leaf : tree.leaves()) out.push_back(node_values.at(tree.ancestor(leaf, d)));
  return out;
}

/// f <= g on every leaf (exact order; callers wanting the float band use approx_le).
template <class T>
bool pointwise_le(const LeafFunction<T>& f, const LeafFunction<T>& g) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!approx_le(f[i], g[i])) return false;
  }
  return true;
}

}  // namespace trajint
