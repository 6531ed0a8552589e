#include "trajint/payoff.hpp"

#include <sstream>

namespace trajint {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

template <class T>
ExtReal<T> Payoff<T>::evaluate(const TrajectoryTree<T>& tree, NodeId leaf) const {
  if (!tree.is_leaf(leaf) || tree.depth(leaf) != tree.horizon()) {
    throw Error("payoff evaluated at non-leaf " + tree.path(leaf).to_string());
  }
  const T& last = tree.value(leaf);
  return std::visit(
      Overloaded{
          [&](const Constant& k) { return ExtReal<T>(k.c); },
          [&](const TerminalValue&) { return ExtReal<T>(last); },
          [&](const Call& k) {
            const T d = last - k.strike;
            return ExtReal<T>(sign(d) > 0 ? d : T(0));
          },
          [&](const Put& k) {
            const T d = k.strike - last;
            return ExtReal<T>(sign(d) > 0 ? d : T(0));
          },
          [&](const AbsIncrement& k) {
            if (k.step >= tree.horizon()) {
              throw Error("abs_increment step " + std::to_string(k.step) + " beyond horizon");
            }
            const NodeId next = tree.ancestor(leaf, k.step + 1);
            return ExtReal<T>(ScalarTraits<T>::abs(tree.increment(next)));
          },
          [&](const Indicator& k) {
            return ExtReal<T>(T(k.leaves.count(tree.path(leaf)) ? 1 : 0));
          },
          [&](const LeafTable& k) {
            const NodePath p = tree.path(leaf);
            const auto it = k.values.find(p);
            if (it == k.values.end()) throw Error("leaf table has no entry for leaf " + p.to_string());
            return it->second;
          },
      },
      kind_);
}

template <class T>
ExtReal<T> Payoff<T>::evaluate(const TrajectoryTree<T>& tree, const NodePath& leaf) const {
  return evaluate(tree, tree.find(leaf));
}

template <class T>
LeafFunction<T> Payoff<T>::tabulate(const TrajectoryTree<T>& tree) const {
  LeafFunction<T> out;
  out.reserve(tree.leaf_count());
  for (NodeId leaf : tree.leaves()) out.push_back(evaluate(tree, leaf));
  return out;
}

template <class T>
std::string Payoff<T>::describe() const {
  return std::visit(Overloaded{
                        [](const Constant& k) { return "const:" + format_scalar(k.c); },
                        [](const TerminalValue&) { return std::string("terminal"); },
                        [](const Call& k) { return "call:" + format_scalar(k.strike); },
                        [](const Put& k) { return "put:" + format_scalar(k.strike); },
                        [](const AbsIncrement& k) { return "absinc:" + std::to_string(k.step); },
                        [](const Indicator& k) { return "indicator(" + std::to_string(k.leaves.size()) + " leaves)"; },
                        [](const LeafTable& k) { return "table(" + std::to_string(k.values.size()) + " leaves)"; },
                    },
                    kind_);
}

template class Payoff<double>;
template class Payoff<Rational>;

}  // namespace trajint
