#include "trajint/elementary.hpp"

#include "trajint/classify.hpp"

namespace trajint {

template <class T>
bool Interval<T>::is_cone() const {
  const bool lo_ok = lo.is_neg_inf() || lo == ExtReal<T>(T(0));
  const bool hi_ok = hi.is_pos_inf() || hi == ExtReal<T>(T(0));
  return lo_ok && hi_ok;
}

template <class T>
T Interval<T>::clamp(const T& h) const {
  if (lo.is_finite() && h < lo.value()) return lo.value();
  if (hi.is_finite() && hi.value() < h) return hi.value();
  return h;
}

template <class T>
std::string Interval<T>::to_string() const {
  return "[" + lo.to_string() + ", " + hi.to_string() + "]";
}

template <class T>
const Interval<T>& ConstraintSet<T>::at(std::size_t depth) const {
  const auto it = per_depth_.find(depth);
  return it == per_depth_.end() ? global_ : it->second;
}

template <class T>
bool ConstraintSet<T>::is_unrestricted() const {
  auto open = [](const Interval<T>& iv) { return iv.lo.is_neg_inf() && iv.hi.is_pos_inf(); };
  if (!open(global_)) return false;
  for (const auto& [d, iv] : per_depth_) {
    if (!open(iv)) return false;
  }
  return true;
}

template <class T>
AxiomReport ConstraintSet<T>::check_axioms() const {
  AxiomReport r;
  auto visit = [&r](const Interval<T>& iv) {
    r.positive_cone = r.positive_cone && iv.is_cone();
    r.contains_zero = r.contains_zero && iv.contains(T(0));
    r.contains_unit = r.contains_unit && iv.contains(T(1)) && iv.contains(T(-1));
  };
  visit(global_);
  for (const auto& [d, iv] : per_depth_) visit(iv);
  // Restriction to a subnode keeps the same per-depth intervals; truncation
  // writes zeros, which is admissible exactly when 0 is.
  r.truncation_closed = r.contains_zero;
  return r;
}

template <class T>
bool ConstraintSet<T>::admits(const ElementaryFunction<T>& p, const TrajectoryTree<T>& tree) const {
  const NodeId cond = tree.find(p.node);
  for (NodeId id = 0; id < tree.size(); ++id) {
    const std::size_t d = tree.depth(id);
    if (tree.is_leaf(id) || d < p.start || d >= p.maturity || !tree.is_descendant(id, cond)) continue;
    if (!at(d).contains(p.holding(tree.path(id)))) return false;
  }
  return true;
}

template <class T>
bool ElementaryFunction<T>::is_zero_function() const {
  if (!is_zero(V)) return false;
  for (const auto& [path, h] : H) {
    if (!is_zero(h)) return false;
  }
  return true;
}

template <class T>
void validate_elementary(const TrajectoryTree<T>& tree, const ElementaryFunction<T>& p) {
  const NodeId cond = tree.find(p.node);
  if (p.node.depth() != p.start && !p.node.indices.empty()) {
    throw Error("conditioning node " + p.node.to_string() + " is not at start depth " + std::to_string(p.start));
  }
  if (p.maturity > tree.horizon()) {
    throw Error("maturity " + std::to_string(p.maturity) + " exceeds horizon " + std::to_string(tree.horizon()));
  }
  if (p.maturity < p.start) throw Error("maturity precedes start");
  for (const auto& [path, h] : p.H) {
    const NodeId id = tree.find(path);
    if (!tree.is_descendant(id, cond)) {
      throw Error("holding at " + path.to_string() + " lies outside conditioning node " + p.node.to_string());
    }
    if (path.depth() < p.start || path.depth() >= p.maturity) {
      throw Error("holding at " + path.to_string() + " outside trading window [" + std::to_string(p.start) + ", " +
                  std::to_string(p.maturity) + ")");
    }
  }
}

template <class T>
T partial_sum(const ElementaryFunction<T>& p, const TrajectoryTree<T>& tree, NodeId leaf, std::size_t k) {
  const NodeId cond = tree.find(p.node);
  if (!tree.is_descendant(leaf, cond)) {
    throw Error("leaf " + tree.path(leaf).to_string() + " is outside conditioning node " + p.node.to_string());
  }
  T total = p.V;
  const std::size_t stop = std::min(k, p.maturity);
  for (std::size_t i = p.start; i < stop; ++i) {
    const NodeId at = tree.ancestor(leaf, i);
    const auto it = p.H.find(tree.path(at));
    if (it == p.H.end()) continue;
    total += it->second * tree.increment(tree.ancestor(leaf, i + 1));
  }
  return total;
}

template <class T>
T evaluate_elementary(const ElementaryFunction<T>& p, const TrajectoryTree<T>& tree, NodeId leaf) {
  return partial_sum(p, tree, leaf, p.maturity);
}

template <class T>
T evaluate_elementary(const ElementaryFunction<T>& p, const TrajectoryTree<T>& tree, const NodePath& leaf) {
  return evaluate_elementary(p, tree, tree.find(leaf));
}

template <class T>
LeafFunction<T> tabulate_elementary(const ElementaryFunction<T>& p, const TrajectoryTree<T>& tree) {
  const NodeId cond = tree.find(p.node);
  LeafFunction<T> out;
  out.reserve(tree.leaf_count());
  for (NodeId leaf : tree.leaves()) {
    out.push_back(tree.is_descendant(leaf, cond) ? ExtReal<T>(evaluate_elementary(p, tree, leaf))
                                                 : ExtReal<T>(T(0)));
  }
  return out;
}

template <class T>
ElementaryIntegral<T> elementary_integral(const TrajectoryTree<T>& tree, const ElementaryFunction<T>& p,
                                          const NodePath& node) {
  const NodeId id = tree.find(node);
  if (!p.node.is_prefix_of(node)) {
    throw Error("elementary function conditioned at " + p.node.to_string() + " is not defined at " +
                node.to_string());
  }
  ElementaryIntegral<T> out{p.V, std::nullopt};
  if (has_type_II_below(tree, id)) {
    out.warning = "type II arbitrage node below " + node.to_string() + ": I_j may not be order-consistent";
  }
  return out;
}

template <class T>
ElementaryFunction<T> linear_combination(const T& a, const ElementaryFunction<T>& p, const T& b,
                                         const ElementaryFunction<T>& q) {
  if (!(p.node == q.node) || p.start != q.start) {
    throw Error("linear combination needs a shared conditioning node");
  }
  ElementaryFunction<T> out;
  out.start = p.start;
  out.node = p.node;
  out.V = a * p.V + b * q.V;
  out.maturity = std::max(p.maturity, q.maturity);
  for (const auto& [path, h] : p.H) out.H[path] += a * h;
  for (const auto& [path, h] : q.H) out.H[path] += b * h;
  return out;
}

template <class T>
ElementaryFunction<T> truncate(const ElementaryFunction<T>& p, std::size_t k) {
  ElementaryFunction<T> out = p;
  out.maturity = std::max(p.start, std::min(p.maturity, k));
  std::erase_if(out.H, [k](const auto& entry) { return entry.first.depth() >= k; });
  return out;
}

template <class T>
WellposedReport check_wellposed(const TrajectoryTree<T>& tree, const ElementaryFunction<T>& p) {
  validate_elementary(tree, p);
  WellposedReport r;
  const auto leaves = tree.leaves_under(tree.find(p.node));
  r.nonnegative = true;
  for (NodeId leaf : leaves) {
    if (sign(evaluate_elementary(p, tree, leaf)) < 0) {
      r.nonnegative = false;
      break;
    }
  }
  if (!r.nonnegative) {
    r.note = "function takes negative values; hypothesis not met, check is vacuous";
    return r;
  }
  for (std::size_t k = p.start; k <= p.maturity; ++k) {
    for (NodeId leaf : leaves) {
      if (sign(partial_sum(p, tree, leaf, k)) < 0) {
        r.pass = false;
        r.violated_step = k;
        r.violated_leaf = tree.path(leaf);
        r.note = "nonnegative function with negative partial sum at step " + std::to_string(k) + " on leaf " +
                 tree.path(leaf).to_string() + " (no 0-neutrality)";
        return r;
      }
    }
  }
  r.note = "all partial sums and V nonnegative";
  return r;
}

template <class T>
AbsRepresentation<T> represent_abs(const TrajectoryTree<T>& tree, const ElementaryFunction<T>& p) {
  validate_elementary(tree, p);
  if (!p.node.indices.empty()) throw Error("represent_abs expects a root-conditioned function");
  AbsRepresentation<T> out;

  // Target continuation value at every node of depth <= maturity.
  std::vector<T> target(tree.size(), T(0));
  for (NodeId id : tree.nodes_at_depth(p.maturity)) {
    const NodeId any_leaf = tree.leaves_under(id).front();
    target[id] = ScalarTraits<T>::abs(evaluate_elementary(p, tree, any_leaf));
  }

  ElementaryFunction<T> rep;
  rep.start = 0;
  rep.maturity = p.maturity;
  for (std::size_t d = p.maturity; d-- > 0;) {
    for (NodeId id : tree.nodes_at_depth(d)) {
      const auto kids = tree.children(id);
      auto equation = [&](NodeId c) {
        return AffineEquation<T>{tree.path(c), tree.increment(c), target[c]};
      };
      const NodeId a = kids.front();
      const T da = tree.increment(a);
      std::optional<NodeId> b;
      for (NodeId c : kids) {
        if (!approx_eq(tree.increment(c), da)) {
          b = c;
          break;
        }
      }
      T h(0);
      T w = target[a];
      if (b) {
        h = (target[*b] - target[a]) / (tree.increment(*b) - da);
        w = target[a] - h * da;
      }
      for (NodeId k : kids) {
        const T dk = tree.increment(k);
        if (approx_eq(T(w + h * dk), target[k])) continue;
        out.failing_node = tree.path(id);
        if (approx_eq(dk, da)) {
          out.inconsistent = {equation(a), equation(k)};
        } else if (b && approx_eq(dk, tree.increment(*b))) {
          out.inconsistent = {equation(*b), equation(k)};
        } else {
          out.inconsistent = {equation(a), equation(*b), equation(k)};
        }
        return out;
      }
      target[id] = w;
      if (!is_zero(h)) rep.H[tree.path(id)] = h;
    }
  }
  rep.V = target[tree.root()];
  out.representation = std::move(rep);
  return out;
}

#define TRAJINT_INSTANTIATE(T)                                                                             \
  template struct Interval<T>;                                                                             \
  template class ConstraintSet<T>;                                                                         \
  template struct ElementaryFunction<T>;                                                                   \
  template void validate_elementary(const TrajectoryTree<T>&, const ElementaryFunction<T>&);               \
  template T partial_sum(const ElementaryFunction<T>&, const TrajectoryTree<T>&, NodeId, std::size_t);     \
  template T evaluate_elementary(const ElementaryFunction<T>&, const TrajectoryTree<T>&, NodeId);          \
  template T evaluate_elementary(const ElementaryFunction<T>&, const TrajectoryTree<T>&, const NodePath&);  \
  template LeafFunction<T> tabulate_elementary(const ElementaryFunction<T>&, const TrajectoryTree<T>&);    \
  template ElementaryIntegral<T> elementary_integral(const TrajectoryTree<T>&, const ElementaryFunction<T>&, \
                                                     const NodePath&);                                     \
  template ElementaryFunction<T> linear_combination(const T&, const ElementaryFunction<T>&, const T&,      \
                                                    const ElementaryFunction<T>&);                         \
  template ElementaryFunction<T> truncate(const ElementaryFunction<T>&, std::size_t);                      \
  template WellposedReport check_wellposed(const TrajectoryTree<T>&, const ElementaryFunction<T>&);        \
  template AbsRepresentation<T> represent_abs(const TrajectoryTree<T>&, const ElementaryFunction<T>&);

TRAJINT_INSTANTIATE(double)
TRAJINT_INSTANTIATE(Rational)

#undef TRAJINT_INSTANTIATE

}  // namespace trajint
