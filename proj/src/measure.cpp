#include "trajint/measure.hpp"

#include <set>

#include "trajint/classify.hpp"

namespace trajint {

template <class T>
NullReport<T> is_null_function(const TrajectoryTree<T>& tree, const LeafFunction<T>& g, const NodePath& node,
                               const ConstraintSet<T>& constraint) {
  NullReport<T> r;
  r.node = node;
  r.norm_value = conditional_norm(tree, g, node, constraint);
  r.is_null = is_zero(r.norm_value);
  if (r.is_null) {
    try {
      r.certificate = hedge_certificate(tree, g, node, constraint, T(0), PriceMode::norm);
    } catch (const Error&) {
      // Null only in the limit (e.g. an infinite value on a null leaf).
    }
  }
  return r;
}

template <class T>
NullReport<T> is_conditionally_null(const TrajectoryTree<T>& tree, const std::vector<NodePath>& leaf_set,
                                    const NodePath& node, const ConstraintSet<T>& constraint) {
  std::set<std::size_t> positions;
  for (const auto& p : leaf_set) positions.insert(tree.leaf_position(tree.find(p)));
  NullReport<T> r = is_null_function(tree, indicator_function(tree, positions), node, constraint);
  r.target = leaf_set;
  return r;
}

template <class T>
std::vector<bool> null_nodes(const TrajectoryTree<T>& tree, const ConstraintSet<T>& constraint) {
  std::vector<bool> out(tree.size(), false);
  if (constraint.is_unrestricted()) {
    // live: the indicator of the subtree has positive norm at the node itself.
    // A node is null when it is not live or its path enters through a type II
    // node or a moving child of a type I node.
    std::vector<NodeKind> kind(tree.size(), NodeKind::flat);
    std::vector<bool> live(tree.size(), true);
    for (NodeId id = tree.size(); id-- > 0;) {
      if (tree.is_leaf(id)) continue;
      kind[id] = classify_node(tree, id).kind;
      bool any = false;
      for (NodeId c : tree.children(id)) {
        const bool passes = kind[id] != NodeKind::arbitrage_type1 || is_zero(tree.increment(c));
        any = any || (live[c] && passes);
      }
      live[id] = any && kind[id] != NodeKind::arbitrage_type2;
    }
    for (NodeId id = 0; id < tree.size(); ++id) {
      out[id] = !live[id];
      if (id == tree.root()) continue;
      const NodeId up = tree.node(id).parent;
      out[id] = out[id] || out[up] || kind[up] == NodeKind::arbitrage_type2 ||
                (kind[up] == NodeKind::arbitrage_type1 && !is_zero(tree.increment(id)));
    }
    return out;
  }
  for (NodeId id = 0; id < tree.size(); ++id) {
    LeafFunction<T> ind(tree.leaf_count(), ExtReal<T>(T(0)));
    const auto& n = tree.node(id);
    for (std::size_t p = n.leaf_begin; p < n.leaf_end; ++p) ind[p] = ExtReal<T>(T(1));
    out[id] = is_zero(price_all(tree, ind, PriceMode::norm, constraint).at(tree.root()));
  }
  return out;
}

template <class T>
LReport<T> check_L_property(const TrajectoryTree<T>& tree, const ConstraintSet<T>& constraint) {
  LReport<T> r;
  const auto priced = price_all(tree, constant_function(tree, ExtReal<T>(T(0))), PriceMode::upper, constraint);
  for (NodeId id = 0; id < tree.size(); ++id) {
    const NodePath p = tree.path(id);
    const bool ok = is_zero(priced.at(id));
    r.upper_of_zero.emplace(p, priced.at(id));
    r.holds.emplace(p, ok);
    r.all = r.all && ok;
  }
  return r;
}

template <class T>
KReport<T> check_K_property(const TrajectoryTree<T>& tree, const ElementaryFunction<T>& f, const NodePath& node,
                            const ConstraintSet<T>& constraint) {
  validate_elementary(tree, f);
  const LeafFunction<T> values = tabulate_elementary(f, tree);
  KReport<T> r;
  r.norm_positive = conditional_norm(tree, positive_part(values), node, constraint);
  r.integral = elementary_integral(tree, f, node).value;
  r.norm_negative = conditional_norm(tree, negative_part(values), node, constraint);
  r.holds = approx_eq(r.norm_positive, ExtReal<T>(r.integral) + r.norm_negative);
  return r;
}

template <class T>
IntegrabilityReport<T> check_integrable(const TrajectoryTree<T>& tree, const LeafFunction<T>& f, std::size_t j,
                                        const ConstraintSet<T>& constraint) {
  if (j > tree.horizon()) throw Error("depth " + std::to_string(j) + " beyond horizon");
  const auto upper = price_all(tree, f, PriceMode::upper, constraint);
  const auto lower = price_all(tree, f, PriceMode::lower, constraint);
  const auto nulls = null_nodes(tree, constraint);

  IntegrabilityReport<T> r;
  r.depth = j;
  LeafFunction<T> exception(tree.leaf_count(), ExtReal<T>(T(0)));
  for (NodeId id : tree.nodes_at_depth(j)) {
    NodeGap<T> g;
    g.node = tree.path(id);
    g.upper = upper.at(id);
    g.lower = lower.at(id);
    g.gap = g.upper - g.lower;
    g.null_node = nulls[id];
    if (is_zero(g.gap)) {
      g.integral = g.upper;
    } else {
      const auto& n = tree.node(id);
      for (std::size_t p = n.leaf_begin; p < n.leaf_end; ++p) exception[p] = ExtReal<T>(T(1));
    }
    r.nodes.push_back(std::move(g));
  }
  r.exception_norm = price_all(tree, exception, PriceMode::norm, constraint).at(tree.root());
  r.integrable = is_zero(r.exception_norm);
  return r;
}

template <class T>
ConvergenceReport<T> verify_convergence_theorems(const TrajectoryTree<T>& tree,
                                                 const std::vector<LeafFunction<T>>& family, std::size_t j,
                                                 ConvergenceMode mode, std::size_t max_terms,
                                                 const ConstraintSet<T>& constraint) {
  if (family.empty()) throw Error("convergence check needs a nonempty family");
  const std::size_t n_terms = std::min(max_terms, family.size());
  const std::vector<LeafFunction<T>> members(family.begin(), family.begin() + static_cast<std::ptrdiff_t>(n_terms));

  if (mode == ConvergenceMode::monotone) {
    for (std::size_t n = 0; n + 1 < members.size(); ++n) {
      if (!pointwise_le(members[n], members[n + 1])) {
        throw Error("family is not monotone: member " + std::to_string(n + 1) + " exceeds member " +
                    std::to_string(n + 2) + " somewhere");
      }
    }
  } else {
    for (const auto& g : members) {
      for (const auto& v : g) {
        if (v < ExtReal<T>(T(0))) throw Error("Beppo-Levi pieces must be nonnegative");
      }
    }
  }

  ConvergenceReport<T> r;
  r.mode = mode;
  r.depth = j;
  r.terms = n_terms;
  const auto depth_nodes = tree.nodes_at_depth(j);

  // Integral at depth j, flagging non-integrable members.
  auto integrate = [&](const LeafFunction<T>& g) {
    const auto rep = check_integrable(tree, g, j, constraint);
    r.all_integrable = r.all_integrable && rep.integrable;
    return price_all(tree, g, PriceMode::upper, constraint);
  };
  auto distance = [](const ExtReal<T>& a, const ExtReal<T>& b) { return ext_abs(a - b); };

  if (mode == ConvergenceMode::monotone) {
    const LeafFunction<T>& limit = members.back();
    const auto limit_values = integrate(limit);
    std::vector<PricingResult<T>> partial_values;
    std::vector<PricingResult<T>> norms;
    for (const auto& g : members) {
      partial_values.push_back(integrate(g));
      norms.push_back(price_all(tree, add(limit, negate(g)), PriceMode::norm, constraint));
    }
    for (NodeId id : depth_nodes) {
      ConvergenceNode<T> node;
      node.node = tree.path(id);
      node.limit_integral = limit_values.at(id);
      for (std::size_t n = 0; n < members.size(); ++n) {
        node.partial.push_back(partial_values[n].at(id));
        node.residual.push_back(distance(node.limit_integral, node.partial.back()));
        node.norm_residual.push_back(norms[n].at(id));
        if (n > 0 && !approx_le(node.norm_residual[n], node.norm_residual[n - 1])) r.holds = false;
      }
      r.holds = r.holds && is_zero(node.residual.back()) && is_zero(node.norm_residual.back());
      r.nodes.push_back(std::move(node));
    }
  } else {
    std::vector<PricingResult<T>> piece_values;
    std::vector<PricingResult<T>> sum_values;
    LeafFunction<T> running(tree.leaf_count(), ExtReal<T>(T(0)));
    for (const auto& g : members) {
      piece_values.push_back(integrate(g));
      running = add(running, g);
      sum_values.push_back(integrate(running));
    }
    for (NodeId id : depth_nodes) {
      ConvergenceNode<T> node;
      node.node = tree.path(id);
      node.limit_integral = sum_values.back().at(id);
      ExtReal<T> acc(T(0));
      for (std::size_t n = 0; n < members.size(); ++n) {
        acc = acc + piece_values[n].at(id);
        node.partial.push_back(acc);
        node.residual.push_back(distance(sum_values[n].at(id), acc));
        ExtReal<T> tail(T(0));
        for (std::size_t k = n + 1; k < members.size(); ++k) tail = tail + piece_values[k].at(id);
        node.norm_residual.push_back(tail);
        // Without integrable pieces only subadditivity of the upper integral is claimed.
        r.holds = r.holds && (r.all_integrable ? is_zero(node.residual.back()) : approx_le(sum_values[n].at(id), acc));
      }
      r.nodes.push_back(std::move(node));
    }
  }
  return r;
}

template <class T>
Decomposition<T> integrable_decomposition(const TrajectoryTree<T>& tree, const LeafFunction<T>& f,
                                          const NodePath& node, const ConstraintSet<T>& constraint) {
  const auto cert = hedge_certificate(tree, f, node, constraint, T(0), PriceMode::upper);
  const NodeId start = tree.find(node);
  Decomposition<T> d;
  d.v.start = tree.depth(start);
  d.v.node = node;
  d.v.maturity = tree.horizon();
  for (const auto& e : cert.elements) d.v = linear_combination(T(1), d.v, T(1), e);
  d.v.maturity = tree.horizon();
  const LeafFunction<T> v_values = tabulate_elementary(d.v, tree);
  d.u.assign(tree.leaf_count(), ExtReal<T>(T(0)));
  for (NodeId leaf : tree.leaves_under(start)) {
    const std::size_t p = tree.leaf_position(leaf);
    d.u[p] = v_values[p] - f[p];
  }
  d.norm_u = conditional_norm(tree, d.u, node, constraint);
  return d;
}

#define TRAJINT_INSTANTIATE(T)                                                                                   \
  template NullReport<T> is_conditionally_null(const TrajectoryTree<T>&, const std::vector<NodePath>&,           \
                                               const NodePath&, const ConstraintSet<T>&);                        \
  template NullReport<T> is_null_function(const TrajectoryTree<T>&, const LeafFunction<T>&, const NodePath&,     \
                                          const ConstraintSet<T>&);                                              \
  template std::vector<bool> null_nodes(const TrajectoryTree<T>&, const ConstraintSet<T>&);                      \
  template LReport<T> check_L_property(const TrajectoryTree<T>&, const ConstraintSet<T>&);                       \
  template KReport<T> check_K_property(const TrajectoryTree<T>&, const ElementaryFunction<T>&, const NodePath&,  \
                                       const ConstraintSet<T>&);                                                 \
  template IntegrabilityReport<T> check_integrable(const TrajectoryTree<T>&, const LeafFunction<T>&, std::size_t, \
                                                   const ConstraintSet<T>&);                                     \
  template ConvergenceReport<T> verify_convergence_theorems(const TrajectoryTree<T>&,                            \
                                                            const std::vector<LeafFunction<T>>&, std::size_t,    \
                                                            ConvergenceMode, std::size_t, const ConstraintSet<T>&); \
  template Decomposition<T> integrable_decomposition(const TrajectoryTree<T>&, const LeafFunction<T>&,           \
                                                     const NodePath&, const ConstraintSet<T>&);

TRAJINT_INSTANTIATE(double)
TRAJINT_INSTANTIATE(Rational)

#undef TRAJINT_INSTANTIATE

}  // namespace trajint
