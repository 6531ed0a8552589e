#include "trajint/superhedge.hpp"

#include <algorithm>
#include <functional>

#include "trajint/classify.hpp"

namespace trajint {

std::string to_string(PriceMode m) {
  switch (m) {
    case PriceMode::upper:
      return "upper";
    case PriceMode::lower:
      return "lower";
    case PriceMode::norm:
      return "norm";
  }
  return "?";
}

PriceMode parse_price_mode(std::string_view text) {
  if (text == "upper") return PriceMode::upper;
  if (text == "lower") return PriceMode::lower;
  if (text == "norm") return PriceMode::norm;
  throw InputError("unknown mode '" + std::string(text) + "' (expected upper|lower|norm)");
}

namespace {

// Slope limit of max_k (v_k - h Δ_k) as h -> +inf (direction = +1) or -inf (-1).
template <class T>
ExtReal<T> slope_limit(const std::vector<const HedgePoint<T>*>& active, int direction) {
  bool first = true;
  T extreme(0);
  for (const auto* p : active) {
    const T d = direction > 0 ? p->increment : T(-p->increment);
    if (first || d < extreme) extreme = d;
    first = false;
  }
  const int s = sign(extreme);
  if (s > 0) return ExtReal<T>::neg_inf();
  if (s < 0) return ExtReal<T>::pos_inf();
  ExtReal<T> best = ExtReal<T>::neg_inf();
  for (const auto* p : active) {
    if (is_zero(p->increment)) best = ext_max(best, p->value);
  }
  return best;
}

template <class T>
bool abs_less(const T& a, const T& b) {
  return ScalarTraits<T>::abs(a) < ScalarTraits<T>::abs(b);
}

}  // namespace

template <class T>
NodeSolve<T> node_minimax(std::span<const HedgePoint<T>> points, const Interval<T>& constraint) {
  if (points.empty()) throw Error("node_minimax needs at least one point");
  if (constraint.hi < constraint.lo) throw Error("empty holding interval " + constraint.to_string());

  NodeSolve<T> out;
  out.points.assign(points.begin(), points.end());
  out.constraint = constraint;
  const T h0 = constraint.clamp(T(0));

  std::vector<const HedgePoint<T>*> active;
  for (const auto& p : points) {
    if (!p.value.is_neg_inf()) active.push_back(&p);
  }
  if (active.empty()) {
    out.value = ExtReal<T>::neg_inf();
    out.minimizer = h0;
    return out;
  }
  bool any_pos_inf = false;
  for (const auto* p : active) {
    if (p->value.is_pos_inf()) {
      if (is_zero(p->increment)) {
        out.value = ExtReal<T>::pos_inf();
        out.minimizer = h0;
        return out;
      }
      any_pos_inf = true;
    }
  }

  // Best value over finite h.
  ExtReal<T> best = ExtReal<T>::pos_inf();
  std::optional<T> best_h;
  if (any_pos_inf) {
    best_h = h0;
  } else {
    auto phi = [&](const T& h) {
      T m = active.front()->value.value() - h * active.front()->increment;
      for (const auto* p : active) m = std::max<T>(m, T(p->value.value() - h * p->increment));
      return m;
    };
    std::vector<T> candidates{h0};
    if (constraint.lo.is_finite()) candidates.push_back(constraint.lo.value());
    if (constraint.hi.is_finite()) candidates.push_back(constraint.hi.value());
    for (std::size_t a = 0; a < active.size(); ++a) {
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        const T dd = active[a]->increment - active[b]->increment;
        if (is_zero(dd)) continue;
        const T h = (active[a]->value.value() - active[b]->value.value()) / dd;
        if (constraint.contains(h)) candidates.push_back(h);
      }
    }
    std::vector<T> values;
    values.reserve(candidates.size());
    for (const auto& c : candidates) values.push_back(phi(c));
    const T min_value = *std::min_element(values.begin(), values.end());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (!approx_eq(values[i], min_value)) continue;
      if (!best_h || abs_less(candidates[i], *best_h)) best_h = candidates[i];
    }
    best = ExtReal<T>(min_value);
  }

  ExtReal<T> limit = ExtReal<T>::pos_inf();
  if (constraint.unbounded_above()) limit = ext_min(limit, slope_limit<T>(active, +1));
  if (constraint.unbounded_below()) limit = ext_min(limit, slope_limit<T>(active, -1));

  if (approx_le(best, limit)) {
    out.value = best;
    out.minimizer = best_h;
  } else {
    out.value = limit;
  }
  return out;
}

template <class T>
std::optional<T> feasible_holding(std::span<const HedgePoint<T>> points, const ExtReal<T>& wealth,
                                  const Interval<T>& constraint) {
  ExtReal<T> lo = constraint.lo;
  ExtReal<T> hi = constraint.hi;
  for (const auto& p : points) {
    if (p.value.is_neg_inf()) continue;
    if (p.value.is_pos_inf() || wealth.is_neg_inf()) return std::nullopt;
    if (wealth.is_pos_inf()) continue;
    const T gap = p.value.value() - wealth.value();
    const int s = sign(p.increment);
    if (s == 0) {
      if (sign(gap) > 0) return std::nullopt;
    } else if (s > 0) {
      lo = ext_max(lo, ExtReal<T>(T(gap / p.increment)));
    } else {
      hi = ext_min(hi, ExtReal<T>(T(gap / p.increment)));
    }
  }
  if (hi < lo) {
    if (!(lo.is_finite() && hi.is_finite() && approx_eq(lo.value(), hi.value()))) return std::nullopt;
    return lo.value();
  }
  return Interval<T>{lo, hi}.clamp(T(0));
}

template <class T>
PricingResult<T> price_all(const TrajectoryTree<T>& tree, const LeafFunction<T>& f, PriceMode mode,
                           const ConstraintSet<T>& constraint) {
  if (f.size() != tree.leaf_count()) throw Error("payoff does not match the tree's leaves");
  LeafFunction<T> terminal;
  switch (mode) {
    case PriceMode::upper:
      terminal = f;
      break;
    case PriceMode::lower:
      terminal = negate(f);
      break;
    case PriceMode::norm:
      terminal = abs(f);
      break;
  }

  PricingResult<T> out;
  out.mode = mode;
  out.values.assign(tree.size(), ExtReal<T>(T(0)));
  out.minimizers.assign(tree.size(), std::nullopt);
  std::vector<HedgePoint<T>> points;
  // Children carry larger ids than their parent in DFS preorder.
  for (NodeId id = tree.size(); id-- > 0;) {
    if (tree.is_leaf(id)) {
      out.values[id] = terminal[tree.leaf_position(id)];
      continue;
    }
    points.clear();
    for (NodeId c : tree.children(id)) points.push_back({tree.increment(c), out.values[c]});
    const Interval<T>& iv = constraint.at(tree.depth(id));
    NodeSolve<T> solve = node_minimax<T>(points, iv);
    if (mode == PriceMode::norm && solve.value < ExtReal<T>(T(0))) {
      solve.value = ExtReal<T>(T(0));
      solve.minimizer = feasible_holding<T>(points, solve.value, iv);
    }
    out.values[id] = solve.value;
    out.minimizers[id] = solve.minimizer;
    if (solve.value.is_finite() && !(iv.lo.is_neg_inf() && iv.hi.is_pos_inf()) &&
        classify_node(tree, id).kind == NodeKind::arbitrage_type2) {
      out.restricted_type2_finite.push_back(tree.path(id));
    }
  }
  if (mode == PriceMode::lower) {
    for (auto& v : out.values) v = -v;
    for (auto& h : out.minimizers) {
      if (h) h = T(-*h);
    }
  }
  return out;
}

template <class T>
HedgeCertificate<T> hedge_certificate(const TrajectoryTree<T>& tree, const LeafFunction<T>& f, const NodePath& node,
                                      const ConstraintSet<T>& constraint, const T& slack, PriceMode mode) {
  if (mode == PriceMode::lower) throw Error("certificates are issued for upper or norm values");
  const NodeId start = tree.find(node);
  const PricingResult<T> priced = price_all(tree, f, mode, constraint);
  const ExtReal<T> value = priced.at(start);
  if (value.is_neg_inf()) throw Error("value at " + node.to_string() + " is -inf: no finite certificate");
  if (value.is_pos_inf()) throw Error("value at " + node.to_string() + " is +inf: no finite certificate");
  const LeafFunction<T> target = mode == PriceMode::norm ? abs(f) : f;

  // Walk the subtree carrying wealth; each node picks a holding that keeps
  // every child's wealth above its continuation value.
  auto build = [&](const T& premium) -> std::optional<ElementaryFunction<T>> {
    ElementaryFunction<T> g;
    g.start = tree.depth(start);
    g.node = node;
    g.V = premium;
    g.maturity = tree.horizon();
    std::function<bool(NodeId, const T&)> walk = [&](NodeId id, const T& wealth) {
      if (tree.is_leaf(id)) return approx_le(target[tree.leaf_position(id)], ExtReal<T>(wealth));
      // Pass half of any surplus down so limit-only values deeper in the
      // subtree still have room.
      const ExtReal<T> surplus = ExtReal<T>(wealth) - priced.at(id);
      const ExtReal<T> margin =
          surplus.is_finite() && sign(surplus.value()) > 0 ? ExtReal<T>(T(surplus.value() / T(2))) : ExtReal<T>(T(0));
      std::vector<HedgePoint<T>> points;
      for (NodeId c : tree.children(id)) points.push_back({tree.increment(c), priced.at(c) + margin});
      const auto h = feasible_holding<T>(points, ExtReal<T>(wealth), constraint.at(tree.depth(id)));
      if (!h) return false;
      if (!is_zero(*h)) g.H[tree.path(id)] = *h;
      for (NodeId c : tree.children(id)) {
        if (!walk(c, T(wealth + *h * tree.increment(c)))) return false;
      }
      return true;
    };
    if (!walk(start, premium)) return std::nullopt;
    return g;
  };

  std::optional<ElementaryFunction<T>> g = build(value.value());
  T premium = value.value();
  if (!g && sign(slack) > 0) {
    premium = value.value() + slack;
    g = build(premium);
  }
  if (!g) {
    throw Error("value at " + node.to_string() + " is reached only in the limit: no finite certificate");
  }

  HedgeCertificate<T> cert;
  cert.node = node;
  cert.mode = mode;
  cert.slack = slack;
  cert.total_premium = premium;
  if (g->is_zero_function()) return cert;

  // Split g into a nonpositive constant and a nonnegative remainder.
  T floor_value(0);
  for (NodeId leaf : tree.leaves_under(start)) {
    floor_value = std::min<T>(floor_value, evaluate_elementary(*g, tree, leaf));
  }
  if (sign(floor_value) < 0) {
    ElementaryFunction<T> f0;
    f0.start = g->start;
    f0.node = node;
    f0.V = floor_value;
    f0.maturity = g->start;
    cert.elements.push_back(std::move(f0));
    g->V -= floor_value;
  }
  if (!g->is_zero_function()) cert.elements.push_back(std::move(*g));
  return cert;
}

template <class T>
CertificateCheck validate_certificate(const TrajectoryTree<T>& tree, const LeafFunction<T>& f,
                                      const HedgeCertificate<T>& cert, const ExtReal<T>& value) {
  CertificateCheck r;
  const NodeId start = tree.find(cert.node);
  T premium(0);
  for (const auto& e : cert.elements) premium += e.V;
  r.premium_within_slack = approx_le(ExtReal<T>(premium), value + ExtReal<T>(cert.slack)) &&
                           approx_eq(premium, cert.total_premium);
  r.dominates = true;
  r.signs_ok = true;
  for (NodeId leaf : tree.leaves_under(start)) {
    T sum(0);
    for (std::size_t i = 0; i < cert.elements.size(); ++i) {
      const T v = evaluate_elementary(cert.elements[i], tree, leaf);
      const bool may_be_negative = cert.mode == PriceMode::upper && i == 0;
      if (may_be_negative ? sign(v) > 0 && cert.elements.size() > 1 : sign(v) < 0) r.signs_ok = false;
      sum += v;
    }
    ExtReal<T> target = f[tree.leaf_position(leaf)];
    if (cert.mode == PriceMode::norm) target = ext_abs(target);
    if (!approx_le(target, ExtReal<T>(sum))) {
      r.dominates = false;
      r.detail = "certificate sum " + format_scalar(sum) + " below target " + target.to_string() + " at leaf " +
                 tree.path(leaf).to_string();
    }
  }
  if (!r.premium_within_slack && r.detail.empty()) {
    r.detail = "premium " + format_scalar(premium) + " exceeds value " + value.to_string() + " + slack";
  }
  return r;
}

#define TRAJINT_INSTANTIATE(T)                                                                                  \
  template NodeSolve<T> node_minimax(std::span<const HedgePoint<T>>, const Interval<T>&);                       \
  template std::optional<T> feasible_holding(std::span<const HedgePoint<T>>, const ExtReal<T>&,                 \
                                             const Interval<T>&);                                               \
  template PricingResult<T> price_all(const TrajectoryTree<T>&, const LeafFunction<T>&, PriceMode,              \
                                      const ConstraintSet<T>&);                                                 \
  template HedgeCertificate<T> hedge_certificate(const TrajectoryTree<T>&, const LeafFunction<T>&,              \
                                                 const NodePath&, const ConstraintSet<T>&, const T&, PriceMode); \
  template CertificateCheck validate_certificate(const TrajectoryTree<T>&, const LeafFunction<T>&,              \
                                                 const HedgeCertificate<T>&, const ExtReal<T>&);

TRAJINT_INSTANTIATE(double)
TRAJINT_INSTANTIATE(Rational)

#undef TRAJINT_INSTANTIATE

}  // namespace trajint
