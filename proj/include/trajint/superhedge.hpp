#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trajint/elementary.hpp"
#include "trajint/ext_real.hpp"
#include "trajint/payoff.hpp"
#include "trajint/tree.hpp"

namespace trajint {

/// One child of a node: its increment and the continuation value there.
template <class T>
struct HedgePoint {
  T increment;
  ExtReal<T> value;
};

/// inf over admissible h of max_k (v_k - h * Δ_k).
template <class T>
struct NodeSolve {
  std::vector<HedgePoint<T>> points;
  Interval<T> constraint;
  ExtReal<T> value;
  /// Absent when the infimum is only reached as |h| -> infinity.
  std::optional<T> minimizer;
};

/// Exact minimisation of the convex piecewise-linear map h -> max_k (v_k - h Δ_k)
/// over the interval: finite candidates are the line crossings and interval
/// endpoints; unbounded directions are resolved by their slope limits. Ties
/// go to the minimiser of smallest |h|.
template <class T>
NodeSolve<T> node_minimax(std::span<const HedgePoint<T>> points, const Interval<T>& constraint);

/// Smallest-|h| holding with max_k (v_k - h Δ_k) <= wealth, if any.
template <class T>
std::optional<T> feasible_holding(std::span<const HedgePoint<T>> points, const ExtReal<T>& wealth,
                                  const Interval<T>& constraint);

enum class PriceMode { upper, lower, norm };

std::string to_string(PriceMode m);
PriceMode parse_price_mode(std::string_view text);

/// Node values of one backward induction, indexed by NodeId.
template <class T>
struct PricingResult {
  PriceMode mode = PriceMode::upper;
  std::vector<ExtReal<T>> values;
  std::vector<std::optional<T>> minimizers;
  /// Type II nodes that priced finitely because the constraint cut off the
  /// arbitrage direction.
  std::vector<NodePath> restricted_type2_finite;

  const ExtReal<T>& at(NodeId id) const { return values.at(id); }
};

/// upper: σ̄_j f;  lower: σ_j f = -σ̄_j(-f);  norm: Ī_j |f| (floored at 0).
template <class T>
PricingResult<T> price_all(const TrajectoryTree<T>& tree, const LeafFunction<T>& f, PriceMode mode,
                           const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted());

template <class T>
ExtReal<T> upper_integral(const TrajectoryTree<T>& tree, const LeafFunction<T>& f, const NodePath& node,
                          const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted()) {
  return price_all(tree, f, PriceMode::upper, constraint).at(tree.find(node));
}

template <class T>
ExtReal<T> lower_integral(const TrajectoryTree<T>& tree, const LeafFunction<T>& f, const NodePath& node,
                          const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted()) {
  return price_all(tree, f, PriceMode::lower, constraint).at(tree.find(node));
}

/// ‖f‖_j at `node`.
template <class T>
ExtReal<T> conditional_norm(const TrajectoryTree<T>& tree, const LeafFunction<T>& f, const NodePath& node,
                            const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted()) {
  return price_all(tree, f, PriceMode::norm, constraint).at(tree.find(node));
}

template <class T>
ExtReal<T> upper_integral(const TrajectoryTree<T>& tree, const Payoff<T>& f, const NodePath& node,
                          const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted()) {
  return upper_integral(tree, f.tabulate(tree), node, constraint);
}

template <class T>
ExtReal<T> lower_integral(const TrajectoryTree<T>& tree, const Payoff<T>& f, const NodePath& node,
                          const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted()) {
  return lower_integral(tree, f.tabulate(tree), node, constraint);
}

template <class T>
ExtReal<T> conditional_norm(const TrajectoryTree<T>& tree, const Payoff<T>& f, const NodePath& node,
                            const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted()) {
  return conditional_norm(tree, f.tabulate(tree), node, constraint);
}

/// Finitely many elementary functions whose sum dominates the target on the
/// conditional space. In upper mode the first element may be a nonpositive
/// constant; all others are nonnegative.
template <class T>
struct HedgeCertificate {
  NodePath node;
  PriceMode mode = PriceMode::upper;
  std::vector<ElementaryFunction<T>> elements;
  T total_premium = T(0);
  T slack = T(0);
};

/// Extracts a certificate for the upper (or norm) value at `node`. Throws
/// Error when the value is -inf, +inf, or only reachable in the limit.
template <class T>
HedgeCertificate<T> hedge_certificate(const TrajectoryTree<T>& tree, const LeafFunction<T>& f, const NodePath& node,
                                      const ConstraintSet<T>& constraint, const T& slack,
                                      PriceMode mode = PriceMode::upper);

struct CertificateCheck {
  bool dominates = false;
  bool premium_within_slack = false;
  bool signs_ok = false;  // element sign pattern matches the mode
  std::string detail;

  bool ok() const { return dominates && premium_within_slack && signs_ok; }
};

/// Evaluates the certificate on every conditional leaf against `f` (or |f| in
/// norm mode) and compares its premium with `value`.
template <class T>
CertificateCheck validate_certificate(const TrajectoryTree<T>& tree, const LeafFunction<T>& f,
                                      const HedgeCertificate<T>& cert, const ExtReal<T>& value);

}  // namespace trajint
