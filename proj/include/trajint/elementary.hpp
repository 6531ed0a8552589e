#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trajint/ext_real.hpp"
#include "trajint/payoff.hpp"
#include "trajint/tree.hpp"

namespace trajint {

/// Admissible holdings at one depth: h in [lo, hi], endpoints may be infinite.
template <class T>
struct Interval {
  ExtReal<T> lo = ExtReal<T>::neg_inf();
  ExtReal<T> hi = ExtReal<T>::pos_inf();

  bool contains(const T& h) const { return lo <= ExtReal<T>(h) && ExtReal<T>(h) <= hi; }
  bool unbounded_above() const { return hi.is_pos_inf(); }
  bool unbounded_below() const { return lo.is_neg_inf(); }
  bool is_cone() const;
  /// Nearest admissible point to h.
  T clamp(const T& h) const;
  std::string to_string() const;
};

/// Which of the portfolio-set axioms the interval family satisfies.
struct AxiomReport {
  bool positive_cone = true;       // closed under a*H + G, a >= 0
  bool contains_zero = true;       // null portfolio admissible
  bool contains_unit = true;       // constant -1 and +1 portfolios admissible
  bool restriction_closed = true;  // structural for per-depth intervals
  bool truncation_closed = true;   // zeroing later holdings stays admissible

  bool all() const {
    return positive_cone && contains_zero && contains_unit && restriction_closed && truncation_closed;
  }
};

template <class T>
struct ElementaryFunction;

/// Per-depth holding intervals with a global default.
template <class T>
class ConstraintSet {
 public:
  ConstraintSet() = default;
  explicit ConstraintSet(Interval<T> global) : global_(std::move(global)) {}

  static ConstraintSet unrestricted() { return ConstraintSet(); }

  void set_depth(std::size_t depth, Interval<T> iv) { per_depth_[depth] = std::move(iv); }
  const Interval<T>& at(std::size_t depth) const;
  bool is_unrestricted() const;

  AxiomReport check_axioms() const;
  bool admits(const ElementaryFunction<T>& p, const TrajectoryTree<T>& tree) const;

 private:
  Interval<T> global_;
  std::map<std::size_t, Interval<T>> per_depth_;
};

/// V + sum_{i=start}^{maturity-1} H_i * Δ_i on the leaves extending `node`.
/// Holdings are keyed by node path, which makes them nonanticipative.
template <class T>
struct ElementaryFunction {
  std::size_t start = 0;
  NodePath node;
  T V = T(0);
  std::map<NodePath, T> H;
  std::size_t maturity = 0;

  /// Holding at an interior node, zero when absent.
  T holding(const NodePath& at) const {
    const auto it = H.find(at);
    return it == H.end() ? T(0) : it->second;
  }
  bool is_zero_function() const;
};

/// Throws Error unless start/maturity/holding keys are consistent with the tree.
template <class T>
void validate_elementary(const TrajectoryTree<T>& tree, const ElementaryFunction<T>& p);

template <class T>
T evaluate_elementary(const ElementaryFunction<T>& p, const TrajectoryTree<T>& tree, const NodePath& leaf);

template <class T>
T evaluate_elementary(const ElementaryFunction<T>& p, const TrajectoryTree<T>& tree, NodeId leaf);

/// V plus gains up to (not including) step k.
template <class T>
T partial_sum(const ElementaryFunction<T>& p, const TrajectoryTree<T>& tree, NodeId leaf, std::size_t k);

/// Leaf values, extended by 0 outside the conditioning node.
template <class T>
LeafFunction<T> tabulate_elementary(const ElementaryFunction<T>& p, const TrajectoryTree<T>& tree);

template <class T>
struct ElementaryIntegral {
  T value;
  std::optional<std::string> warning;
};

/// I_j p = V. Warns when a type II node below `node` breaks order consistency.
template <class T>
ElementaryIntegral<T> elementary_integral(const TrajectoryTree<T>& tree, const ElementaryFunction<T>& p,
                                          const NodePath& node);

template <class T>
ElementaryFunction<T> linear_combination(const T& a, const ElementaryFunction<T>& p, const T& b,
                                         const ElementaryFunction<T>& q);

/// Zeroes holdings at depth >= k and caps maturity at k.
template <class T>
ElementaryFunction<T> truncate(const ElementaryFunction<T>& p, std::size_t k);

struct WellposedReport {
  bool nonnegative = false;  // Π >= 0 on the conditional space
  bool pass = true;
  std::optional<std::size_t> violated_step;
  std::optional<NodePath> violated_leaf;
  std::string note;
};

/// If Π >= 0 on the conditional space, checks every partial sum and V are >= 0.
template <class T>
WellposedReport check_wellposed(const TrajectoryTree<T>& tree, const ElementaryFunction<T>& p);

/// One equation w + h * increment = rhs of a node's affine fit.
template <class T>
struct AffineEquation {
  NodePath child;
  T increment;
  T rhs;
};

template <class T>
struct AbsRepresentation {
  std::optional<ElementaryFunction<T>> representation;
  /// Set when infeasible: the node whose children cannot be fit and a minimal
  /// inconsistent subset of its equations.
  std::optional<NodePath> failing_node;
  std::vector<AffineEquation<T>> inconsistent;
};

/// Decides whether |Π| is itself elementary (root-conditioned p) by solving the
/// per-node systems V' + H' Δ = continuation, backwards from maturity.
template <class T>
AbsRepresentation<T> represent_abs(const TrajectoryTree<T>& tree, const ElementaryFunction<T>& p);

}  // namespace trajint
