#pragma once

#include <map>
#include <optional>
#include <vector>

#include "trajint/elementary.hpp"
#include "trajint/superhedge.hpp"

namespace trajint {

template <class T>
struct NullReport {
  std::vector<NodePath> target;  // leaf set, empty for function targets
  NodePath node;
  ExtReal<T> norm_value;
  bool is_null = false;
  std::optional<HedgeCertificate<T>> certificate;
};

/// ‖1_E‖_j at `node`; null iff zero (within ε in float mode).
template <class T>
NullReport<T> is_conditionally_null(const TrajectoryTree<T>& tree, const std::vector<NodePath>& leaf_set,
                                    const NodePath& node,
                                    const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted());

/// ‖g‖_j at `node` for a function target.
template <class T>
NullReport<T> is_null_function(const TrajectoryTree<T>& tree, const LeafFunction<T>& g, const NodePath& node,
                               const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted());

/// Per node, whether its whole conditional space is a (globally) null set.
template <class T>
std::vector<bool> null_nodes(const TrajectoryTree<T>& tree,
                             const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted());

template <class T>
struct LReport {
  std::map<NodePath, ExtReal<T>> upper_of_zero;
  std::map<NodePath, bool> holds;
  bool all = true;
};

/// (L) at every node: σ̄_j 0 = 0.
template <class T>
LReport<T> check_L_property(const TrajectoryTree<T>& tree,
                            const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted());

template <class T>
struct KReport {
  ExtReal<T> norm_positive;  // Ī_j f⁺
  T integral;                // I_j f
  ExtReal<T> norm_negative;  // Ī_j f⁻
  bool holds = false;
};

/// Ī_j f⁺ = I_j f + Ī_j f⁻ for an elementary f at `node`.
template <class T>
KReport<T> check_K_property(const TrajectoryTree<T>& tree, const ElementaryFunction<T>& f, const NodePath& node,
                            const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted());

template <class T>
struct NodeGap {
  NodePath node;
  ExtReal<T> upper;
  ExtReal<T> lower;
  ExtReal<T> gap;  // upper - lower with inf + (-inf) = inf
  bool null_node = false;
  std::optional<ExtReal<T>> integral;  // set where the gap vanishes
};

template <class T>
struct IntegrabilityReport {
  std::size_t depth = 0;
  std::vector<NodeGap<T>> nodes;
  /// ‖1_E‖ at the root, E = leaves under nodes with a nonzero gap.
  ExtReal<T> exception_norm;
  bool integrable = false;
};

/// Membership in L_σ̄_j: the gap σ̄_j f - σ_j f vanishes outside a null set.
template <class T>
IntegrabilityReport<T> check_integrable(const TrajectoryTree<T>& tree, const LeafFunction<T>& f, std::size_t j,
                                        const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted());

enum class ConvergenceMode { monotone, beppo_levi };

template <class T>
struct ConvergenceNode {
  NodePath node;
  ExtReal<T> limit_integral;              // ∫_j f (MCT) or ∫_j Σ f_k (Beppo-Levi)
  std::vector<ExtReal<T>> partial;        // ∫_j f_n, or Σ_{k<=n} ∫_j f_k
  std::vector<ExtReal<T>> residual;       // |limit - partial[n]|, or |∫_j Σ_{k<=n} - Σ_{k<=n} ∫_j|
  std::vector<ExtReal<T>> norm_residual;  // MCT: ‖f - f_n‖_j; Beppo-Levi: tail premium bound
};

template <class T>
struct ConvergenceReport {
  ConvergenceMode mode = ConvergenceMode::monotone;
  std::size_t depth = 0;
  std::size_t terms = 0;
  std::vector<ConvergenceNode<T>> nodes;
  bool all_integrable = true;
  bool holds = true;  // final residuals vanish (and, in MCT, norms decrease)
};

/// Numeric instance of monotone convergence (family increasing, limit = last
/// member) or Beppo-Levi (family = nonnegative pieces), truncated to
/// `max_terms` members.
template <class T>
ConvergenceReport<T> verify_convergence_theorems(const TrajectoryTree<T>& tree,
                                                 const std::vector<LeafFunction<T>>& family, std::size_t j,
                                                 ConvergenceMode mode, std::size_t max_terms = 64,
                                                 const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted());

/// f = v - u on the conditional space with v elementary (a hedge of f) and
/// u >= 0; for integrable f, ‖u‖_j = 0.
template <class T>
struct Decomposition {
  ElementaryFunction<T> v;
  LeafFunction<T> u;
  ExtReal<T> norm_u;
};

template <class T>
Decomposition<T> integrable_decomposition(const TrajectoryTree<T>& tree, const LeafFunction<T>& f,
                                          const NodePath& node,
                                          const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted());

}  // namespace trajint
