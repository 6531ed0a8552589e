#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trajint/measure.hpp"
#include "trajint/superhedge.hpp"

namespace trajint {

enum class ProcessMode { upper, lower, integral };

std::string to_string(ProcessMode m);
ProcessMode parse_process_mode(std::string_view text);

/// One value per node, so each f_j is constant on its conditional spaces.
template <class T>
struct PriceProcess {
  ProcessMode mode = ProcessMode::upper;
  std::vector<ExtReal<T>> values;  // by NodeId
};

/// f_j = σ̄_j f, σ_j f, or ∫_j f at every node. Integral mode throws Error
/// naming the first non-null node where σ̄_j f != σ_j f.
template <class T>
PriceProcess<T> price_process(const TrajectoryTree<T>& tree, const LeafFunction<T>& f, ProcessMode mode,
                              const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted());

template <class T>
struct TowerNode {
  NodePath node;
  ExtReal<T> lower;        // σ_j f
  ExtReal<T> lower_lower;  // σ_j[σ_k f]
  ExtReal<T> lower_upper;  // σ_j[σ̄_k f]
  ExtReal<T> upper_lower;  // σ̄_j[σ_k f]
  ExtReal<T> upper_upper;  // σ̄_j[σ̄_k f]
  ExtReal<T> upper;        // σ̄_j f
  bool chain_holds = true;
  bool strict_somewhere = false;
  std::optional<bool> tower_equality;  // ∫_j ∫_k f = ∫_j f, when f is integrable
};

template <class T>
struct TowerReport {
  std::size_t j = 0;
  std::size_t k = 0;
  bool integrable = false;
  std::vector<TowerNode<T>> nodes;
  bool chain_holds = true;
  bool equality_holds = true;
};

/// Checks σ_j f <= σ_j[σ_k f] <= {σ_j[σ̄_k f], σ̄_j[σ_k f]} <= σ̄_j[σ̄_k f] <= σ̄_j f at
/// every depth-j node and, for integrable f, ∫_j[∫_k f] = ∫_j f.
template <class T>
TowerReport<T> verify_tower(const TrajectoryTree<T>& tree, const LeafFunction<T>& f, std::size_t j, std::size_t k,
                            const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted());

enum class ProcessClass { martingale, submartingale, supermartingale, none };

std::string to_string(ProcessClass c);

struct ProcessClassification {
  bool supermartingale = true;
  bool submartingale = true;
  bool martingale = true;
  std::vector<NodePath> super_violations;
  std::vector<NodePath> sub_violations;

  ProcessClass label() const {
    if (martingale) return ProcessClass::martingale;
    if (supermartingale) return ProcessClass::supermartingale;
    if (submartingale) return ProcessClass::submartingale;
    return ProcessClass::none;
  }
};

/// Super: σ̄_j f_{j+1} <= f_j; sub: f_j <= σ_j f_{j+1}; martingale: both with
/// equality. Nodes whose conditional space is null are skipped.
template <class T>
ProcessClassification classify_process(const TrajectoryTree<T>& tree, const PriceProcess<T>& p,
                                       const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted());

}  // namespace trajint
