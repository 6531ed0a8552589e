#pragma once

#include <cstddef>
#include <vector>

#include "trajint/superhedge.hpp"

namespace trajint {

inline constexpr std::size_t kOracleBudget = 10'000'000;

struct GridOptions {
  double h_lo = -10.0;
  double h_hi = 10.0;
  double step = 1e-3;
};

/// Backward induction where each node's holding is found by searching the grid
/// h_lo + i*step (coarse pass, then successively finer passes around the best
/// point). Throws Error when one node's grid exceeds kOracleBudget points.
ExtReal<double> grid_superhedge(const TrajectoryTree<double>& tree, const LeafFunction<double>& f,
                                const NodePath& node, const GridOptions& grid);

/// max Σ p_k v_k over probability vectors with Σ p_k Δ_k = 0, by enumerating
/// one- and two-point supports. Throws Error when no such vector exists.
ExtReal<double> martingale_measure_value(const std::vector<HedgePoint<double>>& children);

/// Least Σ V^m over M-tuples of elementary functions whose holdings at every
/// interior node below `node` come from `coefficients`, with each term
/// nonnegative and the sum dominating f on the conditional space.
ExtReal<double> enumerate_superpositions(const TrajectoryTree<double>& tree, const LeafFunction<double>& f,
                                         const NodePath& node, std::size_t M,
                                         const std::vector<double>& coefficients);

}  // namespace trajint
