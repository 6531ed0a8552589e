#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "trajint/elementary.hpp"
#include "trajint/tree.hpp"

namespace trajint {

/// Paths flat at 1 that jump once to 2 and stay there, plus the all-ones path.
/// Flat nodes list the jump child first.
template <class T>
TrajectoryTree<T> gen_example1(std::size_t horizon);

/// Paths flat at 2 that jump once to 3 or to 1 and stay, plus the all-2 path.
/// Flat nodes list children as {3, 1, 2}.
template <class T>
TrajectoryTree<T> gen_example2(std::size_t horizon);

enum class LatticeKind { binomial, trinomial };

template <class T>
struct LatticeParams {
  LatticeKind kind = LatticeKind::binomial;
  T up = T(2);
  T mid = T(1);
  T down = T(1) / T(2);
};

/// Multiplicative lattice, one node per move sequence.
template <class T>
TrajectoryTree<T> gen_lattice(const LatticeParams<T>& params, std::size_t horizon, const T& s0);

struct RandomTreeOptions {
  std::size_t depth = 3;
  std::size_t min_branching = 1;
  std::size_t max_branching = 3;
  double arbitrage_type1_rate = 0.0;
  double arbitrage_type2_rate = 0.0;
  /// Smallest nonzero price move, in cents.
  long min_move_cents = 1;
};

/// Seeded random tree with prices on a 1/100 grid. Without arbitrage rates
/// every interior node is UpDown or Flat. The same seed gives the same prices
/// in either scalar type.
template <class T>
TrajectoryTree<T> random_tree(const RandomTreeOptions& options, std::uint64_t seed);

/// Seeded elementary function conditioned on `node`: V and holdings on a
/// 1/100 grid in [-2, 2], maturity drawn from (depth(node), N].
template <class T>
ElementaryFunction<T> random_elementary(const TrajectoryTree<T>& tree, const NodePath& node, std::uint64_t seed);

/// Seeded leaf values on a 1/100 grid in [lo, hi].
template <class T>
LeafFunction<T> random_leaf_function(const TrajectoryTree<T>& tree, std::uint64_t seed, long lo_cents = -500,
                                     long hi_cents = 500);

template <class T>
struct ContrarianStep {
  NodePath node;
  std::size_t child = 0;
  T holding{};
  T increment{};
  T gain{};
  T bound{};  // ε / 2^{i+1}, i the depth of `node`
};

template <class T>
struct ContrarianPath {
  NodePath leaf;
  std::vector<ContrarianStep<T>> steps;
  T cumulative{};
};

/// Extends `node` to a leaf, picking at each node the child minimizing F·Δ
/// (leftmost on ties, a zero-increment child at ArbitrageI nodes). Throws Error
/// at the first node where no child has gain below the bound.
template <class T>
ContrarianPath<T> contrarian_trajectory(const TrajectoryTree<T>& tree, const NodePath& node,
                                        const std::map<NodePath, T>& holdings, const T& epsilon);

template <class T>
struct Accumulated {
  ElementaryFunction<T> sum;
  bool admissible = true;  // sum stays inside the constraint set
};

/// Sums V's and holdings node by node. Throws Error on mismatched
/// conditioning nodes or an empty list.
template <class T>
Accumulated<T> accumulate_portfolios(const TrajectoryTree<T>& tree, const std::vector<ElementaryFunction<T>>& elements,
                                     const ConstraintSet<T>& constraint = ConstraintSet<T>::unrestricted());

/// f_m for m = 1..M on an example-1 tree: V = 0 and holding 1 at the flat
/// node of depth m-1, maturity m.
template <class T>
std::vector<ElementaryFunction<T>> example1_family(const TrajectoryTree<T>& tree, std::size_t M);

template <class T>
struct Example1Report {
  std::size_t M = 0;
  std::size_t N = 0;
  std::size_t jump_leaves = 0;       // leaves jumping at times 1..M
  std::size_t dominated_leaves = 0;  // of those, where Σ f_m >= 1
  T total_premium{};
  bool members_nonnegative = true;
  T flat_sum{};      // Σ f_m on the all-ones leaf
  T min_jump_sum{};  // smallest Σ f_m over jump-by-M leaves
  bool domination = false;
  bool rfp_violated = false;
  std::string note;

  bool holds() const { return domination && rfp_violated && members_nonnegative; }
};

template <class T>
Example1Report<T> verify_example1_L_failure(std::size_t M, std::size_t N);

template <class T>
struct Example2Selection {
  std::size_t n = 0;  // jump time
  NodePath leaf;
  T gain{};           // Σ H_i Δ_i along the chosen leaf
};

/// For each jump time n, the leaf that jumps up if H at the flat node of
/// depth n-1 is <= 0 and down otherwise, so the portfolio gains <= 0 on it.
template <class T>
std::vector<Example2Selection<T>> example2_selection(const TrajectoryTree<T>& tree, const ElementaryFunction<T>& p);

}  // namespace trajint
