#include "trajint/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trajint {

namespace {

using X = ExtReal<double>;

// max_k (v_k - h Δ_k) with -inf entries dropped.
X shortfall(const std::vector<HedgePoint<double>>& pts, double h) {
  X best = X::neg_inf();
  for (const auto& p : pts) {
    if (p.value.is_neg_inf()) continue;
    if (p.value.is_pos_inf()) return X::pos_inf();
    best = ext_max(best, X(p.value.value() - h * p.increment));
  }
  return best;
}

X grid_node(const std::vector<HedgePoint<double>>& pts, const GridOptions& g) {
  const double span = g.h_hi - g.h_lo;
  const double full = std::floor(span / g.step + 1e-9) + 1.0;
  if (full > static_cast<double>(kOracleBudget)) throw Error("grid has more than 1e7 points per node");
  auto at = [&](double i) { return g.h_lo + i * g.step; };

  // The objective is convex in h, so a bracketing refinement finds the grid
  // minimum without visiting every point.
  double lo_i = 0.0;
  double hi_i = full - 1.0;
  X best = X::pos_inf();
  for (;;) {
    const double stride = std::max(1.0, std::floor((hi_i - lo_i) / 2000.0));
    double best_i = lo_i;
    X local = X::pos_inf();
    for (double i = lo_i; i <= hi_i; i += stride) {
      const X v = shortfall(pts, at(i));
      if (v < local) {
        local = v;
        best_i = i;
      }
    }
    best = ext_min(best, local);
    if (stride == 1.0) break;
    lo_i = std::max(0.0, best_i - stride);
    hi_i = std::min(full - 1.0, best_i + stride);
  }
  return best;
}

}  // namespace

ExtReal<double> grid_superhedge(const TrajectoryTree<double>& tree, const LeafFunction<double>& f,
                                const NodePath& node, const GridOptions& grid) {
  if (!(grid.step > 0.0) || !(grid.h_hi >= grid.h_lo)) throw Error("grid needs step > 0 and h_lo <= h_hi");
  if (f.size() != tree.leaf_count()) throw Error("payoff does not match the tree");
  const NodeId start = tree.find(node);
  std::vector<X> value(tree.size(), X(0.0));
  std::vector<HedgePoint<double>> pts;
  for (NodeId id = tree.size(); id-- > start;) {
    if (!tree.is_descendant(id, start)) continue;
    if (tree.is_leaf(id)) {
      value[id] = f[tree.leaf_position(id)];
      continue;
    }
    pts.clear();
    for (NodeId ch : tree.children(id)) pts.push_back({tree.increment(ch), value[ch]});
    value[id] = grid_node(pts, grid);
  }
  return value[start];
}

ExtReal<double> martingale_measure_value(const std::vector<HedgePoint<double>>& children) {
  bool feasible = false;
  X best = X::neg_inf();
  auto consider = [&](const X& v) {
    feasible = true;
    best = ext_max(best, v);
  };
  for (const auto& a : children) {
    if (is_zero(a.increment)) consider(a.value);
  }
  for (const auto& a : children) {
    if (!(a.increment < -kFloatTolerance)) continue;
    for (const auto& b : children) {
      if (!(b.increment > kFloatTolerance)) continue;
      const double pb = -a.increment / (b.increment - a.increment);
      const double pa = 1.0 - pb;
      consider(ext_add(ext_scale(pa, a.value), ext_scale(pb, b.value)));
    }
  }
  if (!feasible) throw Error("no martingale measure: node is an arbitrage node of type II");
  return best;
}

ExtReal<double> enumerate_superpositions(const TrajectoryTree<double>& tree, const LeafFunction<double>& f,
                                         const NodePath& node, std::size_t M,
                                         const std::vector<double>& coefficients) {
  if (M == 0 || coefficients.empty()) throw Error("enumeration needs M >= 1 and a nonempty coefficient grid");
  const NodeId start = tree.find(node);
  std::vector<NodeId> interior;
  for (NodeId id = start; id < tree.size() && tree.is_descendant(id, start); ++id) {
    if (!tree.is_leaf(id)) interior.push_back(id);
  }
  const auto leaves = tree.leaves_under(start);
  for (NodeId leaf : leaves) {
    if (f[tree.leaf_position(leaf)].is_pos_inf()) return X::pos_inf();
  }

  const std::size_t slots = interior.size() * M;
  double combos = 1.0;
  for (std::size_t i = 0; i < slots; ++i) combos *= static_cast<double>(coefficients.size());
  if (combos * static_cast<double>(leaves.size()) > static_cast<double>(kOracleBudget)) {
    throw Error("enumeration exceeds the 1e7 budget");
  }

  // gains[m][leaf] for the current choice; recomputed per tuple (instances are tiny).
  std::vector<std::size_t> pick(slots, 0);
  std::vector<double> total(leaves.size());
  std::vector<double> term(leaves.size());
  X best = X::pos_inf();
  for (;;) {
    std::fill(total.begin(), total.end(), 0.0);
    double premium_floor = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
      for (std::size_t l = 0; l < leaves.size(); ++l) {
        double g = 0.0;
        for (std::size_t s = 0; s < interior.size(); ++s) {
          const NodeId at = interior[s];
          if (!tree.is_descendant(leaves[l], at)) continue;
          const NodeId next = tree.ancestor(leaves[l], tree.depth(at) + 1);
          g += coefficients[pick[m * interior.size() + s]] * tree.increment(next);
        }
        term[l] = g;
        total[l] += g;
      }
      premium_floor += -*std::min_element(term.begin(), term.end());
    }
    X need = X(premium_floor);
    for (std::size_t l = 0; l < leaves.size(); ++l) {
      const X& v = f[tree.leaf_position(leaves[l])];
      if (v.is_neg_inf()) continue;
      need = ext_max(need, X(v.value() - total[l]));
    }
    best = ext_min(best, need);

    std::size_t k = 0;
    while (k < slots && ++pick[k] == coefficients.size()) pick[k++] = 0;
    if (k == slots) break;
  }
  return best;
}

}  // namespace trajint
