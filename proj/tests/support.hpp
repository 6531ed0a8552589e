#pragma once

#include <functional>
#include <vector>

#include "trajint/construct.hpp"
#include "trajint/tree.hpp"

namespace trajint::testing {

/// One-step tree s0 -> each of `children`.
template <class T>
TrajectoryTree<T> one_step(const T& s0, const std::vector<T>& children) {
  TreeSpec<T> spec{s0, {}};
  for (const T& c : children) spec.children.push_back({c, {}});
  return TrajectoryTree<T>::build(s0, 1, spec);
}

/// Additive trinomial 1 -> {2, 1, 0}.
template <class T>
TrajectoryTree<T> additive_trinomial() {
  return one_step<T>(T(1), {T(2), T(1), T(0)});
}

/// Binomial with moves +1/-1 over `depth` steps.
template <class T>
TrajectoryTree<T> pm_one_binomial(std::size_t depth, const T& s0 = T(0)) {
  std::function<TreeSpec<T>(const T&, std::size_t)> grow = [&](const T& v, std::size_t left) {
    TreeSpec<T> s{v, {}};
    if (left > 0) {
      s.children.push_back(grow(T(v + T(1)), left - 1));
      s.children.push_back(grow(T(v - T(1)), left - 1));
    }
    return s;
  };
  return TrajectoryTree<T>::build(s0, depth, grow(s0, depth));
}

inline RandomTreeOptions random_options(std::size_t depth, std::size_t branching = 3) {
  RandomTreeOptions o;
  o.depth = depth;
  o.max_branching = branching;
  return o;
}

}  // namespace trajint::testing
