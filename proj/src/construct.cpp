#include "trajint/construct.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>

#include "trajint/classify.hpp"

namespace trajint {

namespace {

template <class T>
TreeSpec<T> constant_chain(const T& value, std::size_t remaining) {
  TreeSpec<T> spec{value, {}};
  if (remaining > 0) spec.children.push_back(constant_chain(value, remaining - 1));
  return spec;
}

template <class T>
TreeSpec<T> example1_flat(std::size_t remaining) {
  TreeSpec<T> spec{T(1), {}};
  if (remaining == 0) return spec;
  spec.children.push_back(constant_chain(T(2), remaining - 1));
  spec.children.push_back(example1_flat<T>(remaining - 1));
  return spec;
}

template <class T>
TreeSpec<T> example2_flat(std::size_t remaining) {
  TreeSpec<T> spec{T(2), {}};
  if (remaining == 0) return spec;
  spec.children.push_back(constant_chain(T(3), remaining - 1));
  spec.children.push_back(constant_chain(T(1), remaining - 1));
  spec.children.push_back(example2_flat<T>(remaining - 1));
  return spec;
}

template <class T>
TreeSpec<T> lattice_spec(const std::vector<T>& factors, const T& value, std::size_t remaining) {
  TreeSpec<T> spec{value, {}};
  if (remaining == 0) return spec;
  for (const T& f : factors) spec.children.push_back(lattice_spec(factors, T(value * f), remaining - 1));
  return spec;
}

class CentSampler {
 public:
  explicit CentSampler(std::uint64_t seed) : rng_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool chance(double p) { return p > 0.0 && std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }

 private:
  std::mt19937_64 rng_;
};

// Prices in cents. Moves stay within a factor of 1.5 up and 0.6 down, capped
// to [10, 1000] while that leaves room.
void sample_children(CentSampler& rng, const RandomTreeOptions& opt, long cents, std::size_t remaining,
                     TreeSpec<long>& out) {
  out.value = cents;
  if (remaining == 0) return;
  long down_lo = std::max(10L, (cents * 6 + 9) / 10);
  long up_hi = std::min(1000L, cents * 3 / 2);
  if (down_lo > cents - 1) down_lo = std::max(1L, cents / 2);
  if (up_hi < cents + 1) up_hi = cents * 2;
  const long move = std::max(1L, opt.min_move_cents);
  const long down_hi = std::max(1L, cents - move);
  const long up_lo = cents + move;
  down_lo = std::min(down_lo, down_hi);
  up_hi = std::max(up_hi, up_lo);

  const std::size_t branching =
      static_cast<std::size_t>(rng.uniform(static_cast<long>(opt.min_branching), static_cast<long>(opt.max_branching)));
  std::vector<long> values;
  const bool upward = rng.chance(0.5);
  auto one_sided = [&]() { return upward ? rng.uniform(up_lo, up_hi) : rng.uniform(down_lo, down_hi); };
  if (rng.chance(opt.arbitrage_type2_rate)) {
    for (std::size_t i = 0; i < branching; ++i) values.push_back(one_sided());
  } else if (branching >= 2 && rng.chance(opt.arbitrage_type1_rate)) {
    values.push_back(cents);
    for (std::size_t i = 1; i < branching; ++i) values.push_back(one_sided());
  } else if (branching == 1) {
    values.push_back(cents);
  } else {
    values.push_back(rng.uniform(up_lo, up_hi));
    values.push_back(rng.uniform(down_lo, down_hi));
    for (std::size_t i = 2; i < branching; ++i) {
      const long v = rng.uniform(down_lo, up_hi);
      values.push_back(std::abs(v - cents) < move ? cents : v);
    }
    // Shuffle so the up child is not always first.
    const std::size_t swap_with = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(branching) - 1));
    std::swap(values[0], values[swap_with]);
  }
  out.children.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) sample_children(rng, opt, values[i], remaining - 1, out.children[i]);
}

template <class T>
TreeSpec<T> cents_to_scalar(const TreeSpec<long>& in) {
  TreeSpec<T> out{ScalarTraits<T>::from_ratio(in.value, 100), {}};
  out.children.reserve(in.children.size());
  for (const auto& ch : in.children) out.children.push_back(cents_to_scalar<T>(ch));
  return out;
}

template <class T>
NodePath flat_path(std::size_t depth, std::size_t flat_index) {
  return NodePath(std::vector<std::size_t>(depth, flat_index));
}

}  // namespace

template <class T>
TrajectoryTree<T> gen_example1(std::size_t horizon) {
  return TrajectoryTree<T>::build(T(1), horizon, example1_flat<T>(horizon));
}

template <class T>
TrajectoryTree<T> gen_example2(std::size_t horizon) {
  return TrajectoryTree<T>::build(T(2), horizon, example2_flat<T>(horizon));
}

template <class T>
TrajectoryTree<T> gen_lattice(const LatticeParams<T>& params, std::size_t horizon, const T& s0) {
  if (!(s0 > T(0)) || !(params.up > T(0)) || !(params.down > T(0))) throw Error("lattice factors and s0 must be positive");
  if (!(params.up > params.down)) throw Error("lattice needs up factor > down factor");
  std::vector<T> factors{params.up};
  if (params.kind == LatticeKind::trinomial) {
    if (!(params.mid > params.down) || !(params.up > params.mid)) throw Error("trinomial lattice needs up > mid > down");
    factors.push_back(params.mid);
  }
  factors.push_back(params.down);
  return TrajectoryTree<T>::build(s0, horizon, lattice_spec(factors, s0, horizon));
}

template <class T>
TrajectoryTree<T> random_tree(const RandomTreeOptions& options, std::uint64_t seed) {
  if (options.min_branching == 0 || options.min_branching > options.max_branching) {
    throw Error("random tree needs 1 <= min_branching <= max_branching");
  }
  CentSampler rng(seed);
  TreeSpec<long> cents;
  sample_children(rng, options, rng.uniform(100, 200), options.depth, cents);
  TreeSpec<T> spec = cents_to_scalar<T>(cents);
  return TrajectoryTree<T>::build(spec.value, options.depth, spec);
}

template <class T>
ElementaryFunction<T> random_elementary(const TrajectoryTree<T>& tree, const NodePath& node, std::uint64_t seed) {
  CentSampler rng(seed);
  const NodeId at = tree.find(node);
  ElementaryFunction<T> p;
  p.start = tree.depth(at);
  p.node = node;
  p.V = ScalarTraits<T>::from_ratio(rng.uniform(-200, 200), 100);
  p.maturity = p.start == tree.horizon()
                   ? p.start
                   : static_cast<std::size_t>(rng.uniform(static_cast<long>(p.start) + 1, static_cast<long>(tree.horizon())));
  for (NodeId id = at; id < tree.size() && tree.is_descendant(id, at); ++id) {
    if (tree.is_leaf(id) || tree.depth(id) >= p.maturity) continue;
    const long c = rng.uniform(-200, 200);
    if (c != 0) p.H[tree.path(id)] = ScalarTraits<T>::from_ratio(c, 100);
  }
  return p;
}

template <class T>
LeafFunction<T> random_leaf_function(const TrajectoryTree<T>& tree, std::uint64_t seed, long lo_cents, long hi_cents) {
  CentSampler rng(seed);
  LeafFunction<T> f;
  f.reserve(tree.leaf_count());
  for (std::size_t i = 0; i < tree.leaf_count(); ++i) {
    f.emplace_back(ScalarTraits<T>::from_ratio(rng.uniform(lo_cents, hi_cents), 100));
  }
  return f;
}

template <class T>
ContrarianPath<T> contrarian_trajectory(const TrajectoryTree<T>& tree, const NodePath& node,
                                        const std::map<NodePath, T>& holdings, const T& epsilon) {
  if (!(epsilon > T(0))) throw Error("contrarian trajectory needs epsilon > 0");
  ContrarianPath<T> out;
  out.cumulative = T(0);
  NodeId at = tree.find(node);
  T bound = epsilon;
  for (std::size_t i = 0; i <= tree.depth(at); ++i) bound = bound / T(2);
  while (!tree.is_leaf(at)) {
    const NodePath here = tree.path(at);
    const auto it = holdings.find(here);
    const T h = it == holdings.end() ? T(0) : it->second;
    const auto kids = tree.children(at);
    std::size_t pick = 0;
    if (classify_node(tree, at).kind == NodeKind::arbitrage_type1) {
      for (std::size_t c = 0; c < kids.size(); ++c) {
        if (is_zero(tree.increment(kids[c]))) {
          pick = c;
          break;
        }
      }
    } else {
      for (std::size_t c = 1; c < kids.size(); ++c) {
        if (h * tree.increment(kids[c]) < h * tree.increment(kids[pick])) pick = c;
      }
    }
    ContrarianStep<T> step;
    step.node = here;
    step.child = pick;
    step.holding = h;
    step.increment = tree.increment(kids[pick]);
    step.gain = h * step.increment;
    step.bound = bound;
    if (!(step.gain < bound)) {
      throw Error("no contrarian step at node " + here.to_string() + ": smallest gain " + format_scalar(step.gain) +
                  " is not below " + format_scalar(bound));
    }
    out.cumulative += step.gain;
    out.steps.push_back(std::move(step));
    at = kids[pick];
    bound = bound / T(2);
  }
  out.leaf = tree.path(at);
  return out;
}

template <class T>
Accumulated<T> accumulate_portfolios(const TrajectoryTree<T>& tree, const std::vector<ElementaryFunction<T>>& elements,
                                     const ConstraintSet<T>& constraint) {
  if (elements.empty()) throw Error("nothing to accumulate");
  Accumulated<T> out;
  out.sum = elements.front();
  for (std::size_t i = 1; i < elements.size(); ++i) {
    if (!(elements[i].node == out.sum.node) || elements[i].start != out.sum.start) {
      throw Error("portfolio " + std::to_string(i) + " is conditioned on " + elements[i].node.to_string() +
                  ", expected " + out.sum.node.to_string());
    }
    out.sum = linear_combination(T(1), out.sum, T(1), elements[i]);
  }
  std::erase_if(out.sum.H, [](const auto& entry) { return is_zero(entry.second); });
  validate_elementary(tree, out.sum);
  out.admissible = constraint.admits(out.sum, tree);
  return out;
}

template <class T>
std::vector<ElementaryFunction<T>> example1_family(const TrajectoryTree<T>& tree, std::size_t M) {
  if (M > tree.horizon()) throw Error("example 1 family needs M <= horizon");
  std::vector<ElementaryFunction<T>> family;
  for (std::size_t m = 1; m <= M; ++m) {
    ElementaryFunction<T> f;
    f.start = 0;
    f.node = NodePath::root();
    f.V = T(0);
    f.maturity = m;
    f.H[flat_path<T>(m - 1, 1)] = T(1);
    family.push_back(std::move(f));
  }
  return family;
}

template <class T>
Example1Report<T> verify_example1_L_failure(std::size_t M, std::size_t N) {
  if (M == 0 || M > N) throw Error("example 1 check needs 1 <= M <= N");
  const auto tree = gen_example1<T>(N);
  const auto family = example1_family(tree, M);
  Example1Report<T> r;
  r.M = M;
  r.N = N;
  r.total_premium = T(0);
  for (const auto& f : family) r.total_premium += f.V;

  std::vector<LeafFunction<T>> tables;
  for (const auto& f : family) {
    tables.push_back(tabulate_elementary(f, tree));
    for (const auto& v : tables.back()) r.members_nonnegative = r.members_nonnegative && !(v < ExtReal<T>(T(0)));
  }
  auto sum_at = [&](std::size_t pos) {
    T s(0);
    for (const auto& t : tables) s += t[pos].value();
    return s;
  };

  bool first = true;
  for (std::size_t pos = 0; pos < tree.leaf_count(); ++pos) {
    const auto prices = tree.price_path(tree.leaves()[pos]);
    std::size_t jump = 0;
    for (std::size_t i = 1; i < prices.size() && jump == 0; ++i) {
      if (prices[i] == T(2)) jump = i;
    }
    const T s = sum_at(pos);
    if (jump == 0) {
      r.flat_sum = s;
    } else if (jump <= M) {
      ++r.jump_leaves;
      if (s >= T(1)) ++r.dominated_leaves;
      if (first || s < r.min_jump_sum) r.min_jump_sum = s;
      first = false;
    }
  }
  r.domination = r.jump_leaves == M && r.dominated_leaves == M && r.total_premium == T(0);
  r.rfp_violated = r.flat_sum < r.min_jump_sum;
  r.note =
      "each f_m vanishes on the all-ones path while the sum is 1 on every path jumping by time M; as M grows the "
      "jump-by-M leaves exhaust all paths except the all-ones limit, so the premium-0 family superhedges 1 off a "
      "single point and the upper integral of 0 is driven to -infinity";
  return r;
}

template <class T>
std::vector<Example2Selection<T>> example2_selection(const TrajectoryTree<T>& tree, const ElementaryFunction<T>& p) {
  std::vector<Example2Selection<T>> out;
  for (std::size_t n = 1; n <= tree.horizon(); ++n) {
    const NodePath flat = flat_path<T>(n - 1, 2);
    const std::size_t dir = p.holding(flat) <= T(0) ? 0 : 1;
    std::vector<std::size_t> idx(n - 1, 2);
    idx.push_back(dir);
    idx.resize(tree.horizon(), 0);
    Example2Selection<T> s;
    s.n = n;
    s.leaf = NodePath(idx);
    const NodeId leaf = tree.find(s.leaf);
    s.gain = partial_sum(p, tree, leaf, p.maturity) - p.V;
    out.push_back(std::move(s));
  }
  return out;
}

#define TRAJINT_INSTANTIATE(T)                                                                                      \
  template TrajectoryTree<T> gen_example1(std::size_t);                                                             \
  template TrajectoryTree<T> gen_example2(std::size_t);                                                             \
  template TrajectoryTree<T> gen_lattice(const LatticeParams<T>&, std::size_t, const T&);                           \
  template TrajectoryTree<T> random_tree(const RandomTreeOptions&, std::uint64_t);                                  \
  template ElementaryFunction<T> random_elementary(const TrajectoryTree<T>&, const NodePath&, std::uint64_t);        \
  template LeafFunction<T> random_leaf_function(const TrajectoryTree<T>&, std::uint64_t, long, long);               \
  template ContrarianPath<T> contrarian_trajectory(const TrajectoryTree<T>&, const NodePath&,                       \
                                                   const std::map<NodePath, T>&, const T&);                         \
  template Accumulated<T> accumulate_portfolios(const TrajectoryTree<T>&, const std::vector<ElementaryFunction<T>>&, \
                                                const ConstraintSet<T>&);                                           \
  template std::vector<ElementaryFunction<T>> example1_family(const TrajectoryTree<T>&, std::size_t);               \
  template Example1Report<T> verify_example1_L_failure(std::size_t, std::size_t);                                   \
  template std::vector<Example2Selection<T>> example2_selection(const TrajectoryTree<T>&,                           \
                                                                const ElementaryFunction<T>&);

TRAJINT_INSTANTIATE(double)
TRAJINT_INSTANTIATE(Rational)

#undef TRAJINT_INSTANTIATE

}  // namespace trajint
