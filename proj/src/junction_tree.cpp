#include "wsp/junction_tree.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace wsp {

namespace {

const Rational& price_of(const Instance& inst, EdgeWeights prices, int id) {
  return prices.empty() ? inst.edge(id).cost : prices[id];
}

std::vector<int> candidate_roots(const Instance& inst, const JtOptions& options) {
  if (!options.roots.empty()) return options.roots;
  std::vector<int> roots(inst.num_vertices());
  std::iota(roots.begin(), roots.end(), 0);
  return roots;
}

// Prices rescaled to integers by the common denominator.
struct IntegerPrices {
  std::vector<std::int64_t> value;
  mpz_class denominator = 1;
};

IntegerPrices integer_prices(const Instance& inst, EdgeWeights prices) {
  IntegerPrices out;
  for (int id = 0; id < inst.num_edges(); ++id) {
    mpz_lcm(out.denominator.get_mpz_t(), out.denominator.get_mpz_t(),
            price_of(inst, prices, id).get_den_mpz_t());
  }
  for (int id = 0; id < inst.num_edges(); ++id) {
    const Rational scaled = price_of(inst, prices, id) * out.denominator;
    const mpz_class& num = scaled.get_num();
    if (!num.fits_slong_p() || num > (mpz_class(1) << 40)) {
      throw std::overflow_error("edge prices too large for exhaustive search");
    }
    out.value.push_back(num.get_si());
  }
  return out;
}

// Lengths within a subgraph given as a bitmask over at most 63 edges.
struct MaskGraph {
  struct Arc {
    int tail;
    int head;
    Length length;
  };
  std::vector<Arc> arcs;
  int n;

  // Bellman-Ford style relaxation; tiny graphs only.
  void distances(std::uint64_t mask, int root, bool reverse, std::vector<Length>& dist) const {
    dist.assign(n, kUnreachable);
    dist[root] = 0;
    for (int round = 0; round < n; ++round) {
      bool changed = false;
      for (std::uint64_t bits = mask; bits != 0; bits &= bits - 1) {
        const Arc& a = arcs[std::countr_zero(bits)];
        const int from = reverse ? a.head : a.tail;
        const int to = reverse ? a.tail : a.head;
        if (dist[from] != kUnreachable && dist[from] + a.length < dist[to]) {
          dist[to] = dist[from] + a.length;
          changed = true;
        }
      }
      if (!changed) break;
    }
  }
};

JunctionTree make_tree(const Instance& inst, EdgeWeights prices, int root, std::set<int> edges,
                       std::vector<int> satisfied) {
  JunctionTree jt;
  jt.root = root;
  jt.cost = 0;
  for (int id : edges) jt.cost += price_of(inst, prices, id);
  jt.edges = std::move(edges);
  jt.satisfied = std::move(satisfied);
  jt.density = jt.cost / static_cast<long>(jt.satisfied.size());
  return jt;
}

}  // namespace

std::vector<int> satisfied_through_root(const Instance& inst, EdgeMask mask, int root,
                                        const std::vector<int>& candidates) {
  const auto to_root = shortest_lengths(inst, root, mask, /*reverse=*/true);
  const auto from_root = shortest_lengths(inst, root, mask, /*reverse=*/false);
  std::vector<int> out;
  for (int id : candidates) {
    const Demand& d = inst.demand(id);
    if (to_root[d.source] == kUnreachable || from_root[d.sink] == kUnreachable) continue;
    if (to_root[d.source] + from_root[d.sink] <= d.bound) out.push_back(id);
  }
  return out;
}

std::optional<JunctionTree> min_density_jt_exact(const Instance& inst,
                                                 const std::vector<int>& active,
                                                 const JtOptions& options) {
  const int m = inst.num_edges();
  if (m > options.exact_cap || m > 30) {
    throw ExactCapExceeded("exhaustive junction tree search capped at " +
                           std::to_string(options.exact_cap) + " edges, instance has " +
                           std::to_string(m));
  }
  if (active.empty()) return std::nullopt;
  const auto prices = integer_prices(inst, options.prices);
  const auto roots = candidate_roots(inst, options);

  MaskGraph graph{{}, inst.num_vertices()};
  for (const auto& e : inst.edges()) graph.arcs.push_back({e.tail, e.head, e.length});

  const std::uint64_t subsets = std::uint64_t{1} << m;
  std::vector<std::int64_t> cost(subsets, 0);
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    cost[mask] = cost[mask & (mask - 1)] + prices.value[std::countr_zero(mask)];
  }
  std::vector<std::uint32_t> order(subsets - 1);
  std::iota(order.begin(), order.end(), 1u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (cost[a] != cost[b]) return cost[a] < cost[b];
    const int pa = std::popcount(a);
    const int pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return a < b;
  });

  const auto k = static_cast<std::int64_t>(active.size());
  std::int64_t best_cost = 0;
  std::int64_t best_count = 0;
  int best_popcount = 0;
  std::uint64_t best_mask = 0;
  int best_root = -1;
  std::vector<Length> to_root;
  std::vector<Length> from_root;
  for (std::uint32_t mask : order) {
    // Every later subset costs at least this much and satisfies at most k
    // demands, so its density cannot beat the incumbent.
    if (best_root >= 0 && cost[mask] * best_count > best_cost * k) break;
    for (int r : roots) {
      graph.distances(mask, r, true, to_root);
      graph.distances(mask, r, false, from_root);
      std::int64_t count = 0;
      for (int id : active) {
        const Demand& d = inst.demand(id);
        if (to_root[d.source] != kUnreachable && from_root[d.sink] != kUnreachable &&
            to_root[d.source] + from_root[d.sink] <= d.bound) {
          ++count;
        }
      }
      if (count == 0) continue;
      const int pc = std::popcount(mask);
      bool better = best_root < 0;
      if (!better) {
        const std::int64_t lhs = cost[mask] * best_count;
        const std::int64_t rhs = best_cost * count;
        // Equal densities: more demands first, then the earlier (cheaper,
        // then smaller) subset and, within a subset, the smaller root.
        better = lhs < rhs ||
                 (lhs == rhs && (count > best_count || (count == best_count && pc < best_popcount)));
      }
      if (better) {
        best_cost = cost[mask];
        best_count = count;
        best_popcount = pc;
        best_mask = mask;
        best_root = r;
      }
    }
  }
  if (best_root < 0) return std::nullopt;
  std::set<int> edges;
  for (std::uint64_t bits = best_mask; bits != 0; bits &= bits - 1) edges.insert(std::countr_zero(bits));
  const auto mask = edge_mask(inst, edges);
  auto satisfied = satisfied_through_root(inst, EdgeMask(mask.data(), mask.size()), best_root, active);
  return make_tree(inst, options.prices, best_root, std::move(edges), std::move(satisfied));
}

std::optional<JunctionTree> min_density_jt_greedy(const Instance& inst,
                                                  const std::vector<int>& active,
                                                  const JtOptions& options) {
  if (active.empty()) return std::nullopt;
  Length max_bound = 0;
  for (int id : active) max_bound = std::max(max_bound, inst.demand(id).bound);
  const Length cap = std::min(max_bound, path_length_cap(inst));

  std::optional<JunctionTree> best;
  using Dir = CostLengthTable::Direction;
  for (int r : candidate_roots(inst, options)) {
    const CostLengthTable into(inst, r, Dir::ToAnchor, cap, options.prices);
    const CostLengthTable out_of(inst, r, Dir::FromAnchor, cap, options.prices);

    struct Route {
      int demand;
      Rational cost;
      std::vector<int> edges;
    };
    std::vector<Route> routes;
    Rational total;
    for (int id : active) {
      const Demand& d = inst.demand(id);
      const Length bound = std::min(d.bound, cap);
      std::optional<Length> split;
      Rational split_cost;
      for (Length l1 = 0; l1 <= bound; ++l1) {
        auto head = into.at_most(d.source, l1);
        auto tail = out_of.at_most(d.sink, bound - l1);
        if (!head || !tail) continue;
        total = *head + *tail;
        if (!split || total < split_cost) {
          split = l1;
          split_cost = total;
        }
      }
      if (!split) continue;
      Route route{id, split_cost, into.walk(d.source, *split)};
      auto tail = out_of.walk(d.sink, bound - *split);
      route.edges.insert(route.edges.end(), tail.begin(), tail.end());
      routes.push_back(std::move(route));
    }
    std::stable_sort(routes.begin(), routes.end(),
                     [](const Route& a, const Route& b) { return a.cost < b.cost; });

    std::set<int> edges;
    for (const Route& route : routes) {
      edges.insert(route.edges.begin(), route.edges.end());
      const auto mask = edge_mask(inst, edges);
      auto satisfied = satisfied_through_root(inst, EdgeMask(mask.data(), mask.size()), r, active);
      if (satisfied.empty()) continue;
      Rational cost = 0;
      for (int id : edges) cost += price_of(inst, options.prices, id);
      bool better = !best;
      if (!better) {
        const Rational lhs = cost * static_cast<long>(best->satisfied.size());
        const Rational rhs = best->cost * static_cast<long>(satisfied.size());
        better = lhs < rhs ||
                 (lhs == rhs && (satisfied.size() > best->satisfied.size() ||
                                 (satisfied.size() == best->satisfied.size() &&
                                  edges.size() < best->edges.size())));
      }
      if (better) best = make_tree(inst, options.prices, r, edges, std::move(satisfied));
    }
  }
  return best;
}

std::optional<JunctionTree> min_density_jt(const Instance& inst, const std::vector<int>& active,
                                           JtBackend backend, const JtOptions& options) {
  switch (backend) {
    case JtBackend::Exact: return min_density_jt_exact(inst, active, options);
    case JtBackend::Greedy: return min_density_jt_greedy(inst, active, options);
    case JtBackend::Auto:
      if (inst.num_edges() <= std::min(options.auto_exact_edges, options.exact_cap)) {
        return min_density_jt_exact(inst, active, options);
      }
      return min_density_jt_greedy(inst, active, options);
  }
  return std::nullopt;
}

CoverResult greedy_jt_cover(const Instance& inst, const std::vector<int>& demands,
                            JtBackend backend, const JtOptions& options) {
  CoverResult result;
  result.solution.total_cost = 0;
  std::vector<int> remaining = demands;
  std::sort(remaining.begin(), remaining.end());
  std::vector<Rational> prices(inst.num_edges());
  for (int id = 0; id < inst.num_edges(); ++id) prices[id] = price_of(inst, options.prices, id);

  auto unresolved = [&] {
    const auto done = resolved_demands(inst, result.solution.edges, remaining);
    std::vector<int> left;
    std::set_difference(remaining.begin(), remaining.end(), done.begin(), done.end(),
                        std::back_inserter(left));
    return left;
  };
  remaining = unresolved();
  while (!remaining.empty()) {
    JtOptions step = options;
    step.prices = EdgeWeights(prices.data(), prices.size());
    auto tree = min_density_jt(inst, remaining, backend, step);
    if (!tree) throw NoneSatisfiable("no junction tree satisfies any remaining demand");
    add_edges(result.solution, inst, tree->edges, Phase::Junction);
    for (int id : tree->edges) prices[id] = 0;
    result.trees.push_back(std::move(*tree));
    remaining = unresolved();
  }
  refresh_achieved(inst, result.solution);
  return result;
}

}  // namespace wsp
