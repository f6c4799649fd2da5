#include "wsp/generator.hpp"

#include <utility>
#include <vector>

#include "wsp/random.hpp"

namespace wsp {

Instance gen_random_instance(const GeneratorParams& params, std::uint64_t seed) {
  if (params.n < 1 || params.max_length < 1 || params.demands < 0 || params.cost_min < 0 ||
      params.cost_max < params.cost_min || params.edge_probability < 0 ||
      params.edge_probability > 1) {
    throw std::invalid_argument("invalid generator parameters");
  }
  if (params.slack < 1) throw std::invalid_argument("slack must be >= 1");

  Rng rng(seed);
  std::vector<Edge> edges;
  for (int u = 0; u < params.n; ++u) {
    for (int v = 0; v < params.n; ++v) {
      if (u == v) continue;
      if (rng.uniform01() >= params.edge_probability) continue;
      Edge e;
      e.tail = u;
      e.head = v;
      e.cost = Rational(rng.uniform_int(params.cost_min, params.cost_max));
      e.length = static_cast<int>(rng.uniform_int(1, params.max_length));
      edges.push_back(std::move(e));
    }
  }
  Instance graph(params.n, edges, {});

  std::vector<std::pair<int, int>> reachable;
  std::vector<std::vector<Length>> dist(params.n);
  for (int u = 0; u < params.n; ++u) {
    dist[u] = shortest_lengths(graph, u);
    for (int v = 0; v < params.n; ++v) {
      if (u != v && dist[u][v] != kUnreachable) reachable.emplace_back(u, v);
    }
  }
  if (static_cast<int>(reachable.size()) < params.demands) {
    throw GenerationError("RequestedDemandsUnreachable: only " + std::to_string(reachable.size()) +
                          " reachable pairs");
  }
  // Partial Fisher-Yates over the reachable pairs.
  std::vector<Demand> demands;
  for (int i = 0; i < params.demands; ++i) {
    const auto j = static_cast<std::size_t>(
        rng.uniform_int(i, static_cast<std::int64_t>(reachable.size()) - 1));
    std::swap(reachable[i], reachable[j]);
    const auto [s, t] = reachable[i];
    const Rational scaled = params.slack * Rational(dist[s][t]);
    demands.push_back({s, t, ceil_to_int(scaled)});
  }
  return Instance(params.n, std::move(edges), std::move(demands));
}

}  // namespace wsp
