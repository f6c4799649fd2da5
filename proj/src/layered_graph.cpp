#include <algorithm>
#include <queue>

#include "wsp/junction_tree.hpp"

namespace wsp {

int LayeredGraph::core_index(int v, int layer) const {
  if (v == root) return layer == 0 ? 0 : -1;
  if (layer == 0 || layer < -(n - 1) || layer > n - 1) return -1;
  // Index 0 is (root, 0); non-root vertices are ranked skipping the root.
  const int rank = v < root ? v : v - 1;
  const int slot = layer < 0 ? layer + (n - 1) : layer + (n - 2);
  return 1 + rank * 2 * (n - 1) + slot;
}

LayeredGraph build_layered_graph(const Instance& inst, int root, const std::vector<int>& demands) {
  for (const auto& e : inst.edges()) {
    if (e.length != 1) {
      throw std::invalid_argument("layered graph needs unit lengths; expand the instance first");
    }
  }
  LayeredGraph g;
  g.root = root;
  g.n = inst.num_vertices();
  const int n = g.n;
  g.core_count = 2 * (n - 1) * (n - 1) + 1;
  g.vertices.resize(g.core_count);
  g.vertices[0] = {LayeredVertex::Kind::Core, root, 0, -1};
  for (int v = 0; v < n; ++v) {
    if (v == root) continue;
    for (int layer = -(n - 1); layer <= n - 1; ++layer) {
      if (layer == 0) continue;
      g.vertices[g.core_index(v, layer)] = {LayeredVertex::Kind::Core, v, layer, -1};
    }
  }
  for (int id = 0; id < inst.num_edges(); ++id) {
    const Edge& e = inst.edge(id);
    for (int layer = -(n - 1); layer < n - 1; ++layer) {
      const int from = g.core_index(e.tail, layer);
      const int to = g.core_index(e.head, layer + 1);
      if (from >= 0 && to >= 0) g.arcs.push_back({from, to, e.cost, id});
    }
  }
  for (int slot = 0; slot < static_cast<int>(demands.size()); ++slot) {
    const Demand& d = inst.demand(demands[slot]);
    LayeredTerminal term;
    term.demand = demands[slot];
    for (int i = 0; i <= n - 1; ++i) {
      const int core = g.core_index(d.source, -i);
      if (core < 0) continue;
      const int copy = static_cast<int>(g.vertices.size());
      g.vertices.push_back({LayeredVertex::Kind::SourceCopy, d.source, -i, slot});
      g.arcs.push_back({copy, core, Rational(0), -1});
      term.source_copies.emplace_back(i, copy);
    }
    for (int j = 0; j <= n - 1; ++j) {
      const int core = g.core_index(d.sink, j);
      if (core < 0) continue;
      const int copy = static_cast<int>(g.vertices.size());
      g.vertices.push_back({LayeredVertex::Kind::SinkCopy, d.sink, j, slot});
      g.arcs.push_back({core, copy, Rational(0), -1});
      term.sink_copies.emplace_back(j, copy);
    }
    for (const auto& [i, sc] : term.source_copies) {
      for (const auto& [j, tc] : term.sink_copies) {
        if (i + j <= d.bound) term.relation.emplace_back(i, j);
      }
    }
    g.terminals.push_back(std::move(term));
  }
  return g;
}

std::vector<std::int64_t> layered_path_counts(const LayeredGraph& g, int from) {
  const int size = static_cast<int>(g.vertices.size());
  std::vector<std::vector<int>> out(size);
  std::vector<int> indegree(size, 0);
  for (const auto& a : g.arcs) {
    out[a.from].push_back(a.to);
    ++indegree[a.to];
  }
  std::queue<int> ready;
  for (int v = 0; v < size; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<std::int64_t> count(size, 0);
  count[from] = 1;
  while (!ready.empty()) {
    const int v = ready.front();
    ready.pop();
    for (int w : out[v]) {
      count[w] += count[v];
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  return count;
}

std::int64_t admissible_connections(const LayeredGraph& g, int slot) {
  const auto& term = g.terminals[slot];
  std::int64_t total = 0;
  for (const auto& [i, sc] : term.source_copies) {
    const auto counts = layered_path_counts(g, sc);
    for (const auto& [j, tc] : term.sink_copies) {
      if (std::find(term.relation.begin(), term.relation.end(), std::pair{i, j}) !=
          term.relation.end()) {
        total += counts[tc];
      }
    }
  }
  return total;
}

ExpandedGraph unit_length_expand(const Instance& inst) {
  std::vector<Edge> edges;
  std::vector<int> origin;
  int next_vertex = inst.num_vertices();
  for (int id = 0; id < inst.num_edges(); ++id) {
    const Edge& e = inst.edge(id);
    const Rational piece = e.cost / e.length;
    int from = e.tail;
    for (int k = 0; k < e.length; ++k) {
      const int to = k + 1 == e.length ? e.head : next_vertex++;
      edges.push_back({from, to, piece, 1});
      origin.push_back(id);
      from = to;
    }
  }
  return {Instance(next_vertex, std::move(edges), inst.demands()), std::move(origin)};
}

}  // namespace wsp
