#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "wsp/constrained_paths.hpp"
#include "wsp/instance.hpp"
#include "wsp/solution.hpp"

namespace wsp {

// Edge set routing every `satisfied` demand s -> root -> t within its bound.
// `cost` is measured under the prices the tree was searched with.
struct JunctionTree {
  int root = 0;
  std::set<int> edges;
  std::vector<int> satisfied;
  Rational cost;
  Rational density;
};

class ExactCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoneSatisfiable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class JtBackend { Exact, Greedy, Auto };

struct JtOptions {
  // Per-edge prices (bought edges at 0); empty means the instance costs.
  EdgeWeights prices;
  // Candidate roots; empty means every vertex.
  std::vector<int> roots;
  // Edge-count cap for the exhaustive backend.
  int exact_cap = 16;
  // Auto picks the exhaustive backend up to this many edges.
  int auto_exact_edges = 10;
};

// Demands among `candidates` whose s -> root -> t distance inside `mask` is
// within bound.
std::vector<int> satisfied_through_root(const Instance& inst, EdgeMask mask, int root,
                                        const std::vector<int>& candidates);

// Global minimum of price(F) / |satisfied through r| over roots and edge
// subsets; equal densities prefer more satisfied demands. nullopt when no root
// connects any active demand; throws ExactCapExceeded above options.exact_cap edges.
std::optional<JunctionTree> min_density_jt_exact(const Instance& inst,
                                                 const std::vector<int>& active,
                                                 const JtOptions& options = {});

// Per root: best budget-split connection per demand, demands sorted by that
// cost, every prefix scored by the true price of its edge union.
std::optional<JunctionTree> min_density_jt_greedy(const Instance& inst,
                                                  const std::vector<int>& active,
                                                  const JtOptions& options = {});

std::optional<JunctionTree> min_density_jt(const Instance& inst, const std::vector<int>& active,
                                           JtBackend backend, const JtOptions& options = {});

struct CoverResult {
  Solution solution;
  std::vector<JunctionTree> trees;  // one per iteration
};

// Repeatedly buys a minimum-density tree over the still-unresolved demands
// (already bought edges priced 0) until every demand is resolved.
CoverResult greedy_jt_cover(const Instance& inst, const std::vector<int>& demands,
                            JtBackend backend, const JtOptions& options = {});

// ---------------------------------------------------------------------------
// Layered graph G_r for a unit-length graph.

struct LayeredVertex {
  enum class Kind { Core, SourceCopy, SinkCopy };
  Kind kind = Kind::Core;
  int vertex = 0;  // original vertex
  int layer = 0;
  int slot = -1;   // terminal slot for copies
};

struct LayeredArc {
  int from = 0;
  int to = 0;
  Rational weight;
  int original_edge = -1;  // -1 for zero-weight terminal attachments
};

struct LayeredTerminal {
  int demand = 0;
  std::vector<std::pair<int, int>> source_copies;  // (i, vertex) for (s-, -i)
  std::vector<std::pair<int, int>> sink_copies;    // (j, vertex) for (t+, j)
  std::vector<std::pair<int, int>> relation;       // admissible (i, j): i + j <= bound
};

struct LayeredGraph {
  int root = 0;
  int n = 0;
  int core_count = 0;
  std::vector<LayeredVertex> vertices;
  std::vector<LayeredArc> arcs;
  std::vector<LayeredTerminal> terminals;

  // Index of core vertex (v, layer), or -1 when it does not exist.
  int core_index(int v, int layer) const;
};

// Requires unit edge lengths (run unit_length_expand first otherwise).
LayeredGraph build_layered_graph(const Instance& inst, int root, const std::vector<int>& demands);

// Number of distinct paths from `from` to every vertex of the DAG.
std::vector<std::int64_t> layered_path_counts(const LayeredGraph& g, int from);

// Sum over the relation of copy-to-copy path counts for one terminal slot.
std::int64_t admissible_connections(const LayeredGraph& g, int slot);

struct ExpandedGraph {
  Instance instance;
  std::vector<int> origin;  // expanded edge id -> original edge id
};

// Every edge of length l becomes a chain of l unit edges of cost c / l.
ExpandedGraph unit_length_expand(const Instance& inst);

}  // namespace wsp
