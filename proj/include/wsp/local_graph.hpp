#pragma once

#include <optional>
#include <set>
#include <vector>

#include "wsp/instance.hpp"

namespace wsp {

// Vertices and edges lying on some source->sink walk that is feasible
// (length <= bound) and cheap (cost <= the budget it was built with).
struct LocalGraph {
  int demand = 0;
  std::set<int> vertices;
  std::set<int> edges;
};

// Exact membership from a forward and a backward (vertex, length) table.
// A missing budget means "no cost restriction".
LocalGraph local_graph(const Instance& inst, int demand, const std::optional<Rational>& budget);

struct Classification {
  std::vector<int> thick;
  std::vector<int> thin;
  double beta = 0;
  // Vertex-count threshold: thick iff |V^{s,t}| >= threshold = ceil(n / beta).
  int threshold = 0;
  std::optional<Rational> cost_budget;
};

// n^p with results within 1e-9 (relative) of an integer snapped to it, so
// that e.g. 32^(4/5) is exactly 16.
double snapped_pow(double base, double exponent);

// Pairwise regime: beta = n^(3/5), L = tau / n^(4/5).
Classification classify_pairs(const Instance& inst, const Rational& tau);

// Classification over a chosen subset with explicit beta and budget.
Classification classify_with(const Instance& inst, const std::vector<int>& demands, double beta,
                             const std::optional<Rational>& budget);

}  // namespace wsp
