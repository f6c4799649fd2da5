#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wsp/instance.hpp"

namespace wsp {

// Which solver stage bought an edge.
enum class Phase { Thick, Junction, LpRound, Baseline, Online };

const char* to_string(Phase phase);
std::optional<Phase> parse_phase(std::string_view name);

struct Solution {
  std::set<int> edges;
  Rational total_cost;
  // Attained distance per demand; nullopt means unresolved. Filled by
  // refresh_achieved() from the verifier, never by a producer directly.
  std::map<int, std::optional<Length>> achieved;
  std::map<int, Phase> phases;

  bool contains(int edge) const { return edges.count(edge) != 0; }
};

// Adds edges not already present, tagging them with `phase`; keeps
// total_cost exact.
template <typename Range>
void add_edges(Solution& sol, const Instance& inst, const Range& ids, Phase phase) {
  for (int id : ids) {
    if (sol.edges.insert(id).second) {
      sol.total_cost += inst.edge(id).cost;
      sol.phases.emplace(id, phase);
    }
  }
}

void remove_edge(Solution& sol, const Instance& inst, int id);

std::vector<char> edge_mask(const Instance& inst, const std::set<int>& edges);

struct DemandCheck {
  int demand = 0;
  Length attained = kUnreachable;
  bool resolved = false;
};

struct VerifyReport {
  std::vector<DemandCheck> demands;
  Rational total_cost;
  bool all_resolved = true;

  int resolved_count() const;
};

// Recomputes attained distances on the subgraph formed by `edges`.
VerifyReport verify_edges(const Instance& inst, const std::set<int>& edges);
VerifyReport verify_solution(const Instance& inst, const Solution& sol);

// Demand ids in `candidates` resolved by `edges`.
std::vector<int> resolved_demands(const Instance& inst, const std::set<int>& edges,
                                  const std::vector<int>& candidates);

void refresh_achieved(const Instance& inst, Solution& sol);

Rational edge_set_cost(const Instance& inst, const std::set<int>& edges);

// Text report: sorted edge ids, exact cost as p/q, per-demand distances.
std::string write_solution(const Instance& inst, const Solution& sol);
// Reads the edge ids (and phase tags when present) back. Cost and distances
// are recomputed against `inst`; throws InstanceError(Syntax) on bad input.
Solution parse_solution(std::string_view text, const Instance& inst);

}  // namespace wsp
