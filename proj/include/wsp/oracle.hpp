#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "wsp/instance.hpp"
#include "wsp/junction_tree.hpp"
#include "wsp/solution.hpp"
#include "wsp/thin_lp.hpp"

namespace wsp {

// Limits checked before any enumeration starts.
struct OracleBudget {
  int max_edges = 14;     // subset enumeration
  int max_jt_edges = 16;  // junction-tree enumeration
  int max_vertices = 8;
  double time_limit_seconds = 0;  // 0 disables the clock
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minimum-cost feasible edge set: subsets in nondecreasing cost order, ties by
// lexicographic edge-id sequence, first feasible wins.
Solution exact_opt(const Instance& inst, const OracleBudget& budget = {});

// Every simple s -> t path as an edge-id sequence, in DFS order over
// ascending edge ids.
std::vector<std::vector<int>> all_simple_paths(const Instance& inst, int s, int t,
                                               const OracleBudget& budget = {});

// Simple paths of a demand with length <= bound and, when given, cost <= budget.
std::vector<std::vector<int>> enumerate_feasible_paths(const Instance& inst, int demand,
                                                       const std::optional<Rational>& cost_budget,
                                                       const OracleBudget& budget = {});

struct ExactLp {
  ThinLpStatus status = ThinLpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;  // per edge
  std::vector<Rational> y;  // per listed demand
  std::vector<PathColumn> columns;
};

// The thin-pair LP over every enumerated cheap feasible path.
ExactLp exact_lp3(const Instance& inst, const std::vector<int>& demands, const Rational& L,
                  const OracleBudget& budget = {});

// Global minimum density over roots and edge subsets (instance costs). Ties:
// more satisfied demands, fewer edges, smaller root, lexicographic edge ids.
// Throws NoneSatisfiable when no demand can be routed through any root.
JunctionTree exact_min_density_jt(const Instance& inst, const std::vector<int>& demands,
                                  const OracleBudget& budget = {});

}  // namespace wsp
