#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "wsp/constrained_paths.hpp"
#include "wsp/instance.hpp"
#include "wsp/junction_tree.hpp"

namespace wsp {

struct PathColumn {
  int demand = 0;
  std::vector<int> edges;
  Rational cost;  // instance cost of the path
  Length length = 0;
  Rational flow;
};

// Duals of the restricted master at one column-generation round.
struct DualState {
  Rational cover;                          // W, dual of sum y >= ceil(|D|/2)
  std::vector<Rational> pair;              // per demand slot, dual of y <= 1 (sign flipped)
  std::vector<Rational> w;                 // W - pair: the price a new column must beat
  std::map<std::pair<int, int>, Rational> z;  // (slot, edge) -> capacity-row dual (sign flipped)
  Rational objective;                      // dual objective value
};

enum class ThinLpStatus { Feasible, Infeasible };

struct FractionalSolution {
  ThinLpStatus status = ThinLpStatus::Infeasible;
  std::vector<int> demands;  // slot -> demand id
  std::vector<Rational> x;   // per edge
  std::vector<Rational> y;   // per slot
  std::vector<PathColumn> columns;
  Rational objective;
  Rational cost_budget;  // L
  double eps = 0.1;
  int required = 0;  // ceil(|D| / 2)
  // One entry per master solve: (primal objective, dual objective).
  std::vector<std::pair<Rational, Rational>> rounds;
  DualState duals;  // at termination
};

// Largest value <= L that a sum of edge costs can take (costs are multiples
// of 1 / lcm of their denominators).
Rational cost_granularity_floor(const Instance& inst, const Rational& L);

// Column generation for the thin-pair LP over `demands`. The master is solved
// exactly; pricing runs rcsp() with the capacity duals as objective, the
// distance bound as the exact length budget and the instance costs as the
// resource with budget L. `prices` replaces c(e) in the objective (bought
// edges at 0); edges priced 0 carry no capacity rows and get x = 1.
FractionalSolution solve_thin_lp(const Instance& inst, const std::vector<int>& demands,
                                 const Rational& L, double eps, EdgeWeights prices = {});

// min(n^(4/5) ln n, ...) scale factor used by round_thin.
double thin_rounding_factor(int n);
// min(sqrt(n) ln n, ...) scale factor used by round_preserver.
double preserver_rounding_factor(int n);
// Smallest x that is included with certainty: 1 / factor as an exact value.
Rational certain_inclusion_threshold(double factor);

// Independent inclusion with probability min(factor * x_e, 1); one uniform
// draw per edge in id order, so streams line up across calls.
std::set<int> round_with_factor(const std::vector<Rational>& x, double factor, std::uint64_t seed);
std::set<int> round_thin(const FractionalSolution& frac, int n, std::uint64_t seed);

struct ThinStepOptions {
  int max_retries = 20;
  JtBackend backend = JtBackend::Auto;
};

struct ThinStep {
  std::set<int> edges;    // newly bought (not in `bought`)
  std::vector<int> resolved;  // verifier-confirmed subset of the remaining demands
  Rational density;
  bool chose_lp = false;
  std::optional<Rational> k1_density;
  std::optional<Rational> k2_density;
  ThinLpStatus lp_status = ThinLpStatus::Infeasible;
  std::optional<Rational> lp_objective;
  std::vector<Rational> lp_y;  // per remaining demand, when the LP is feasible
  int retries = 0;  // rounding attempts used
};

// One density iteration: K1 is a minimum-density junction tree, K2 a rounded
// LP solution that must resolve ceil(|remaining| / 6) demands within the retry
// cap. The one with the smaller exact density wins (K1 on ties).
ThinStep thin_iteration(const Instance& inst, const std::vector<int>& remaining,
                        const Rational& tau, double eps, std::uint64_t seed,
                        const std::set<int>& bought, ThinStepOptions options = {});

// ---------------------------------------------------------------------------
// Distance preserver LP: min c.x subject to x(A) >= 1 for every anti-spanner.

struct AntiSpannerCut {
  int demand = 0;
  std::vector<int> edges;
  Rational capacity;
};

// Minimum cut separating s from t in the shortest-path (tight) subgraph under
// capacities x. Requires bound == d_G(s, t). Returns the cut when its capacity
// is below 1.
std::optional<AntiSpannerCut> separate_antispanner(const Instance& inst,
                                                   const std::vector<Rational>& x, int demand);

struct PreserverLp {
  std::vector<Rational> x;
  Rational objective;
  std::vector<AntiSpannerCut> cuts;
  int rounds = 0;
};

// Cutting-plane loop over `demands` (every demand when empty). `prices`
// replaces c(e) in the objective.
PreserverLp solve_preserver_lp(const Instance& inst, const std::vector<int>& demands = {},
                               EdgeWeights prices = {});

std::set<int> round_preserver(const std::vector<Rational>& x, int n, std::uint64_t seed);

}  // namespace wsp
