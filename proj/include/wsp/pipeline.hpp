#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wsp/instance.hpp"
#include "wsp/junction_tree.hpp"
#include "wsp/solution.hpp"

namespace wsp {

// Plain-text run record, one "key value..." line per event. Everything in it
// derives from the inputs and the seed.
class Manifest {
 public:
  void add(std::string line) { lines_.push_back(std::move(line)); }
  const std::vector<std::string>& lines() const { return lines_; }
  std::string text() const;

 private:
  std::vector<std::string> lines_;
};

struct TauSchedule {
  Rational tau0;
  std::vector<Rational> values;  // tau0, 2 tau0, ... up to the first value >= total cost
};

// tau0 is the smallest positive edge cost. Empty when the zero-cost edges
// already resolve every demand.
TauSchedule tau_schedule(const Instance& inst);

// Union over demands of an exact restricted shortest path.
Solution baseline_solution(const Instance& inst);

// Reverse-delete by descending cost (ties by edge id) keeping every demand
// resolved. The result is inclusion-minimal.
Solution prune_solution(const Instance& inst, const Solution& sol);

struct PairwiseOptions {
  double eps = 0.1;
  std::uint64_t seed = 0;
  JtBackend backend = JtBackend::Auto;
  int max_retries = 20;
  // Replaces the doubling schedule when set.
  std::optional<std::vector<Rational>> taus;
  int threads = 1;
};

Solution solve_pairwise(const Instance& inst, const PairwiseOptions& options = {},
                        Manifest* manifest = nullptr);

// Same graph with one demand per ordered reachable pair, bound = d_G.
Instance allpair_instance(const Instance& graph);

struct PreserverOptions {
  std::uint64_t seed = 0;
  JtBackend backend = JtBackend::Auto;
  int max_retries = 20;
};

// Output is a solution for allpair_instance(graph).
Solution solve_allpair_preserver(const Instance& graph, const PreserverOptions& options = {},
                                 Manifest* manifest = nullptr);

// All demands must share one source.
Solution solve_single_source(const Instance& inst, JtBackend backend = JtBackend::Auto,
                             Manifest* manifest = nullptr);

struct OnlineState {
  std::set<int> bought;
  std::vector<Demand> arrivals;
  std::vector<Rational> ledger;            // incremental cost per arrival
  std::vector<std::set<int>> snapshots;    // bought after each arrival
};

struct OnlineResult {
  OnlineState state;
  Instance instance;  // graph with the arrivals as demands
  Solution solution;
};

OnlineResult online_solve(const Instance& graph, const std::vector<Demand>& arrivals,
                          JtBackend backend = JtBackend::Auto, Manifest* manifest = nullptr);

}  // namespace wsp
