#include "wsp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <string>

#include "wsp/simplex.hpp"

namespace wsp {

namespace {

class Clock {
 public:
  explicit Clock(double limit) : limit_(limit), start_(std::chrono::steady_clock::now()) {}
  void check() const {
    if (limit_ <= 0) return;
    const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start_;
    if (spent.count() > limit_) throw BudgetExceeded("oracle time limit exceeded");
  }

 private:
  double limit_;
  std::chrono::steady_clock::time_point start_;
};

void require_vertices(const Instance& inst, const OracleBudget& budget) {
  if (inst.num_vertices() > budget.max_vertices) {
    throw BudgetExceeded("instance has " + std::to_string(inst.num_vertices()) +
                         " vertices, oracle budget is " + std::to_string(budget.max_vertices));
  }
}

void require_edges(const Instance& inst, int cap) {
  if (inst.num_edges() > cap || inst.num_edges() > 30) {
    throw BudgetExceeded("instance has " + std::to_string(inst.num_edges()) +
                         " edges, oracle budget is " + std::to_string(cap));
  }
}

// Plain label-correcting distances restricted to the edges in `mask`.
void mask_distances(const Instance& inst, std::uint64_t mask, int root, bool reverse,
                    std::vector<Length>& dist) {
  dist.assign(inst.num_vertices(), kUnreachable);
  dist[root] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint64_t bits = mask; bits != 0; bits &= bits - 1) {
      const Edge& e = inst.edge(std::countr_zero(bits));
      const int from = reverse ? e.head : e.tail;
      const int to = reverse ? e.tail : e.head;
      if (dist[from] != kUnreachable && dist[from] + e.length < dist[to]) {
        dist[to] = dist[from] + e.length;
        changed = true;
      }
    }
  }
}

bool feasible_mask(const Instance& inst, std::uint64_t mask, std::vector<Length>& scratch) {
  int last_source = -1;
  for (const Demand& d : inst.demands()) {
    if (d.source != last_source) {
      mask_distances(inst, mask, d.source, false, scratch);
      last_source = d.source;
    }
    if (scratch[d.sink] > d.bound) return false;
  }
  return true;
}

// Lexicographic order of the ascending id sequences of two subsets.
bool lex_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return false;
  const int bit = std::countr_zero(diff);
  if ((a >> bit) & 1) return (b >> (bit + 1)) != 0;
  return (a >> (bit + 1)) == 0;
}

std::set<int> mask_edges(std::uint64_t mask) {
  std::set<int> out;
  for (std::uint64_t bits = mask; bits != 0; bits &= bits - 1) out.insert(std::countr_zero(bits));
  return out;
}

std::vector<Rational> subset_costs(const Instance& inst) {
  const std::uint64_t count = std::uint64_t{1} << inst.num_edges();
  std::vector<Rational> cost(count);
  cost[0] = 0;
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    cost[mask] = cost[mask & (mask - 1)] + inst.edge(std::countr_zero(mask)).cost;
  }
  return cost;
}

}  // namespace

Solution exact_opt(const Instance& inst, const OracleBudget& budget) {
  require_vertices(inst, budget);
  require_edges(inst, budget.max_edges);
  const Clock clock(budget.time_limit_seconds);

  // Demands grouped by source so one distance run serves several of them.
  std::vector<Demand> sorted = inst.demands();
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Demand& a, const Demand& b) { return a.source < b.source; });
  const Instance grouped = inst.with_demands(sorted);

  const auto cost = subset_costs(inst);
  std::vector<std::uint64_t> order(cost.size());
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
    const int c = cmp(cost[a], cost[b]);
    if (c != 0) return c < 0;
    return lex_less(a, b);
  });

  std::vector<Length> scratch;
  std::size_t checked = 0;
  for (std::uint64_t mask : order) {
    if ((++checked & 1023) == 0) clock.check();
    if (!feasible_mask(grouped, mask, scratch)) continue;
    Solution sol;
    sol.total_cost = 0;
    add_edges(sol, inst, mask_edges(mask), Phase::Baseline);
    refresh_achieved(inst, sol);
    return sol;
  }
  throw std::logic_error("validated instance has no feasible subset");
}

std::vector<std::vector<int>> all_simple_paths(const Instance& inst, int s, int t,
                                               const OracleBudget& budget) {
  require_vertices(inst, budget);
  const Clock clock(budget.time_limit_seconds);
  std::vector<std::vector<int>> out;
  if (s == t) {
    out.emplace_back();
    return out;
  }
  std::vector<char> on_path(inst.num_vertices(), 0);
  std::vector<int> edges;
  std::size_t steps = 0;
  auto dfs = [&](auto&& self, int v) -> void {
    if ((++steps & 1023) == 0) clock.check();
    if (v == t) {
      out.push_back(edges);
      return;
    }
    on_path[v] = 1;
    for (int id : inst.out_edges(v)) {
      const int w = inst.edge(id).head;
      if (on_path[w]) continue;
      edges.push_back(id);
      self(self, w);
      edges.pop_back();
    }
    on_path[v] = 0;
  };
  dfs(dfs, s);
  return out;
}

std::vector<std::vector<int>> enumerate_feasible_paths(const Instance& inst, int demand,
                                                       const std::optional<Rational>& cost_budget,
                                                       const OracleBudget& budget) {
  const Demand& d = inst.demand(demand);
  std::vector<std::vector<int>> out;
  for (auto& path : all_simple_paths(inst, d.source, d.sink, budget)) {
    Length length = 0;
    Rational cost = 0;
    for (int id : path) {
      length += inst.edge(id).length;
      cost += inst.edge(id).cost;
    }
    if (length > d.bound) continue;
    if (cost_budget && cost > *cost_budget) continue;
    out.push_back(std::move(path));
  }
  return out;
}

ExactLp exact_lp3(const Instance& inst, const std::vector<int>& demands, const Rational& L,
                  const OracleBudget& budget) {
  const int m = inst.num_edges();
  const int k = static_cast<int>(demands.size());
  const int required = (k + 1) / 2;
  ExactLp out;
  out.value = 0;
  out.x.assign(m, Rational(0));
  out.y.assign(k, Rational(0));

  std::vector<std::vector<std::vector<int>>> paths(k);
  int coverable = 0;
  for (int i = 0; i < k; ++i) {
    paths[i] = enumerate_feasible_paths(inst, demands[i], L, budget);
    if (!paths[i].empty()) ++coverable;
  }
  if (k == 0 || coverable < required) return out;

  // Variables: x_e (m), y_d (k), then one flow per path.
  LinearProgram lp;
  for (int id = 0; id < m; ++id) lp.add_variable(inst.edge(id).cost);
  for (int i = 0; i < k; ++i) lp.add_variable(0);
  std::vector<std::pair<int, int>> flow_vars;  // (demand slot, path index)
  for (int i = 0; i < k; ++i) {
    for (std::size_t p = 0; p < paths[i].size(); ++p) {
      lp.add_variable(0);
      flow_vars.emplace_back(i, static_cast<int>(p));
    }
  }
  auto flow_var = [&](std::size_t index) { return m + k + static_cast<int>(index); };

  LpRow cover;
  cover.sense = RowSense::GreaterEqual;
  cover.rhs = required;
  for (int i = 0; i < k; ++i) cover.coeffs.emplace_back(m + i, 1);
  lp.add_row(cover);
  for (int v = 0; v < m + k; ++v) lp.add_row({{{v, Rational(1)}}, RowSense::LessEqual, Rational(1)});
  for (int i = 0; i < k; ++i) {
    LpRow flow;
    flow.sense = RowSense::Equal;
    flow.rhs = 0;
    for (std::size_t f = 0; f < flow_vars.size(); ++f) {
      if (flow_vars[f].first == i) flow.coeffs.emplace_back(flow_var(f), 1);
    }
    flow.coeffs.emplace_back(m + i, -1);
    lp.add_row(flow);
    for (int id = 0; id < m; ++id) {
      LpRow capacity;
      capacity.sense = RowSense::LessEqual;
      capacity.rhs = 0;
      for (std::size_t f = 0; f < flow_vars.size(); ++f) {
        if (flow_vars[f].first != i) continue;
        const auto& path = paths[i][flow_vars[f].second];
        if (std::find(path.begin(), path.end(), id) != path.end()) {
          capacity.coeffs.emplace_back(flow_var(f), 1);
        }
      }
      if (capacity.coeffs.empty()) continue;
      capacity.coeffs.emplace_back(id, -1);
      lp.add_row(capacity);
    }
  }

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) throw std::logic_error("exact thin LP not optimal");
  out.status = ThinLpStatus::Feasible;
  out.value = sol.objective;
  for (int id = 0; id < m; ++id) out.x[id] = sol.values[id];
  for (int i = 0; i < k; ++i) out.y[i] = sol.values[m + i];
  for (std::size_t f = 0; f < flow_vars.size(); ++f) {
    const auto [slot, p] = flow_vars[f];
    PathColumn col;
    col.demand = slot;
    col.edges = paths[slot][p];
    col.cost = 0;
    for (int id : col.edges) {
      col.cost += inst.edge(id).cost;
      col.length += inst.edge(id).length;
    }
    col.flow = sol.values[flow_var(f)];
    out.columns.push_back(std::move(col));
  }
  return out;
}

JunctionTree exact_min_density_jt(const Instance& inst, const std::vector<int>& demands,
                                  const OracleBudget& budget) {
  require_vertices(inst, budget);
  require_edges(inst, budget.max_jt_edges);
  const Clock clock(budget.time_limit_seconds);
  const int n = inst.num_vertices();
  const auto cost = subset_costs(inst);

  std::vector<std::uint64_t> touching(n, 0);
  for (int id = 0; id < inst.num_edges(); ++id) {
    touching[inst.edge(id).tail] |= std::uint64_t{1} << id;
    touching[inst.edge(id).head] |= std::uint64_t{1} << id;
  }

  bool found = false;
  Rational best_density;
  std::uint64_t best_mask = 0;
  int best_root = -1;
  std::vector<int> best_satisfied;
  std::vector<Length> into;
  std::vector<Length> out_of;
  std::vector<int> satisfied;
  for (std::uint64_t mask = 1; mask < cost.size(); ++mask) {
    if ((mask & 1023) == 0) clock.check();
    for (int r = 0; r < n; ++r) {
      if ((mask & touching[r]) == 0) continue;
      mask_distances(inst, mask, r, true, into);
      mask_distances(inst, mask, r, false, out_of);
      satisfied.clear();
      for (int id : demands) {
        const Demand& d = inst.demand(id);
        if (into[d.source] == kUnreachable || out_of[d.sink] == kUnreachable) continue;
        if (into[d.source] + out_of[d.sink] <= d.bound) satisfied.push_back(id);
      }
      if (satisfied.empty()) continue;
      Rational density = cost[mask] / static_cast<long>(satisfied.size());
      bool better = !found || density < best_density;
      if (!better && density == best_density) {
        const int pa = std::popcount(mask);
        const int pb = std::popcount(best_mask);
        if (satisfied.size() != best_satisfied.size()) {
          better = satisfied.size() > best_satisfied.size();
        } else {
          better = pa < pb || (pa == pb && (r < best_root || (r == best_root && lex_less(mask, best_mask))));
        }
      }
      if (better) {
        found = true;
        best_density = std::move(density);
        best_mask = mask;
        best_root = r;
        best_satisfied = satisfied;
      }
    }
  }
  if (!found) throw NoneSatisfiable("no root routes any demand within its bound");
  JunctionTree jt;
  jt.root = best_root;
  jt.edges = mask_edges(best_mask);
  jt.satisfied = std::move(best_satisfied);
  jt.cost = cost[best_mask];
  jt.density = best_density;
  return jt;
}

}  // namespace wsp
