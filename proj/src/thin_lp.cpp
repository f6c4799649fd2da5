#include "wsp/thin_lp.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>

#include "wsp/local_graph.hpp"
#include "wsp/max_flow.hpp"
#include "wsp/random.hpp"
#include "wsp/simplex.hpp"
#include "wsp/solution.hpp"

namespace wsp {

namespace {

Rational price_of(const Instance& inst, EdgeWeights prices, int id) {
  return prices.empty() ? inst.edge(id).cost : prices[id];
}

Rational set_price(const Instance& inst, EdgeWeights prices, const std::set<int>& edges) {
  Rational total = 0;
  for (int id : edges) total += price_of(inst, prices, id);
  return total;
}

}  // namespace

Rational cost_granularity_floor(const Instance& inst, const Rational& L) {
  mpz_class q = 1;
  for (const Edge& e : inst.edges()) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), e.cost.get_den_mpz_t());
  const Rational scaled = L * q;
  mpz_class whole;
  mpz_fdiv_q(whole.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational out(whole, q);
  out.canonicalize();
  return out;
}

FractionalSolution solve_thin_lp(const Instance& inst, const std::vector<int>& demands,
                                 const Rational& L, double eps, EdgeWeights prices) {
  if (demands.empty()) throw std::invalid_argument("solve_thin_lp needs at least one demand");
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  const int m = inst.num_edges();
  const int k = static_cast<int>(demands.size());

  FractionalSolution frac;
  frac.demands = demands;
  frac.cost_budget = L;
  frac.eps = eps;
  frac.required = (k + 1) / 2;
  frac.x.assign(m, Rational(0));
  frac.y.assign(k, Rational(0));
  frac.objective = 0;

  // Path costs are multiples of 1/q, so snapping the budget down to that grid
  // and keeping the bucket width below 1/(2qn) makes the resource test exact:
  // every column is a feasible path of cost <= L.
  const Rational Z = cost_granularity_floor(inst, L);
  double pricing_eps = eps;
  if (sgn(Z) > 0) {
    const double q = Z.get_den().get_d();
    pricing_eps = std::min(eps, 1.0 / (4.0 * q * Z.get_d()));
  }

  std::vector<PathColumn> columns;
  int coverable = 0;
  for (int slot = 0; slot < k; ++slot) {
    const Demand& d = inst.demand(demands[slot]);
    auto path = rcsp(inst, d.source, d.sink, d.bound, {}, {}, Z, pricing_eps);
    if (!path) continue;
    ++coverable;
    columns.push_back({slot, path->edges, path->cost, path->length, Rational(0)});
  }
  if (coverable < frac.required) {
    frac.status = ThinLpStatus::Infeasible;
    return frac;
  }

  std::vector<char> priced(m, 0);
  for (int id = 0; id < m; ++id) priced[id] = sgn(price_of(inst, prices, id)) > 0;

  for (;;) {
    // Capacity rows exist only for (slot, edge) pairs some column uses.
    std::map<std::pair<int, int>, int> capacity_row;
    std::map<int, int> x_var;
    LinearProgram lp;
    for (std::size_t c = 0; c < columns.size(); ++c) lp.add_variable(0);
    for (const PathColumn& col : columns) {
      for (int id : col.edges) {
        if (!priced[id] || x_var.count(id)) continue;
        x_var[id] = lp.add_variable(price_of(inst, prices, id));
      }
    }
    LpRow cover;
    cover.sense = RowSense::GreaterEqual;
    cover.rhs = frac.required;
    for (std::size_t c = 0; c < columns.size(); ++c) cover.coeffs.emplace_back(static_cast<int>(c), 1);
    lp.add_row(cover);
    for (int slot = 0; slot < k; ++slot) {
      LpRow row;
      row.rhs = 1;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].demand == slot) row.coeffs.emplace_back(static_cast<int>(c), 1);
      }
      lp.add_row(row);
    }
    std::map<std::pair<int, int>, std::vector<int>> uses;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      for (int id : columns[c].edges) {
        if (priced[id]) uses[{columns[c].demand, id}].push_back(static_cast<int>(c));
      }
    }
    for (const auto& [key, cols] : uses) {
      LpRow row;
      row.rhs = 0;
      for (int c : cols) row.coeffs.emplace_back(c, 1);
      row.coeffs.emplace_back(x_var.at(key.second), -1);
      capacity_row[key] = lp.add_row(row);
    }

    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) throw std::logic_error("restricted master not optimal");

    DualState duals;
    duals.cover = sol.duals[0];
    duals.pair.resize(k);
    duals.w.resize(k);
    duals.objective = 0;
    for (std::size_t r = 0; r < lp.rows.size(); ++r) duals.objective += lp.rows[r].rhs * sol.duals[r];
    for (int slot = 0; slot < k; ++slot) {
      duals.pair[slot] = -sol.duals[1 + slot];
      duals.w[slot] = duals.cover - duals.pair[slot];
    }
    for (const auto& [key, row] : capacity_row) duals.z[key] = -sol.duals[row];
    if (duals.objective > sol.objective) throw std::logic_error("weak duality violated in master");
    frac.rounds.emplace_back(sol.objective, duals.objective);

    bool added = false;
    std::vector<Rational> z(m);
    for (int slot = 0; slot < k; ++slot) {
      if (sgn(duals.w[slot]) <= 0) continue;  // z >= 0, so nothing can beat it
      std::fill(z.begin(), z.end(), Rational(0));
      for (const auto& [key, value] : duals.z) {
        if (key.first == slot) z[key.second] = value;
      }
      const Demand& d = inst.demand(demands[slot]);
      auto path = rcsp(inst, d.source, d.sink, d.bound, EdgeWeights(z.data(), z.size()), {}, Z,
                       pricing_eps);
      if (!path || path->cost >= duals.w[slot]) continue;
      for (const PathColumn& col : columns) {
        if (col.demand == slot && col.edges == path->edges) {
          throw std::logic_error("pricing returned an existing column");
        }
      }
      columns.push_back({slot, path->edges, *path->price, path->length, Rational(0)});
      added = true;
    }

    if (!added) {
      frac.status = ThinLpStatus::Feasible;
      frac.objective = sol.objective;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        columns[c].flow = sol.values[c];
        frac.y[columns[c].demand] += sol.values[c];
      }
      for (const auto& [id, var] : x_var) frac.x[id] = sol.values[var];
      for (int id = 0; id < m; ++id) {
        if (!priced[id]) frac.x[id] = 1;
      }
      frac.columns = std::move(columns);
      frac.duals = std::move(duals);
      return frac;
    }
  }
}

double thin_rounding_factor(int n) {
  if (n <= 1) return 0;
  return snapped_pow(n, 4.0 / 5.0) * std::log(static_cast<double>(n));
}

double preserver_rounding_factor(int n) {
  if (n <= 1) return 0;
  return std::sqrt(static_cast<double>(n)) * std::log(static_cast<double>(n));
}

Rational certain_inclusion_threshold(double factor) {
  if (!(factor > 0)) throw std::invalid_argument("rounding factor must be positive");
  return 1 / from_double(factor);
}

std::set<int> round_with_factor(const std::vector<Rational>& x, double factor, std::uint64_t seed) {
  Rng rng(seed);
  std::set<int> out;
  const bool usable = factor > 0;
  const Rational threshold = usable ? certain_inclusion_threshold(factor) : Rational(0);
  for (std::size_t id = 0; id < x.size(); ++id) {
    const double u = rng.uniform01();
    if (!usable || sgn(x[id]) <= 0) continue;
    if (x[id] >= threshold) {
      out.insert(static_cast<int>(id));
      continue;
    }
    if (u < factor * x[id].get_d()) out.insert(static_cast<int>(id));
  }
  return out;
}

std::set<int> round_thin(const FractionalSolution& frac, int n, std::uint64_t seed) {
  return round_with_factor(frac.x, thin_rounding_factor(n), seed);
}

ThinStep thin_iteration(const Instance& inst, const std::vector<int>& remaining,
                        const Rational& tau, double eps, std::uint64_t seed,
                        const std::set<int>& bought, ThinStepOptions options) {
  if (remaining.empty()) throw std::invalid_argument("thin_iteration needs remaining demands");
  const int m = inst.num_edges();
  std::vector<Rational> prices(m);
  for (int id = 0; id < m; ++id) prices[id] = bought.count(id) ? Rational(0) : inst.edge(id).cost;
  const EdgeWeights price_span(prices.data(), prices.size());

  auto resolved_with = [&](const std::set<int>& extra) {
    std::set<int> all = bought;
    all.insert(extra.begin(), extra.end());
    return resolved_demands(inst, all, remaining);
  };

  ThinStep step;

  std::optional<ThinStep> k1;
  JtOptions jt;
  jt.prices = price_span;
  if (auto tree = min_density_jt(inst, remaining, options.backend, jt)) {
    ThinStep s;
    for (int id : tree->edges) {
      if (!bought.count(id)) s.edges.insert(id);
    }
    s.resolved = resolved_with(s.edges);
    if (!s.resolved.empty()) {
      s.density = set_price(inst, price_span, s.edges) / static_cast<long>(s.resolved.size());
      k1 = std::move(s);
    }
  }
  if (k1) step.k1_density = k1->density;

  const double n = inst.num_vertices();
  const Rational L = tau / from_double(snapped_pow(n, 4.0 / 5.0));
  const auto frac = solve_thin_lp(inst, remaining, L, eps, price_span);
  step.lp_status = frac.status;
  std::optional<ThinStep> k2;
  if (frac.status == ThinLpStatus::Feasible) {
    step.lp_objective = frac.objective;
    step.lp_y = frac.y;
    const std::size_t quota = (remaining.size() + 5) / 6;
    for (int attempt = 0; attempt < options.max_retries; ++attempt) {
      step.retries = attempt + 1;
      ThinStep s;
      for (int id : round_thin(frac, inst.num_vertices(), derive_seed(seed, attempt))) {
        if (!bought.count(id)) s.edges.insert(id);
      }
      s.resolved = resolved_with(s.edges);
      if (s.resolved.size() >= quota && !s.resolved.empty()) {
        s.density = set_price(inst, price_span, s.edges) / static_cast<long>(s.resolved.size());
        k2 = std::move(s);
        break;
      }
    }
  }
  if (k2) step.k2_density = k2->density;

  if (!k1 && !k2) throw NoneSatisfiable("neither branch resolves a remaining demand");
  const bool take_lp = k2 && (!k1 || k2->density < k1->density);
  ThinStep& pick = take_lp ? *k2 : *k1;
  step.edges = std::move(pick.edges);
  step.resolved = std::move(pick.resolved);
  step.density = pick.density;
  step.chose_lp = take_lp;
  return step;
}

std::optional<AntiSpannerCut> separate_antispanner(const Instance& inst,
                                                   const std::vector<Rational>& x, int demand) {
  const Demand& d = inst.demand(demand);
  const auto from_s = shortest_lengths(inst, d.source);
  const auto to_t = shortest_lengths(inst, d.sink, {}, /*reverse=*/true);
  const Length dist = from_s[d.sink];
  if (dist != d.bound) {
    throw std::invalid_argument("anti-spanner separation needs bound equal to the distance");
  }
  std::vector<FlowArc> arcs;
  for (int id = 0; id < inst.num_edges(); ++id) {
    const Edge& e = inst.edge(id);
    if (from_s[e.tail] == kUnreachable || to_t[e.head] == kUnreachable) continue;
    if (from_s[e.tail] + e.length + to_t[e.head] != dist) continue;
    arcs.push_back({e.tail, e.head, x[id], id});
  }
  MinCut cut = min_cut(inst.num_vertices(), arcs, d.source, d.sink);
  if (cut.value >= 1) return std::nullopt;
  return AntiSpannerCut{demand, std::move(cut.arcs), cut.value};
}

PreserverLp solve_preserver_lp(const Instance& inst, const std::vector<int>& demands,
                               EdgeWeights prices) {
  std::vector<int> active = demands;
  if (active.empty()) {
    for (int id = 0; id < inst.num_demands(); ++id) active.push_back(id);
  }
  const int m = inst.num_edges();
  PreserverLp out;
  out.x.assign(m, Rational(0));
  out.objective = 0;
  std::set<std::vector<int>> seen;

  for (;;) {
    bool added = false;
    for (int id : active) {
      auto cut = separate_antispanner(inst, out.x, id);
      if (!cut) continue;
      // Two demands can share a cut within one round.
      if (!seen.insert(cut->edges).second) continue;
      out.cuts.push_back(std::move(*cut));
      added = true;
    }
    if (!added) return out;

    LinearProgram lp;
    for (int id = 0; id < m; ++id) lp.add_variable(price_of(inst, prices, id));
    for (const AntiSpannerCut& cut : out.cuts) {
      LpRow row;
      row.sense = RowSense::GreaterEqual;
      row.rhs = 1;
      for (int id : cut.edges) row.coeffs.emplace_back(id, 1);
      lp.add_row(std::move(row));
    }
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) throw std::logic_error("preserver master not optimal");
    out.x = sol.values;
    out.objective = sol.objective;
    ++out.rounds;
  }
}

std::set<int> round_preserver(const std::vector<Rational>& x, int n, std::uint64_t seed) {
  return round_with_factor(x, preserver_rounding_factor(n), seed);
}

}  // namespace wsp
