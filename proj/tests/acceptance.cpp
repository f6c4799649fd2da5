// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "support/brute.hpp"
#include "wsp/constrained_paths.hpp"
#include "wsp/generator.hpp"
#include "wsp/junction_tree.hpp"
#include "wsp/local_graph.hpp"
#include "wsp/oracle.hpp"
#include "wsp/pipeline.hpp"
#include "wsp/random.hpp"
#include "wsp/solution.hpp"
#include "wsp/suite.hpp"
#include "wsp/thick.hpp"
#include "wsp/thin_lp.hpp"

using namespace wsp;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few are printed in the detail line.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (examples_.size() < 3) examples_.push_back(what);
  }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    std::ostringstream out;
    out << checks_ - failures_ << "/" << checks_ << " checks";
    for (const auto& e : examples_) out << "; " << e;
    return out.str();
  }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::vector<std::string> examples_;
};

std::vector<int> all_demands(const Instance& inst) {
  std::vector<int> out(inst.num_demands());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

const std::vector<SuiteCase>& tiny_cases() {
  static const auto cases = make_suite(tiny_suite_spec());
  return cases;
}

const std::vector<SuiteCase>& oracle_cases() {
  static const auto cases = make_suite(oracle_suite_spec());
  return cases;
}

const std::vector<Solution>& oracle_opts() {
  static const auto opts = [] {
    std::vector<Solution> out;
    for (const auto& c : oracle_cases()) out.push_back(exact_opt(c.instance));
    return out;
  }();
  return opts;
}

std::string q(const Rational& r) { return format_rational(r); }

// min / median / max / mean of ratios cost / opt (opt > 0 only)
std::string distribution(std::vector<double> r) {
  if (r.empty()) return "none";
  std::sort(r.begin(), r.end());
  const double mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
  char buf[160];
  std::snprintf(buf, sizeof buf, "min %.3f median %.3f p90 %.3f max %.3f mean %.3f", r.front(),
                r[r.size() / 2], r[std::min(r.size() - 1, r.size() * 9 / 10)], r.back(), mean);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome criterion_1() {
  Tally t;
  const auto t0 = Clock::now();
  for (const auto& c : tiny_cases()) {
    const Instance& inst = c.instance;
    PairwiseOptions options;
    options.seed = c.seed;
    t.check(verify_solution(inst, solve_pairwise(inst, options)).all_resolved, c.name + " pairwise");
    const Instance ss = single_source_variant(inst);
    t.check(verify_solution(ss, solve_single_source(ss)).all_resolved, c.name + " single-source");
    auto online = online_solve(Instance(inst.num_vertices(), inst.edges(), {}), inst.demands());
    t.check(verify_solution(online.instance, online.solution).all_resolved, c.name + " online");
    PreserverOptions preserver;
    preserver.seed = c.seed;
    t.check(verify_solution(allpair_instance(inst), solve_allpair_preserver(inst, preserver))
                .all_resolved,
            c.name + " allpair-preserver");
  }
  const double s = seconds_since(t0);
  t.check(s < 60.0, "runtime");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%zu instances x 4 modes in %.1f s; ", tiny_cases().size(), s);
  return {t.ok(), buf + t.summary()};
}

Outcome criterion_2() {
  Tally t;
  const auto t0 = Clock::now();
  std::vector<double> pair_r, online_r, ss_r;
  const auto& cases = oracle_cases();
  const auto& opts = oracle_opts();
  auto record = [&](const std::string& what, const Rational& cost, const Rational& opt, int k,
                    std::vector<double>& into) {
    t.check(cost <= opt * k, what + " cost " + q(cost) + " opt " + q(opt) + " k " + std::to_string(k));
    if (sgn(opt) > 0) into.push_back(to_double(Rational(cost / opt)));
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Instance& inst = cases[i].instance;
    const int k = inst.num_demands();
    PairwiseOptions options;
    options.seed = cases[i].seed;
    const Solution pw = solve_pairwise(inst, options);
    t.check(verify_solution(inst, pw).all_resolved, cases[i].name + " pairwise infeasible");
    record(cases[i].name + " pairwise", pw.total_cost, opts[i].total_cost, k, pair_r);

    auto online = online_solve(Instance(inst.num_vertices(), inst.edges(), {}), inst.demands());
    record(cases[i].name + " online", online.solution.total_cost, opts[i].total_cost, k, online_r);

    const Instance ss = single_source_variant(inst);
    const Solution ss_sol = solve_single_source(ss);
    t.check(verify_solution(ss, ss_sol).all_resolved, cases[i].name + " single-source infeasible");
    record(cases[i].name + " single-source", ss_sol.total_cost, exact_opt(ss).total_cost,
           ss.num_demands(), ss_r);
  }
  const double s = seconds_since(t0);
  t.check(s < 180.0, "runtime");
  std::cout << "  pairwise ratios:      " << distribution(pair_r) << "\n";
  std::cout << "  online ratios:        " << distribution(online_r) << "\n";
  std::cout << "  single-source ratios: " << distribution(ss_r) << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%zu instances in %.1f s; ", cases.size(), s);
  return {t.ok(), buf + t.summary()};
}

Outcome criterion_3() {
  Tally t;
  int graphs = 0, rsp_queries = 0;
  // rsp_exact against path enumeration
  for (const auto& c : tiny_cases()) {
    const Instance& inst = c.instance;
    if (inst.num_vertices() > 8) continue;
    ++graphs;
    const int n = inst.num_vertices();
    for (int s = 0; s < n; ++s) {
      for (int tt = 0; tt < n; ++tt) {
        if (s == tt) continue;
        const auto paths = brute::simple_paths(inst, s, tt);
        for (Length T = 0; T <= 12; ++T) {
          std::optional<Rational> best;
          for (const auto& p : paths) {
            if (p.length <= T && (!best || p.cost < *best)) best = p.cost;
          }
          const auto got = rsp_exact(inst, s, tt, T);
          ++rsp_queries;
          const std::string tag = c.name + " rsp " + std::to_string(s) + "->" + std::to_string(tt) +
                                  " T " + std::to_string(T);
          t.check(got.has_value() == best.has_value(), tag + " existence");
          if (got && best) {
            t.check(got->cost == *best, tag + " cost");
            t.check(got->length <= T, tag + " length");
          }
        }
      }
    }
  }

  // fptas and rcsp_price on demand-derived queries
  int fptas_cases = 0, rcsp_cases = 0, rcsp_empty = 0;
  for (const auto& c : tiny_cases()) {
    const Instance& inst = c.instance;
    for (int d = 0; d < inst.num_demands(); ++d) {
      const auto& dem = inst.demand(d);
      const std::string tag = c.name + " demand " + std::to_string(d);
      if (fptas_cases < 100) {
        const auto exact = rsp_exact(inst, dem.source, dem.sink, dem.bound);
        const auto approx = rsp_fptas(inst, dem.source, dem.sink, dem.bound, 0.1);
        t.check(approx.has_value(), tag + " fptas found nothing");
        if (approx && exact) {
          t.check(approx->length <= dem.bound, tag + " fptas length");
          t.check(approx->cost * 10 <= exact->cost * 11, tag + " fptas cost");
          t.check(edge_set_cost(inst, std::set<int>(approx->edges.begin(), approx->edges.end())) ==
                      approx->cost,
                  tag + " fptas reported cost");
        }
        ++fptas_cases;
      }
      if (rcsp_cases < 100 && inst.num_vertices() <= 8) {
        Rng rng(derive_seed(c.seed, 1000 + d));
        std::vector<Rational> prices;
        for (int id = 0; id < inst.num_edges(); ++id) prices.emplace_back(rng.uniform_int(0, 6));
        const Rational Z(rng.uniform_int(0, 12));
        std::optional<Rational> best;
        for (const auto& p : brute::simple_paths(inst, dem.source, dem.sink)) {
          Rational price = 0;
          for (int id : p.edges) price += prices[id];
          if (p.length <= dem.bound && price <= Z && (!best || p.cost < *best)) best = p.cost;
        }
        const auto got = rcsp_price(inst, dem.source, dem.sink, dem.bound,
                                    EdgeWeights(prices.data(), prices.size()), Z, 0.1);
        if (best) {
          t.check(got.has_value(), tag + " rcsp missed a feasible path");
          ++rcsp_cases;
        } else {
          ++rcsp_empty;
        }
        if (got) {
          Rational price = 0;
          Length length = 0;
          for (int id : got->edges) {
            price += prices[id];
            length += inst.edge(id).length;
          }
          t.check(length == got->length && length <= dem.bound, tag + " rcsp length");
          t.check(price * 10 <= Z * 11, tag + " rcsp price");
          if (best) t.check(got->cost <= *best, tag + " rcsp cost");
        }
      }
    }
  }
  t.check(fptas_cases == 100 && rcsp_cases == 100, "case counts");
  std::ostringstream out;
  out << "rsp " << rsp_queries << " queries on " << graphs << " graphs, fptas " << fptas_cases
      << ", rcsp " << rcsp_cases << " (+" << rcsp_empty << " with no feasible path); "
      << t.summary();
  return {t.ok(), out.str()};
}

// Cheapest feasible path for `d` inside the edge set `keep`.
std::optional<Rational> cost_inside(const Instance& inst, const std::set<int>& keep, const Demand& d) {
  std::vector<Edge> edges;
  for (int id : keep) edges.push_back(inst.edge(id));
  const Instance sub(inst.num_vertices(), edges, {});
  const auto p = rsp_exact(sub, d.source, d.sink, d.bound);
  if (!p) return std::nullopt;
  return p->cost;
}

Outcome criterion_4() {
  Tally t;
  int full_runs = 0, thin_runs = 0, thin_bounded = 0, thin_infeasible = 0, zero_opt = 0;
  const auto& cases = oracle_cases();
  const auto& opts = oracle_opts();
  auto envelope = [&](const FractionalSolution& cg, const ExactLp& ex, const std::string& tag) {
    t.check(cg.status == ex.status, tag + " status");
    if (cg.status != ThinLpStatus::Feasible || ex.status != ThinLpStatus::Feasible) return;
    t.check(cg.objective * 11 >= ex.value * 10 && cg.objective * 10 <= ex.value * 11,
            tag + " cg " + q(cg.objective) + " exact " + q(ex.value));
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Instance& inst = cases[i].instance;
    const Rational opt = opts[i].total_cost;
    if (sgn(opt) == 0) {
      ++zero_opt;
      continue;
    }
    for (const Rational& tau : {opt, Rational(opt * 2)}) {
      const std::string tag = cases[i].name + " tau " + q(tau);
      // every demand, cost budget tau: all optimal routes are columns
      {
        const auto demands = all_demands(inst);
        const auto cg = solve_thin_lp(inst, demands, tau, 0.1);
        const auto ex = exact_lp3(inst, demands, tau);
        envelope(cg, ex, tag + " full");
        t.check(cg.status == ThinLpStatus::Feasible, tag + " full infeasible");
        if (cg.status == ThinLpStatus::Feasible) {
          t.check(cg.objective * 10 <= opt * 11, tag + " full above OPT: " + q(cg.objective));
        }
        ++full_runs;
      }
      // pipeline regime: thin pairs at L = tau / n^(4/5)
      const Classification cls = classify_pairs(inst, tau);
      if (cls.thin.empty()) continue;
      const Rational L = *cls.cost_budget;
      const auto cg = solve_thin_lp(inst, cls.thin, L, 0.1);
      const auto ex = exact_lp3(inst, cls.thin, L);
      envelope(cg, ex, tag + " thin");
      ++thin_runs;
      if (cg.status != ThinLpStatus::Feasible) ++thin_infeasible;
      // the lemma's setting: at least half of the pairs route cheaply inside OPT
      int cheap = 0;
      for (int d : cls.thin) {
        const auto c = cost_inside(inst, opts[i].edges, inst.demand(d));
        if (c && *c <= L) ++cheap;
      }
      if (2 * cheap >= static_cast<int>(cls.thin.size())) {
        ++thin_bounded;
        t.check(cg.status == ThinLpStatus::Feasible, tag + " thin infeasible with cheap OPT routes");
        if (cg.status == ThinLpStatus::Feasible) {
          t.check(cg.objective * 10 <= opt * 11, tag + " thin above OPT: " + q(cg.objective));
        }
      }
    }
  }
  std::ostringstream out;
  out << full_runs << " full-demand runs, " << thin_runs << " thin runs (" << thin_infeasible
      << " infeasible on both sides, " << thin_bounded << " in the cheap-OPT setting), "
      << zero_opt << " zero-OPT instances skipped; " << t.summary();
  return {t.ok(), out.str()};
}

Outcome criterion_5() {
  Tally t;
  const int n = 32;
  const double factor = thin_rounding_factor(n);
  const Rational certain = certain_inclusion_threshold(factor);
  std::vector<Rational> x{certain, Rational(certain * 2), Rational(1), Rational(1, 100),
                          Rational(1, 400), Rational(1, 80), Rational(0)};
  std::vector<int> hits(x.size(), 0);
  const int trials = 2000;
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    const auto chosen = round_with_factor(x, factor, seed);
    for (std::size_t id = 0; id < x.size(); ++id) hits[id] += chosen.count(static_cast<int>(id));
  }
  for (int id : {0, 1, 2}) t.check(hits[id] == trials, "certain edge " + std::to_string(id));
  t.check(hits[6] == 0, "zero edge");
  std::ostringstream out;
  for (int id : {3, 4, 5}) {
    const double p = std::min(1.0, factor * x[id].get_d());
    const double f = hits[id] / static_cast<double>(trials);
    t.check(p > 0 && p < 1 && std::abs(f - p) <= 0.05, "interior edge " + std::to_string(id));
    char buf[64];
    std::snprintf(buf, sizeof buf, "p %.3f freq %.3f, ", p, f);
    out << buf;
  }
  // the same on LP solutions from the suite
  int lp_edges = 0;
  for (const auto& c : oracle_cases()) {
    const Instance& inst = c.instance;
    const auto frac = solve_thin_lp(inst, all_demands(inst), inst.total_cost(), 0.1);
    if (frac.status != ThinLpStatus::Feasible) continue;
    const Rational thr = certain_inclusion_threshold(thin_rounding_factor(inst.num_vertices()));
    std::vector<int> sure;
    for (int id = 0; id < inst.num_edges(); ++id) {
      if (frac.x[id] >= thr) sure.push_back(id);
    }
    lp_edges += static_cast<int>(sure.size());
    bool all = true;
    for (std::uint64_t seed = 0; seed < trials && all; ++seed) {
      const auto chosen = round_thin(frac, inst.num_vertices(), seed);
      for (int id : sure) all = all && chosen.count(id);
    }
    t.check(all, c.name + " certain LP edge dropped");
  }
  out << lp_edges << " certain LP edges x " << trials << " trials; " << t.summary();
  return {t.ok(), out.str()};
}

// Instances for the junction-tree bounds: in budget, k in {2, 3, 4}.
const std::vector<SuiteCase>& jt_cases() {
  static const auto cases = [] {
    SuiteSpec spec = oracle_suite_spec();
    spec.count = 30;
    spec.k_min = 2;
    spec.k_max = 4;
    spec.seed = 20240603;
    return make_suite(spec);
  }();
  return cases;
}

Outcome criterion_6() {
  Tally t;
  for (const auto& c : jt_cases()) {
    const Instance& inst = c.instance;
    const int k = inst.num_demands();
    t.check(k >= 2 && k <= 4, c.name + " k");
    const Rational opt = exact_opt(inst).total_cost;
    const JunctionTree jt = exact_min_density_jt(inst, all_demands(inst));
    // density <= opt / sqrt(k)  <=>  density^2 * k <= opt^2
    t.check(Rational(jt.density * jt.density * k) <= Rational(opt * opt),
            c.name + " density " + q(jt.density) + " opt " + q(opt) + " k " + std::to_string(k));
  }
  return {t.ok(), std::to_string(jt_cases().size()) + " instances; " + t.summary()};
}

Outcome criterion_7() {
  Tally t;
  for (const auto& c : jt_cases()) {
    const Instance& inst = c.instance;
    const int k = inst.num_demands();
    const Rational opt = exact_opt(inst).total_cost;
    const CoverResult cover = greedy_jt_cover(inst, all_demands(inst), JtBackend::Exact);
    const Rational cost = cover.solution.total_cost;
    t.check(verify_solution(inst, cover.solution).all_resolved, c.name + " cover infeasible");
    // cost <= 2 opt (sqrt(k+1) - 1)  <=>  (cost + 2 opt)^2 <= 4 opt^2 (k + 1)
    const Rational lhs = (cost + 2 * opt) * (cost + 2 * opt);
    const Rational rhs = 4 * opt * opt * (k + 1);
    t.check(lhs <= rhs, c.name + " cover " + q(cost) + " opt " + q(opt) + " k " + std::to_string(k));
  }
  return {t.ok(), std::to_string(jt_cases().size()) + " instances; " + t.summary()};
}

// s -> r walks reaching r only at the end, times r -> t walks leaving r only at
// the start, over i + j <= bound with i, j <= n - 1.
std::int64_t through_root(const Instance& g, int root, const Demand& d) {
  const int n = g.num_vertices();
  std::function<std::int64_t(int, int, int)> count = [&](int v, int target, int steps) -> std::int64_t {
    if (steps == 0) return v == target ? 1 : 0;
    std::int64_t total = 0;
    for (int id : g.out_edges(v)) {
      const int w = g.edge(id).head;
      if (w == root && !(steps == 1 && target == root)) continue;
      total += count(w, target, steps - 1);
    }
    return total;
  };
  std::int64_t total = 0;
  for (int i = 0; i <= n - 1; ++i) {
    if (d.source == root && i > 0) break;
    const std::int64_t head = count(d.source, root, i);
    if (head == 0) continue;
    for (int j = 0; i + j <= d.bound && j <= n - 1; ++j) {
      if (d.sink == root && j > 0) break;
      std::int64_t tail = 0;
      if (j == 0) {
        tail = d.sink == root ? 1 : 0;
      } else {
        for (int id : g.out_edges(root)) {
          const int w = g.edge(id).head;
          if (w != root) tail += count(w, d.sink, j - 1);
        }
      }
      total += head * tail;
    }
  }
  return total;
}

void check_layered(Tally& t, const Instance& graph, const std::string& tag, long* demands_seen) {
  const int n = graph.num_vertices();
  std::vector<Demand> demands;
  for (int s = 0; s < n; ++s) {
    const auto dist = shortest_lengths(graph, s);
    for (int v = 0; v < n; ++v) {
      if (s == v || dist[v] == kUnreachable) continue;
      for (Length b = dist[v]; b <= dist[v] + 2; ++b) demands.push_back({s, v, b});
    }
  }
  const Instance inst = graph.with_demands(demands);
  *demands_seen += static_cast<long>(demands.size());
  for (int r = 0; r < n; ++r) {
    const LayeredGraph g = build_layered_graph(inst, r, all_demands(inst));
    t.check(g.core_count == 2 * (n - 1) * (n - 1) + 1, tag + " core count");
    for (int slot = 0; slot < inst.num_demands(); ++slot) {
      t.check(admissible_connections(g, slot) == through_root(inst, r, inst.demand(slot)),
              tag + " root " + std::to_string(r) + " demand " + std::to_string(slot));
    }
  }
}

Outcome criterion_8() {
  Tally t;
  long demands = 0;
  // every digraph on 4 vertices
  std::vector<std::pair<int, int>> arcs;
  for (int u = 0; u < 4; ++u) {
    for (int v = 0; v < 4; ++v) {
      if (u != v) arcs.emplace_back(u, v);
    }
  }
  for (int mask = 0; mask < (1 << arcs.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      if (mask >> a & 1) edges.push_back({arcs[a].first, arcs[a].second, Rational(1), 1});
    }
    check_layered(t, Instance(4, edges, {}), "n4 mask " + std::to_string(mask), &demands);
  }
  // 5 vertices: 300 random graphs across densities
  GeneratorParams p;
  p.n = 5;
  p.max_length = 1;
  p.demands = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    p.edge_probability = 0.1 + 0.1 * static_cast<double>(seed % 9);
    check_layered(t, gen_random_instance(p, seed), "n5 seed " + std::to_string(seed), &demands);
  }
  return {t.ok(), "4096 graphs on 4 vertices, 300 on 5, " + std::to_string(demands) +
                      " demands x every root; " + t.summary()};
}

Outcome criterion_9() {
  Tally t;
  GeneratorParams p;
  p.n = 7;
  p.edge_probability = 0.35;
  p.max_length = 5;
  p.demands = 2;
  int made = 0;
  for (std::uint64_t seed = 0; made < 20; ++seed) {
    Instance g = [&] {
      try {
        return std::optional<Instance>(gen_random_instance(p, seed));
      } catch (const GenerationError&) {
        return std::optional<Instance>();
      }
    }().value_or(Instance(1, {}, {}));
    if (g.num_vertices() == 1) continue;
    ++made;
    const ExpandedGraph big = unit_length_expand(g);
    const std::string tag = "seed " + std::to_string(seed);
    t.check(big.instance.total_cost() == g.total_cost(), tag + " cost");
    for (const auto& e : big.instance.edges()) t.check(e.length == 1, tag + " unit");
    for (int s = 0; s < g.num_vertices(); ++s) {
      auto d = shortest_lengths(big.instance, s);
      d.resize(g.num_vertices());
      t.check(d == shortest_lengths(g, s), tag + " distances from " + std::to_string(s));
    }
  }
  return {t.ok(), "20 instances; " + t.summary()};
}

// Three triangles with an expensive direct arc and a cheap detour of equal
// length, chained together, padded to 10 vertices.
Instance preserver_fixture() {
  return parse_instance(
      "graph 10 12\n"
      "e 0 1 1 1\ne 1 2 1 1\ne 0 2 3 2\n"
      "e 3 4 2 1\ne 4 5 1 1\ne 3 5 2 2\n"
      "e 6 7 1 1\ne 7 8 1 1\ne 6 8 2 2\n"
      "e 2 3 1 1\ne 5 6 1 1\ne 8 9 1 1\n");
}

Outcome criterion_10() {
  Tally t;
  int graphs = 0;
  long pairs = 0;
  for (const auto& c : tiny_cases()) {
    const Instance& inst = c.instance;
    if (inst.num_vertices() > 8) continue;
    ++graphs;
    PreserverOptions options;
    options.seed = c.seed;
    const Solution sol = solve_allpair_preserver(inst, options);
    for (int s = 0; s < inst.num_vertices(); ++s) {
      for (int v = 0; v < inst.num_vertices(); ++v) {
        if (s == v) continue;
        const auto want = brute::distance(inst, brute::all_edges(inst), s, v);
        if (want == kUnreachable) continue;
        ++pairs;
        t.check(brute::distance(inst, sol.edges, s, v) == want,
                c.name + " pair " + std::to_string(s) + "->" + std::to_string(v));
      }
    }
  }

  // rounding statistic on the fixture: LP over its thin pairs, rounded alone
  const Instance graph = preserver_fixture();
  const Instance all = allpair_instance(graph);
  const int n = graph.num_vertices();
  const Classification cls =
      classify_with(all, all_demands(all), std::sqrt(static_cast<double>(n)), std::nullopt);
  std::vector<Demand> thin;
  for (int d : cls.thin) thin.push_back(all.demand(d));
  const Instance thin_inst = graph.with_demands(thin);
  const PreserverLp lp = solve_preserver_lp(all, cls.thin);
  int settled = 0;
  const int runs = 200;
  for (std::uint64_t seed = 0; seed < runs; ++seed) {
    if (verify_edges(thin_inst, round_preserver(lp.x, n, seed)).all_resolved) ++settled;
  }
  t.check(!thin.empty(), "fixture has no thin pairs");
  t.check(settled * 100 >= runs * 95, "settled " + std::to_string(settled));
  std::ostringstream out;
  out << graphs << " graphs, " << pairs << " reachable pairs; fixture " << thin.size()
      << " thin pairs, LP " << q(lp.objective) << ", settled " << settled << "/" << runs << "; "
      << t.summary();
  return {t.ok(), out.str()};
}

// 0 -> 1 -> 2 -> 3 at cost 1 each plus an expensive shortcut, padded to 32
// vertices; thick at tau = 48 (L = 3).
Instance thick_fixture() {
  return parse_instance(
      "graph 32 5\ne 0 1 1 1\ne 1 2 1 1\ne 2 3 1 1\ne 0 3 10 1\ne 4 5 1 1\n"
      "demands 1\nd 0 3 3\n");
}

Outcome criterion_11() {
  Tally t;
  const Instance inst = thick_fixture();
  const Rational tau(48);
  const Classification cls = classify_pairs(inst, tau);
  t.check(cls.thick == std::vector<int>{0}, "fixture pair is not thick");
  int resolved = 0;
  const int runs = 200;
  for (std::uint64_t seed = 0; seed < runs; ++seed) {
    const ThickResult r = resolve_thick(inst, {0}, tau, 0.1, seed);
    if (r.unresolved.empty() && verify_edges(inst, r.edges).all_resolved) ++resolved;
  }
  t.check(resolved * 100 >= runs * 95, "resolved " + std::to_string(resolved));
  return {t.ok(), "resolved " + std::to_string(resolved) + "/" + std::to_string(runs) + "; " +
                      t.summary()};
}

Outcome criterion_12() {
  Tally t;
  for (const auto& c : tiny_cases()) {
    const Instance& inst = c.instance;
    const auto res = online_solve(Instance(inst.num_vertices(), inst.edges(), {}), inst.demands());
    for (std::size_t a = 1; a < res.state.snapshots.size(); ++a) {
      const auto& prev = res.state.snapshots[a - 1];
      const auto& cur = res.state.snapshots[a];
      t.check(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()),
              c.name + " arrival " + std::to_string(a));
    }
    t.check(res.state.snapshots.empty() || res.state.snapshots.back() == res.solution.edges,
            c.name + " final snapshot");
  }
  const Instance chain =
      parse_instance("graph 4 4\ne 0 1 1 1\ne 1 2 1 1\ne 2 3 1 1\ne 0 3 9 1\n");
  const Demand outer{0, 3, 3};
  const Demand inner{1, 3, 2};
  const Rational ab = online_solve(chain, {outer, inner}).solution.total_cost;
  const Rational ba = online_solve(chain, {inner, outer}).solution.total_cost;
  t.check(ab == ba, "order costs " + q(ab) + " vs " + q(ba));
  return {t.ok(), std::to_string(tiny_cases().size()) + " instances, chain " + q(ab) + " both orders; " +
                      t.summary()};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Entry entries[] = {
      {1, "feasibility on the 200-instance suite", criterion_1},
      {2, "oracle ratio <= k", criterion_2},
      {3, "constrained-path exactness", criterion_3},
      {4, "thin LP envelope", criterion_4},
      {5, "rounding statistics", criterion_5},
      {6, "junction-tree density <= OPT/sqrt(k)", criterion_6},
      {7, "greedy cover <= 2 OPT (sqrt(k+1) - 1)", criterion_7},
      {8, "layered-graph bijection", criterion_8},
      {9, "unit-length expansion", criterion_9},
      {10, "preserver equality and rounding", criterion_10},
      {11, "hitting-set frequency", criterion_11},
      {12, "online monotonicity and order", criterion_12},
  };
  int failed = 0;
  for (const auto& e : entries) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    char head[128];
    std::snprintf(head, sizeof head, "criterion %2d %s  %s (%.1f s): ", e.id, o.pass ? "PASS" : "FAIL",
                  e.name, seconds_since(t0));
    std::cout << head << o.detail << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
