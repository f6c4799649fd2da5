#include "wsp/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iterator>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "wsp/constrained_paths.hpp"
#include "wsp/local_graph.hpp"
#include "wsp/random.hpp"
#include "wsp/thick.hpp"
#include "wsp/thin_lp.hpp"

namespace wsp {

std::string Manifest::text() const {
  std::string out;
  for (const auto& line : lines_) {
    out += line;
    out += '\n';
  }
  return out;
}

namespace {

void log(Manifest* manifest, const std::string& line) {
  if (manifest) manifest->add(line);
}

std::vector<int> all_demands(const Instance& inst) {
  std::vector<int> ids(inst.num_demands());
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

std::vector<int> unresolved_among(const Instance& inst, const std::set<int>& edges,
                                  const std::vector<int>& candidates) {
  const auto done = resolved_demands(inst, edges, candidates);
  std::vector<int> left;
  for (int id : candidates) {
    if (!std::binary_search(done.begin(), done.end(), id)) left.push_back(id);
  }
  return left;
}

std::string fmt(const Rational& q) { return format_rational(q); }

std::string fmt_opt(const std::optional<Rational>& q) { return q ? fmt(*q) : "none"; }

Solution finish(const Instance& inst, Solution sol) {
  sol.total_cost = edge_set_cost(inst, sol.edges);
  refresh_achieved(inst, sol);
  return sol;
}

// Shortest (then cheapest) path for each listed demand not yet resolved.
void patch_with_paths(const Instance& inst, Solution& sol, const std::vector<int>& demands,
                      Phase phase) {
  for (int id : unresolved_among(inst, sol.edges, demands)) {
    const Demand& d = inst.demand(id);
    auto path = rsp_exact(inst, d.source, d.sink, d.bound);
    if (!path) throw std::logic_error("validated demand has no feasible path");
    add_edges(sol, inst, path->edges, phase);
  }
}

struct TauRun {
  Solution candidate;
  bool feasible = false;
  std::vector<std::string> log;
};

TauRun run_tau(const Instance& inst, const Rational& tau, std::size_t index,
               const PairwiseOptions& options, const std::set<int>& zero_edges) {
  TauRun run;
  const std::uint64_t seed = derive_seed(options.seed, index);
  Solution& sol = run.candidate;
  sol.total_cost = 0;
  add_edges(sol, inst, zero_edges, Phase::Baseline);

  const Classification cls = classify_pairs(inst, tau);
  std::ostringstream head;
  head << "tau " << fmt(tau) << " L " << fmt(*cls.cost_budget) << " beta " << cls.beta
       << " threshold " << cls.threshold << " thick " << cls.thick.size() << " thin "
       << cls.thin.size();
  run.log.push_back(head.str());

  if (!cls.thick.empty()) {
    const ThickResult thick = resolve_thick(inst, cls.thick, tau, options.eps, derive_seed(seed, 0));
    add_edges(sol, inst, thick.edges, Phase::Thick);
    std::ostringstream line;
    line << "thick tau " << fmt(tau) << " samples " << thick.samples.draws.size() << " distinct "
         << thick.samples.distinct.size() << " cost " << fmt(thick.cost) << " bound "
         << fmt(thick.cost_bound) << " unresolved " << thick.unresolved.size();
    run.log.push_back(line.str());
  }

  std::vector<int> remaining = unresolved_among(inst, sol.edges, cls.thin);
  ThinStepOptions step_options;
  step_options.max_retries = options.max_retries;
  step_options.backend = options.backend;
  for (int iteration = 0; !remaining.empty(); ++iteration) {
    const ThinStep step = thin_iteration(inst, remaining, tau, options.eps,
                                         derive_seed(seed, 1 + iteration), sol.edges, step_options);
    add_edges(sol, inst, step.edges, step.chose_lp ? Phase::LpRound : Phase::Junction);
    std::ostringstream line;
    line << "thin tau " << fmt(tau) << " iter " << iteration << " remaining " << remaining.size()
         << " branch " << (step.chose_lp ? "lp" : "junction") << " density " << fmt(step.density)
         << " k1 " << fmt_opt(step.k1_density) << " k2 " << fmt_opt(step.k2_density) << " lp "
         << (step.lp_status == ThinLpStatus::Feasible ? fmt(*step.lp_objective) : "infeasible")
         << " retries " << step.retries << " resolved " << step.resolved.size();
    run.log.push_back(line.str());
    if (!step.lp_y.empty()) {
      std::string y = "yhat tau " + fmt(tau) + " iter " + std::to_string(iteration);
      for (std::size_t i = 0; i < step.lp_y.size(); ++i) {
        y += " " + std::to_string(remaining[i]) + ":" + fmt(step.lp_y[i]);
      }
      run.log.push_back(y);
    }
    const auto before = remaining.size();
    remaining = unresolved_among(inst, sol.edges, remaining);
    if (remaining.size() >= before) throw std::logic_error("thin iteration made no progress");
  }

  sol.total_cost = edge_set_cost(inst, sol.edges);
  run.feasible = verify_edges(inst, sol.edges).all_resolved;
  std::ostringstream line;
  line << "candidate tau " << fmt(tau) << " cost " << fmt(sol.total_cost) << " feasible "
       << (run.feasible ? "yes" : "no");
  run.log.push_back(line.str());
  return run;
}

}  // namespace

TauSchedule tau_schedule(const Instance& inst) {
  TauSchedule schedule;
  schedule.tau0 = 0;
  std::optional<Rational> tau0;
  std::set<int> zero_edges;
  for (int id = 0; id < inst.num_edges(); ++id) {
    const Rational& c = inst.edge(id).cost;
    if (sgn(c) == 0) zero_edges.insert(id);
    if (sgn(c) > 0 && (!tau0 || c < *tau0)) tau0 = c;
  }
  // nothing to guess when the free edges already do the job
  if (!tau0 || verify_edges(inst, zero_edges).all_resolved) return schedule;
  schedule.tau0 = *tau0;
  const Rational total = inst.total_cost();
  Rational tau = *tau0;
  for (;;) {
    schedule.values.push_back(tau);
    if (tau >= total) break;
    tau *= 2;
  }
  return schedule;
}

Solution baseline_solution(const Instance& inst) {
  Solution sol;
  sol.total_cost = 0;
  patch_with_paths(inst, sol, all_demands(inst), Phase::Baseline);
  return finish(inst, std::move(sol));
}

Solution prune_solution(const Instance& inst, const Solution& sol) {
  Solution out = sol;
  std::vector<int> order(sol.edges.begin(), sol.edges.end());
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return inst.edge(a).cost > inst.edge(b).cost;
  });
  for (int id : order) {
    std::set<int> trial = out.edges;
    trial.erase(id);
    if (verify_edges(inst, trial).all_resolved) remove_edge(out, inst, id);
  }
  return finish(inst, std::move(out));
}

Solution solve_pairwise(const Instance& inst, const PairwiseOptions& options, Manifest* manifest) {
  if (!(options.eps > 0)) throw std::invalid_argument("eps must be positive");
  {
    std::ostringstream line;
    line << "mode pairwise seed " << options.seed << " eps " << options.eps << " n "
         << inst.num_vertices() << " m " << inst.num_edges() << " k " << inst.num_demands();
    log(manifest, line.str());
  }

  const Solution baseline = baseline_solution(inst);
  log(manifest, "baseline cost " + fmt(baseline.total_cost));

  std::set<int> zero_edges;
  for (int id = 0; id < inst.num_edges(); ++id) {
    if (sgn(inst.edge(id).cost) == 0) zero_edges.insert(id);
  }
  if (verify_edges(inst, zero_edges).all_resolved) {
    log(manifest, "zero-cost subgraph feasible");
    Solution sol;
    sol.total_cost = 0;
    add_edges(sol, inst, zero_edges, Phase::Baseline);
    Solution pruned = prune_solution(inst, sol);
    log(manifest, "selected zero-cost pruned " + fmt(pruned.total_cost));
    return pruned;
  }

  std::vector<Rational> taus;
  if (options.taus) {
    taus = *options.taus;
  } else {
    taus = tau_schedule(inst).values;
  }
  {
    std::string line = "tau_schedule";
    for (const auto& t : taus) line += " " + fmt(t);
    log(manifest, line);
  }

  std::vector<TauRun> runs(taus.size());
  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(taus.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < taus.size(); ++i) runs[i] = run_tau(inst, taus[i], i, options, zero_edges);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(taus.size());
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < taus.size(); i = next++) {
          try {
            runs[i] = run_tau(inst, taus[i], i, options, zero_edges);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  const Solution* best = &baseline;
  std::string best_name = "baseline";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (const auto& line : runs[i].log) log(manifest, line);
    if (runs[i].feasible && runs[i].candidate.total_cost < best->total_cost) {
      best = &runs[i].candidate;
      best_name = "tau " + fmt(taus[i]);
    }
  }
  Solution pruned = prune_solution(inst, *best);
  log(manifest, "selected " + best_name + " cost " + fmt(best->total_cost) + " pruned " +
                    fmt(pruned.total_cost));
  return pruned;
}

Instance allpair_instance(const Instance& graph) {
  std::vector<Demand> demands;
  for (int s = 0; s < graph.num_vertices(); ++s) {
    const auto dist = shortest_lengths(graph, s);
    for (int t = 0; t < graph.num_vertices(); ++t) {
      if (t != s && dist[t] != kUnreachable) demands.push_back({s, t, dist[t]});
    }
  }
  return graph.with_demands(std::move(demands));
}

Solution solve_single_source(const Instance& inst, JtBackend backend, Manifest* manifest) {
  if (inst.num_demands() == 0) return finish(inst, Solution{});
  const int source = inst.demand(0).source;
  for (const Demand& d : inst.demands()) {
    if (d.source != source) throw std::invalid_argument("single-source demands must share a source");
  }
  JtOptions options;
  options.roots = {source};
  const CoverResult cover = greedy_jt_cover(inst, all_demands(inst), backend, options);
  {
    std::ostringstream line;
    line << "single_source root " << source << " trees " << cover.trees.size() << " cost "
         << fmt(cover.solution.total_cost);
    log(manifest, line.str());
    for (std::size_t i = 0; i < cover.trees.size(); ++i) {
      std::ostringstream tree;
      tree << "tree " << i << " density " << fmt(cover.trees[i].density) << " satisfied "
           << cover.trees[i].satisfied.size();
      log(manifest, tree.str());
    }
  }
  return prune_solution(inst, cover.solution);
}

Solution solve_allpair_preserver(const Instance& graph, const PreserverOptions& options,
                                 Manifest* manifest) {
  const Instance inst = allpair_instance(graph);
  const int n = inst.num_vertices();
  {
    std::ostringstream line;
    line << "mode allpair-preserver seed " << options.seed << " n " << n << " m "
         << inst.num_edges() << " pairs " << inst.num_demands();
    log(manifest, line.str());
  }
  Solution sol;
  sol.total_cost = 0;
  if (inst.num_demands() == 0) return finish(inst, sol);

  // Thick phase: single-source and single-sink preservers at sampled roots.
  const double beta = std::sqrt(static_cast<double>(n));
  const SampleSet roots = sample_hitters(n, beta, derive_seed(options.seed, 0), 1.0);
  for (int v : roots.distinct) {
    std::vector<Demand> out;
    std::vector<Demand> in;
    for (const Demand& d : inst.demands()) {
      if (d.source == v) out.push_back(d);
      if (d.sink == v) in.push_back({d.sink, d.source, d.bound});  // flipped for the reverse graph
    }
    if (!out.empty()) {
      const Solution part = solve_single_source(graph.with_demands(out), options.backend);
      add_edges(sol, inst, part.edges, Phase::Thick);
    }
    if (!in.empty()) {
      const Instance reversed = graph.reversed().with_demands(in);
      const Solution part = solve_single_source(reversed, options.backend);
      add_edges(sol, inst, part.edges, Phase::Thick);
    }
  }
  {
    std::ostringstream line;
    line << "thick roots " << roots.draws.size() << " distinct " << roots.distinct.size()
         << " cost " << fmt(sol.total_cost);
    log(manifest, line.str());
  }

  // Thin phase: cutting-plane LP over the still-unresolved thin pairs, then
  // sqrt(n) ln n rounding with retries.
  const Classification cls = classify_with(inst, all_demands(inst), beta, std::nullopt);
  const std::vector<int> thin = unresolved_among(inst, sol.edges, cls.thin);
  {
    std::ostringstream line;
    line << "classify beta " << beta << " threshold " << cls.threshold << " thick "
         << cls.thick.size() << " thin " << cls.thin.size() << " thin_open " << thin.size();
    log(manifest, line.str());
  }
  if (!thin.empty()) {
    std::vector<Rational> prices(inst.num_edges());
    for (int id = 0; id < inst.num_edges(); ++id) {
      prices[id] = sol.contains(id) ? Rational(0) : inst.edge(id).cost;
    }
    const PreserverLp lp = solve_preserver_lp(inst, thin, EdgeWeights(prices.data(), prices.size()));
    int attempts = 0;
    bool settled = false;
    for (int attempt = 0; attempt < options.max_retries && !settled; ++attempt) {
      attempts = attempt + 1;
      std::set<int> trial = sol.edges;
      for (int id : round_preserver(lp.x, n, derive_seed(options.seed, 1 + attempt))) trial.insert(id);
      if (unresolved_among(inst, trial, thin).empty()) {
        settled = true;
        std::set<int> added;
        std::set_difference(trial.begin(), trial.end(), sol.edges.begin(), sol.edges.end(),
                            std::inserter(added, added.end()));
        add_edges(sol, inst, added, Phase::LpRound);
      }
    }
    std::ostringstream line;
    line << "thin pairs " << thin.size() << " lp " << fmt(lp.objective) << " cuts "
         << lp.cuts.size() << " attempts " << attempts << " settled " << (settled ? "yes" : "no");
    log(manifest, line.str());
  }

  const auto missing = unresolved_among(inst, sol.edges, all_demands(inst));
  if (!missing.empty()) {
    log(manifest, "fallback paths " + std::to_string(missing.size()));
    patch_with_paths(inst, sol, missing, Phase::Baseline);
  }
  Solution pruned = prune_solution(inst, finish(inst, std::move(sol)));
  log(manifest, "pruned cost " + fmt(pruned.total_cost));
  return pruned;
}

OnlineResult online_solve(const Instance& graph, const std::vector<Demand>& arrivals,
                          JtBackend backend, Manifest* manifest) {
  OnlineResult result{OnlineState{}, graph.with_demands(arrivals), Solution{}};
  const Instance& inst = result.instance;
  OnlineState& state = result.state;
  Solution& sol = result.solution;
  sol.total_cost = 0;
  log(manifest, "mode online arrivals " + std::to_string(arrivals.size()));

  std::vector<int> pending;
  for (int i = 0; i < inst.num_demands(); ++i) {
    state.arrivals.push_back(inst.demand(i));
    const Rational before = sol.total_cost;
    pending.push_back(i);
    pending = unresolved_among(inst, sol.edges, pending);
    while (!pending.empty()) {
      std::vector<Rational> prices(inst.num_edges());
      for (int id = 0; id < inst.num_edges(); ++id) {
        prices[id] = sol.contains(id) ? Rational(0) : inst.edge(id).cost;
      }
      JtOptions options;
      options.prices = EdgeWeights(prices.data(), prices.size());
      auto tree = min_density_jt(inst, pending, backend, options);
      if (!tree) throw NoneSatisfiable("arrival cannot be satisfied");
      add_edges(sol, inst, tree->edges, Phase::Online);
      const auto left = unresolved_among(inst, sol.edges, pending);
      if (left.size() >= pending.size()) throw std::logic_error("online augmentation made no progress");
      pending = left;
    }
    state.bought = sol.edges;
    state.snapshots.push_back(sol.edges);
    state.ledger.push_back(sol.total_cost - before);
    const Demand& d = inst.demand(i);
    std::ostringstream line;
    line << "arrival " << i << " " << d.source << " " << d.sink << " " << d.bound << " cost "
         << fmt(state.ledger.back()) << " total " << fmt(sol.total_cost);
    log(manifest, line.str());
  }
  refresh_achieved(inst, sol);
  return result;
}

}  // namespace wsp
