#include "wsp/thick.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wsp/constrained_paths.hpp"
#include "wsp/local_graph.hpp"
#include "wsp/random.hpp"
#include "wsp/solution.hpp"

namespace wsp {

int hitting_sample_size(int n, double beta, double factor) {
  if (n < 1 || !(beta > 0)) throw std::invalid_argument("need n >= 1 and beta > 0");
  double k = factor * beta * std::log(static_cast<double>(n));
  if (std::abs(k - std::round(k)) <= 1e-9 * std::max(1.0, k)) k = std::round(k);
  return static_cast<int>(std::ceil(k));
}

SampleSet sample_hitters(int n, double beta, std::uint64_t seed, double factor) {
  SampleSet out;
  out.seed = seed;
  const int k = hitting_sample_size(n, beta, factor);
  Rng rng(seed);
  out.draws.reserve(k);
  for (int i = 0; i < k; ++i) out.draws.push_back(static_cast<int>(rng.uniform_int(0, n - 1)));
  out.distinct = out.draws;
  std::sort(out.distinct.begin(), out.distinct.end());
  out.distinct.erase(std::unique(out.distinct.begin(), out.distinct.end()), out.distinct.end());
  return out;
}

ThickResult resolve_thick_with(const Instance& inst, const std::vector<int>& thick_pairs,
                               const Rational& cost_budget, double eps, const SampleSet& samples) {
  ThickResult out;
  out.cost = 0;
  out.cost_bound = 0;
  if (thick_pairs.empty()) return out;
  out.samples = samples;

  std::set<int> sources;
  std::set<int> sinks;
  for (int id : thick_pairs) {
    sources.insert(inst.demand(id).source);
    sinks.insert(inst.demand(id).sink);
  }
  out.sources.assign(sources.begin(), sources.end());
  out.sinks.assign(sinks.begin(), sinks.end());

  const MinLengthOptions options{eps, -1};
  for (int u : samples.distinct) {
    for (int s : out.sources) {
      if (auto path = min_length_under_cost(inst, s, u, cost_budget, options)) {
        out.edges.insert(path->edges.begin(), path->edges.end());
      }
    }
    for (int t : out.sinks) {
      if (auto path = min_length_under_cost(inst, u, t, cost_budget, options)) {
        out.edges.insert(path->edges.begin(), path->edges.end());
      }
    }
  }
  out.cost = edge_set_cost(inst, out.edges);
  out.cost_bound = Rational(static_cast<long>(samples.distinct.size())) *
                   Rational(static_cast<long>(out.sources.size() + out.sinks.size())) *
                   cost_budget * (1 + from_double(eps));

  std::vector<int> sorted = thick_pairs;
  std::sort(sorted.begin(), sorted.end());
  const auto resolved = resolved_demands(inst, out.edges, sorted);
  std::set_difference(sorted.begin(), sorted.end(), resolved.begin(), resolved.end(),
                      std::back_inserter(out.unresolved));
  return out;
}

ThickResult resolve_thick(const Instance& inst, const std::vector<int>& thick_pairs,
                          const Rational& tau, double eps, std::uint64_t seed) {
  if (thick_pairs.empty()) return resolve_thick_with(inst, thick_pairs, 0, eps, {});
  const double n = inst.num_vertices();
  const double beta = snapped_pow(n, 3.0 / 5.0);
  const Rational budget = tau / from_double(snapped_pow(n, 4.0 / 5.0));
  return resolve_thick_with(inst, thick_pairs, budget, eps,
                            sample_hitters(inst.num_vertices(), beta, seed));
}

}  // namespace wsp
