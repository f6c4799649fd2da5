#include "wsp/suite.hpp"

#include <algorithm>

#include "wsp/generator.hpp"
#include "wsp/random.hpp"

namespace wsp {

std::vector<SuiteCase> make_suite(const SuiteSpec& spec) {
  static const Rational kSlacks[] = {Rational(1), Rational(3, 2), Rational(2)};
  std::vector<SuiteCase> cases;
  for (int i = 0; i < spec.count; ++i) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      const std::uint64_t seed = derive_seed(derive_seed(spec.seed, i), attempt);
      Rng shape(seed);
      GeneratorParams params;
      params.n = static_cast<int>(shape.uniform_int(spec.n_min, spec.n_max));
      const double arcs = params.n * (params.n - 1.0);
      const double target = static_cast<double>(shape.uniform_int(params.n, spec.max_edges));
      params.edge_probability = std::min(1.0, target / arcs);
      params.cost_min = shape.uniform_int(0, 3) == 0 ? 0 : 1;
      params.cost_max = 9;
      params.max_length = spec.max_length;
      params.demands = static_cast<int>(shape.uniform_int(spec.k_min, spec.k_max));
      params.slack = kSlacks[i % 3];
      try {
        Instance inst = gen_random_instance(params, shape.next());
        if (inst.num_edges() > spec.max_edges) continue;
        cases.push_back({"case" + std::to_string(i), params.slack, seed, std::move(inst)});
        break;
      } catch (const GenerationError&) {
      }
    }
  }
  return cases;
}

SuiteSpec tiny_suite_spec() {
  SuiteSpec spec;
  spec.count = 200;
  spec.seed = 20240601;
  return spec;
}

SuiteSpec oracle_suite_spec() {
  SuiteSpec spec;
  spec.count = 50;
  spec.n_max = 8;
  spec.max_edges = 14;
  spec.seed = 20240602;
  return spec;
}

Instance single_source_variant(const Instance& inst) {
  if (inst.num_demands() == 0) return inst;
  const int s = inst.demand(0).source;
  const std::size_t want = inst.num_demands();
  std::vector<Demand> demands;
  std::vector<char> used(inst.num_vertices(), 0);
  for (const Demand& d : inst.demands()) {
    if (d.source == s && !used[d.sink]) {
      demands.push_back(d);
      used[d.sink] = 1;
    }
  }
  const auto dist = shortest_lengths(inst, s);
  for (int t = 0; t < inst.num_vertices() && demands.size() < want; ++t) {
    if (t == s || used[t] || dist[t] == kUnreachable) continue;
    demands.push_back({s, t, dist[t]});
    used[t] = 1;
  }
  return inst.with_demands(std::move(demands));
}

}  // namespace wsp
