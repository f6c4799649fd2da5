#include "wsp/local_graph.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wsp/constrained_paths.hpp"

namespace wsp {

LocalGraph local_graph(const Instance& inst, int demand, const std::optional<Rational>& budget) {
  if (budget && *budget < 0) throw std::invalid_argument("cost budget must be non-negative");
  const Demand& d = inst.demand(demand);
  LocalGraph out;
  out.demand = demand;
  const Length bound = std::min(d.bound, path_length_cap(inst));
  using Dir = CostLengthTable::Direction;
  const CostLengthTable from_source(inst, d.source, Dir::FromAnchor, bound);
  const CostLengthTable to_sink(inst, d.sink, Dir::ToAnchor, bound);

  auto admissible = [&](const Rational& cost) { return !budget || cost <= *budget; };

  Rational total;
  for (int v = 0; v < inst.num_vertices(); ++v) {
    for (Length l1 = 0; l1 <= bound; ++l1) {
      auto head = from_source.at_most(v, l1);
      auto tail = to_sink.at_most(v, bound - l1);
      if (!head || !tail) continue;
      total = *head + *tail;
      if (admissible(total)) {
        out.vertices.insert(v);
        break;
      }
    }
  }
  for (int id = 0; id < inst.num_edges(); ++id) {
    const Edge& e = inst.edge(id);
    if (!out.vertices.count(e.tail) || !out.vertices.count(e.head)) continue;
    for (Length l1 = 0; l1 + e.length <= bound; ++l1) {
      auto head = from_source.at_most(e.tail, l1);
      auto tail = to_sink.at_most(e.head, bound - l1 - e.length);
      if (!head || !tail) continue;
      total = *head + e.cost + *tail;
      if (admissible(total)) {
        out.edges.insert(id);
        break;
      }
    }
  }
  return out;
}

double snapped_pow(double base, double exponent) {
  const double value = std::pow(base, exponent);
  const double nearest = std::round(value);
  if (std::abs(value - nearest) <= 1e-9 * std::max(1.0, std::abs(value))) return nearest;
  return value;
}

Classification classify_with(const Instance& inst, const std::vector<int>& demands, double beta,
                             const std::optional<Rational>& budget) {
  if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
  Classification out;
  out.beta = beta;
  out.cost_budget = budget;
  double ratio = inst.num_vertices() / beta;
  if (std::abs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, ratio)) ratio = std::round(ratio);
  out.threshold = static_cast<int>(std::ceil(ratio));
  for (int id : demands) {
    const auto local = local_graph(inst, id, budget);
    if (static_cast<int>(local.vertices.size()) >= out.threshold) {
      out.thick.push_back(id);
    } else {
      out.thin.push_back(id);
    }
  }
  return out;
}

Classification classify_pairs(const Instance& inst, const Rational& tau) {
  if (tau <= 0) throw std::invalid_argument("tau must be positive");
  const double n = inst.num_vertices();
  const double beta = snapped_pow(n, 3.0 / 5.0);
  const Rational budget = tau / from_double(snapped_pow(n, 4.0 / 5.0));
  std::vector<int> all(inst.num_demands());
  std::iota(all.begin(), all.end(), 0);
  return classify_with(inst, all, beta, budget);
}

}  // namespace wsp
