#include "wsp/solution.hpp"

#include <sstream>

namespace wsp {

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::Thick: return "thick";
    case Phase::Junction: return "junction";
    case Phase::LpRound: return "lp-round";
    case Phase::Baseline: return "baseline";
    case Phase::Online: return "online";
  }
  return "unknown";
}

std::optional<Phase> parse_phase(std::string_view name) {
  for (Phase p : {Phase::Thick, Phase::Junction, Phase::LpRound, Phase::Baseline, Phase::Online}) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

void remove_edge(Solution& sol, const Instance& inst, int id) {
  if (sol.edges.erase(id) != 0) {
    sol.total_cost -= inst.edge(id).cost;
    sol.phases.erase(id);
  }
}

std::vector<char> edge_mask(const Instance& inst, const std::set<int>& edges) {
  std::vector<char> mask(inst.num_edges(), 0);
  for (int id : edges) mask[id] = 1;
  return mask;
}

int VerifyReport::resolved_count() const {
  int count = 0;
  for (const auto& d : demands) count += d.resolved ? 1 : 0;
  return count;
}

Rational edge_set_cost(const Instance& inst, const std::set<int>& edges) {
  Rational sum = 0;
  for (int id : edges) sum += inst.edge(id).cost;
  return sum;
}

VerifyReport verify_edges(const Instance& inst, const std::set<int>& edges) {
  VerifyReport report;
  report.total_cost = edge_set_cost(inst, edges);
  const auto mask = edge_mask(inst, edges);
  std::vector<std::vector<Length>> dist(inst.num_vertices());
  for (int id = 0; id < inst.num_demands(); ++id) {
    const Demand& d = inst.demand(id);
    if (dist[d.source].empty()) {
      dist[d.source] = shortest_lengths(inst, d.source, EdgeMask(mask.data(), mask.size()));
    }
    DemandCheck check{id, dist[d.source][d.sink], false};
    check.resolved = check.attained <= d.bound;
    report.all_resolved = report.all_resolved && check.resolved;
    report.demands.push_back(check);
  }
  return report;
}

VerifyReport verify_solution(const Instance& inst, const Solution& sol) {
  return verify_edges(inst, sol.edges);
}

std::vector<int> resolved_demands(const Instance& inst, const std::set<int>& edges,
                                  const std::vector<int>& candidates) {
  const auto mask = edge_mask(inst, edges);
  std::vector<std::vector<Length>> dist(inst.num_vertices());
  std::vector<int> out;
  for (int id : candidates) {
    const Demand& d = inst.demand(id);
    if (dist[d.source].empty()) {
      dist[d.source] = shortest_lengths(inst, d.source, EdgeMask(mask.data(), mask.size()));
    }
    if (dist[d.source][d.sink] <= d.bound) out.push_back(id);
  }
  return out;
}

void refresh_achieved(const Instance& inst, Solution& sol) {
  const auto report = verify_solution(inst, sol);
  sol.total_cost = report.total_cost;
  sol.achieved.clear();
  for (const auto& d : report.demands) {
    sol.achieved[d.demand] =
        d.attained == kUnreachable ? std::nullopt : std::optional<Length>(d.attained);
  }
}

std::string write_solution(const Instance& inst, const Solution& sol) {
  const auto report = verify_solution(inst, sol);
  std::ostringstream out;
  out << "solution\n";
  out << "edges " << sol.edges.size() << '\n';
  for (int id : sol.edges) {
    out << "edge " << id;
    if (auto it = sol.phases.find(id); it != sol.phases.end()) out << ' ' << to_string(it->second);
    out << '\n';
  }
  out << "cost " << format_rational(report.total_cost) << '\n';
  out << "demands " << report.demands.size() << '\n';
  for (const auto& check : report.demands) {
    const Demand& d = inst.demand(check.demand);
    out << "attained " << check.demand << ' ' << d.source << ' ' << d.sink << ' ' << d.bound << ' ';
    if (check.attained == kUnreachable) {
      out << "inf";
    } else {
      out << check.attained;
    }
    out << ' ' << (check.resolved ? "resolved" : "unresolved") << '\n';
  }
  return out.str();
}

Solution parse_solution(std::string_view text, const Instance& inst) {
  Solution sol;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  bool seen_header = false;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream line(raw);
    std::string key;
    if (!(line >> key)) continue;
    if (key == "solution" || key == "edges" || key == "cost" || key == "demands" ||
        key == "attained") {
      seen_header = seen_header || key == "solution";
      continue;
    }
    if (key != "edge") {
      throw InstanceError(InstanceErrorKind::Syntax, number, "unknown record '" + key + "'");
    }
    int id = -1;
    if (!(line >> id) || id < 0 || id >= inst.num_edges()) {
      throw InstanceError(InstanceErrorKind::Syntax, number, "bad edge id");
    }
    std::string tag;
    Phase phase = Phase::Baseline;
    if (line >> tag) {
      auto parsed = parse_phase(tag);
      if (!parsed) throw InstanceError(InstanceErrorKind::Syntax, number, "bad phase tag");
      phase = *parsed;
    }
    add_edges(sol, inst, std::vector<int>{id}, phase);
  }
  if (!seen_header) throw InstanceError(InstanceErrorKind::Syntax, 1, "missing 'solution' header");
  refresh_achieved(inst, sol);
  return sol;
}

}  // namespace wsp
