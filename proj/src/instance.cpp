#include "wsp/instance.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

namespace wsp {

const char* to_string(InstanceErrorKind kind) {
  switch (kind) {
    case InstanceErrorKind::Syntax: return "Syntax";
    case InstanceErrorKind::VertexOutOfRange: return "VertexOutOfRange";
    case InstanceErrorKind::NonPositiveLength: return "NonPositiveLength";
    case InstanceErrorKind::NonIntegralLength: return "NonIntegralLength";
    case InstanceErrorKind::NegativeCost: return "NegativeCost";
    case InstanceErrorKind::SelfLoop: return "SelfLoop";
    case InstanceErrorKind::DuplicateArc: return "DuplicateArc";
    case InstanceErrorKind::SameEndpoints: return "SameEndpoints";
    case InstanceErrorKind::DistBelowShortest: return "DistBelowShortest";
  }
  return "Unknown";
}

InstanceError::InstanceError(InstanceErrorKind kind, int line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      kind_(kind),
      line_(line) {}

namespace {

void check_edge(int n, const Edge& e, int line) {
  if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n) {
    throw InstanceError(InstanceErrorKind::VertexOutOfRange, line, "edge endpoint out of range");
  }
  if (e.length < 1) {
    throw InstanceError(InstanceErrorKind::NonPositiveLength, line, "edge length must be >= 1");
  }
  if (e.cost < 0) throw InstanceError(InstanceErrorKind::NegativeCost, line, "negative edge cost");
  if (e.tail == e.head) throw InstanceError(InstanceErrorKind::SelfLoop, line, "self-loop");
}

void check_demand_shape(int n, const Demand& d, int line) {
  if (d.source < 0 || d.source >= n || d.sink < 0 || d.sink >= n) {
    throw InstanceError(InstanceErrorKind::VertexOutOfRange, line, "demand endpoint out of range");
  }
  if (d.source == d.sink) {
    throw InstanceError(InstanceErrorKind::SameEndpoints, line, "demand with source == sink");
  }
}

}  // namespace

Instance::Instance(int n, std::vector<Edge> edges, std::vector<Demand> demands)
    : n_(n), edges_(std::move(edges)), demands_(std::move(demands)), out_(n), in_(n) {
  if (n < 1) throw InstanceError(InstanceErrorKind::Syntax, 0, "vertex count must be >= 1");
  std::set<std::pair<int, int>> arcs;
  for (int id = 0; id < num_edges(); ++id) {
    const Edge& e = edges_[id];
    check_edge(n_, e, 0);
    if (!arcs.emplace(e.tail, e.head).second) {
      throw InstanceError(InstanceErrorKind::DuplicateArc, 0,
                          "duplicate arc " + std::to_string(e.tail) + "->" + std::to_string(e.head));
    }
    out_[e.tail].push_back(id);
    in_[e.head].push_back(id);
    max_length_ = std::max(max_length_, e.length);
  }
  std::vector<std::vector<Length>> dist_cache(n_);
  for (int id = 0; id < num_demands(); ++id) {
    const Demand& d = demands_[id];
    check_demand_shape(n_, d, 0);
    auto& dist = dist_cache[d.source];
    if (dist.empty()) dist = shortest_lengths(*this, d.source);
    if (dist[d.sink] == kUnreachable || d.bound < dist[d.sink]) {
      throw InstanceError(InstanceErrorKind::DistBelowShortest, 0,
                          "demand " + std::to_string(id) + " bound " + std::to_string(d.bound) +
                              " below shortest distance");
    }
  }
}

Rational Instance::total_cost() const {
  Rational sum = 0;
  for (const auto& e : edges_) sum += e.cost;
  return sum;
}

Instance Instance::with_demands(std::vector<Demand> demands) const {
  return Instance(n_, edges_, std::move(demands));
}

Instance Instance::reversed() const {
  std::vector<Edge> flipped = edges_;
  for (auto& e : flipped) std::swap(e.tail, e.head);
  std::vector<Demand> demands = demands_;
  for (auto& d : demands) std::swap(d.source, d.sink);
  return Instance(n_, std::move(flipped), std::move(demands));
}

std::vector<Length> shortest_lengths(const Instance& inst, int root, EdgeMask mask, bool reverse) {
  std::vector<Length> dist(inst.num_vertices(), kUnreachable);
  using Item = std::pair<Length, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[root] = 0;
  queue.emplace(0, root);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d != dist[v]) continue;
    const auto& incident = reverse ? inst.in_edges(v) : inst.out_edges(v);
    for (int id : incident) {
      if (!mask.empty() && !mask[id]) continue;
      const Edge& e = inst.edge(id);
      const int w = reverse ? e.tail : e.head;
      if (d + e.length < dist[w]) {
        dist[w] = d + e.length;
        queue.emplace(dist[w], w);
      }
    }
  }
  return dist;
}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string raw(text.substr(pos, end - pos));
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream in(raw);
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void syntax(int line, const std::string& what) {
  throw InstanceError(InstanceErrorKind::Syntax, line, what);
}

int parse_int(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    long v = std::stol(tok, &used);
    if (used != tok.size()) syntax(line, "expected integer, got '" + tok + "'");
    return static_cast<int>(v);
  } catch (const std::logic_error&) {
    syntax(line, "expected integer, got '" + tok + "'");
  }
}

Rational parse_number(const std::string& tok, int line) {
  try {
    return parse_rational(tok);
  } catch (const std::invalid_argument& err) {
    syntax(line, err.what());
  }
}

Demand parse_demand_line(const Line& line, int n, Rational* given) {
  if (line.tokens.size() != 4 || line.tokens[0] != "d") {
    syntax(line.number, "expected 'd <s> <t> <distBound>'");
  }
  Demand d;
  d.source = parse_int(line.tokens[1], line.number);
  d.sink = parse_int(line.tokens[2], line.number);
  *given = parse_number(line.tokens[3], line.number);
  d.bound = floor_to_int(*given);
  check_demand_shape(n, d, line.number);
  return d;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const auto lines = tokenize(text);
  std::size_t i = 0;
  if (lines.empty()) syntax(0, "empty instance");
  const Line& header = lines[i++];
  if (header.tokens.size() != 3 || header.tokens[0] != "graph") {
    syntax(header.number, "expected 'graph <n> <m>'");
  }
  const int n = parse_int(header.tokens[1], header.number);
  const int m = parse_int(header.tokens[2], header.number);
  if (n < 1 || m < 0) syntax(header.number, "bad graph header counts");

  std::vector<Edge> edges;
  std::set<std::pair<int, int>> arcs;
  for (int k = 0; k < m; ++k) {
    if (i >= lines.size()) syntax(lines.back().number, "missing edge lines");
    const Line& line = lines[i++];
    if (line.tokens.size() != 5 || line.tokens[0] != "e") {
      syntax(line.number, "expected 'e <tail> <head> <cost> <length>'");
    }
    Edge e;
    e.tail = parse_int(line.tokens[1], line.number);
    e.head = parse_int(line.tokens[2], line.number);
    e.cost = parse_number(line.tokens[3], line.number);
    const Rational length = parse_number(line.tokens[4], line.number);
    if (length.get_den() != 1) {
      throw InstanceError(InstanceErrorKind::NonIntegralLength, line.number,
                          "edge length must be an integer");
    }
    if (length < 1) {
      throw InstanceError(InstanceErrorKind::NonPositiveLength, line.number,
                          "edge length must be >= 1");
    }
    e.length = static_cast<int>(floor_to_int(length));
    check_edge(n, e, line.number);
    if (!arcs.emplace(e.tail, e.head).second) {
      throw InstanceError(InstanceErrorKind::DuplicateArc, line.number, "duplicate arc");
    }
    edges.push_back(std::move(e));
  }

  std::vector<Demand> demands;
  std::vector<BoundAdjustment> adjustments;
  if (i < lines.size()) {
    const Line& line = lines[i++];
    if (line.tokens.size() != 2 || line.tokens[0] != "demands") {
      syntax(line.number, "expected 'demands <k>'");
    }
    const int k = parse_int(line.tokens[1], line.number);
    if (k < 0) syntax(line.number, "negative demand count");
    // Validate bounds line by line so errors carry the line number.
    Instance graph_only(n, edges, {});
    std::vector<std::vector<Length>> dist(n);
    for (int j = 0; j < k; ++j) {
      if (i >= lines.size()) syntax(lines.back().number, "missing demand lines");
      const Line& dl = lines[i++];
      Rational given;
      Demand d = parse_demand_line(dl, n, &given);
      if (dist[d.source].empty()) dist[d.source] = shortest_lengths(graph_only, d.source);
      const Length shortest = dist[d.source][d.sink];
      if (shortest == kUnreachable || d.bound < shortest) {
        throw InstanceError(InstanceErrorKind::DistBelowShortest, dl.number,
                            "distance bound below the shortest " + std::to_string(d.source) +
                                "->" + std::to_string(d.sink) + " distance");
      }
      if (given.get_den() != 1) adjustments.push_back({j, given});
      demands.push_back(d);
    }
  }
  if (i < lines.size()) syntax(lines[i].number, "unexpected trailing record");

  Instance inst(n, std::move(edges), std::move(demands));
  for (auto& adj : adjustments) inst.record_adjustment(std::move(adj));
  return inst;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError(InstanceErrorKind::Syntax, 0, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

namespace {

std::string format_cost(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : format_rational(q);
}

}  // namespace

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << "graph " << inst.num_vertices() << ' ' << inst.num_edges() << '\n';
  for (const auto& e : inst.edges()) {
    out << "e " << e.tail << ' ' << e.head << ' ' << format_cost(e.cost) << ' ' << e.length << '\n';
  }
  out << "demands " << inst.num_demands() << '\n';
  for (const auto& d : inst.demands()) {
    out << "d " << d.source << ' ' << d.sink << ' ' << d.bound << '\n';
  }
  return out.str();
}

std::vector<Demand> parse_arrivals(std::string_view text, int num_vertices) {
  std::vector<Demand> arrivals;
  for (const auto& line : tokenize(text)) {
    Rational given;
    arrivals.push_back(parse_demand_line(line, num_vertices, &given));
  }
  return arrivals;
}

}  // namespace wsp
