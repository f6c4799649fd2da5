#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wsp/rational.hpp"

namespace wsp {

using Length = std::int64_t;
inline constexpr Length kUnreachable = std::numeric_limits<Length>::max() / 4;

struct Edge {
  int tail = 0;
  int head = 0;
  Rational cost;
  int length = 1;
};

struct Demand {
  int source = 0;
  int sink = 0;
  Length bound = 0;
};

enum class InstanceErrorKind {
  Syntax,
  VertexOutOfRange,
  NonPositiveLength,
  NonIntegralLength,
  NegativeCost,
  SelfLoop,
  DuplicateArc,
  SameEndpoints,
  DistBelowShortest,
};

const char* to_string(InstanceErrorKind kind);

class InstanceError : public std::runtime_error {
 public:
  InstanceError(InstanceErrorKind kind, int line, const std::string& what);

  InstanceErrorKind kind() const { return kind_; }
  // 1-based line of the offending record, 0 when not parsed from text.
  int line() const { return line_; }

 private:
  InstanceErrorKind kind_;
  int line_;
};

// A distance bound that was given as a non-integral rational and floored.
struct BoundAdjustment {
  int demand = 0;
  Rational given;
};

// Directed graph with costs and integral lengths plus length-bounded demands.
// Immutable after construction; edge ids are indices into edges().
class Instance {
 public:
  // Validates every invariant; throws InstanceError.
  Instance(int n, std::vector<Edge> edges, std::vector<Demand> demands);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_demands() const { return static_cast<int>(demands_.size()); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[id]; }
  const std::vector<Demand>& demands() const { return demands_; }
  const Demand& demand(int id) const { return demands_[id]; }

  const std::vector<int>& out_edges(int v) const { return out_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_[v]; }

  int max_length() const { return max_length_; }
  Rational total_cost() const;

  // Same graph, different demand set (validated against the graph).
  Instance with_demands(std::vector<Demand> demands) const;
  // Every arc flipped; edge i of the result is edge i of this graph reversed.
  // Demands are flipped as well.
  Instance reversed() const;

  const std::vector<BoundAdjustment>& bound_adjustments() const { return adjustments_; }
  void record_adjustment(BoundAdjustment adjustment) { adjustments_.push_back(std::move(adjustment)); }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<Demand> demands_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  int max_length_ = 0;
  std::vector<BoundAdjustment> adjustments_;
};

// Edge filter over instance edge ids; an empty span admits every edge.
using EdgeMask = std::span<const char>;

// Single-source shortest lengths (Dijkstra). With `reverse`, distances are
// *to* `root` along arcs. Unreachable vertices get kUnreachable.
std::vector<Length> shortest_lengths(const Instance& inst, int root, EdgeMask mask = {},
                                     bool reverse = false);

Instance parse_instance(std::string_view text);
Instance read_instance_file(const std::string& path);
std::string write_instance(const Instance& inst);

// One arrival per line in `d <s> <t> <bound>` syntax; '#' comments allowed.
std::vector<Demand> parse_arrivals(std::string_view text, int num_vertices);

}  // namespace wsp
