#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wsp/instance.hpp"

namespace wsp {

// A walk from the query source to the query sink. `cost` is the sum of the
// objective weights, `price` the sum of the second resource when one was used.
struct ConstrainedPath {
  std::vector<int> edges;
  Rational cost;
  Length length = 0;
  std::optional<Rational> price;
};

// Per-edge weight override; empty means "use the instance costs".
using EdgeWeights = std::span<const Rational>;

// table(v, l) = minimum weight of an anchor->v walk (FromAnchor) or v->anchor
// walk (ToAnchor) of total length at most l, for 0 <= l <= cap. Predecessor
// links allow the optimal walk to be rebuilt. Among equal weights the shortest
// length is kept, so rebuilt walks are simple paths.
class CostLengthTable {
 public:
  enum class Direction { FromAnchor, ToAnchor };

  CostLengthTable(const Instance& inst, int anchor, Direction direction, Length cap,
                  EdgeWeights weights = {}, EdgeMask mask = {});

  int anchor() const { return anchor_; }
  Length cap() const { return cap_; }

  // Minimum weight within length budget l (clamped to cap); nullopt when no walk.
  std::optional<Rational> at_most(int v, Length l) const;
  // Length of the walk realising at_most(v, l).
  std::optional<Length> best_length(int v, Length l) const;
  // Edge ids in travel order (anchor -> v, or v -> anchor).
  std::vector<int> walk(int v, Length l) const;

 private:
  std::size_t index(int v, Length l) const { return static_cast<std::size_t>(v) * (cap_ + 1) + l; }

  const Instance* inst_;
  int anchor_;
  Direction direction_;
  Length cap_;
  std::vector<Rational> exact_;
  std::vector<char> reached_;
  std::vector<int> pred_;
  std::vector<Length> best_len_;
};

// Length budget beyond which no simple path can reach.
Length path_length_cap(const Instance& inst);

// Exact restricted shortest path: minimum weight s->t path of length <= T.
std::optional<ConstrainedPath> rsp_exact(const Instance& inst, int s, int t, Length T,
                                         EdgeWeights weights = {});

// Cost scaling-and-rounding with the length dimension kept exact:
// length <= T always, cost <= (1 + eps) * optimum.
std::optional<ConstrainedPath> rsp_fptas(const Instance& inst, int s, int t, Length T, double eps,
                                         EdgeWeights weights = {});

// rsp_exact when T <= exact_cap, rsp_fptas otherwise.
std::optional<ConstrainedPath> rsp_auto(const Instance& inst, int s, int t, Length T, double eps,
                                        Length exact_cap, EdgeWeights weights = {});

struct MinLengthOptions {
  double eps = 0.1;
  // Budgets up to this cap use the exact engine; negative means 10 * n.
  Length exact_cap = -1;
};

// Binary search over the length budget for the shortest path whose cost stays
// within B * (1 + eps). The returned length is at most the minimum length of
// any path with cost <= B.
std::optional<ConstrainedPath> min_length_under_cost(const Instance& inst, int s, int t,
                                                     const Rational& B, MinLengthOptions options = {});

// Two-resource constrained shortest path: minimises `objective` subject to
// length <= T (exact) and sum(resource) <= Z * (1 + eps). The returned
// objective is at most the optimum among paths meeting both budgets exactly.
// Only the resource dimension is rounded (to multiples of eps * Z / n).
std::optional<ConstrainedPath> rcsp(const Instance& inst, int s, int t, Length T,
                                    EdgeWeights objective, EdgeWeights resource,
                                    const Rational& Z, double eps);

// rcsp() with the instance costs as objective and `prices` as the resource.
std::optional<ConstrainedPath> rcsp_price(const Instance& inst, int s, int t, Length T,
                                          EdgeWeights prices, const Rational& Z, double eps);

}  // namespace wsp
