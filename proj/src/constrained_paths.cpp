#include "wsp/constrained_paths.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <queue>
#include <stdexcept>

namespace wsp {

namespace {

const Rational& weight_of(const Instance& inst, EdgeWeights weights, int id) {
  return weights.empty() ? inst.edge(id).cost : weights[id];
}

ConstrainedPath make_path(const Instance& inst, std::vector<int> edges, EdgeWeights weights) {
  ConstrainedPath path;
  path.cost = 0;
  for (int id : edges) {
    path.cost += weight_of(inst, weights, id);
    path.length += inst.edge(id).length;
  }
  path.edges = std::move(edges);
  return path;
}

}  // namespace

CostLengthTable::CostLengthTable(const Instance& inst, int anchor, Direction direction, Length cap,
                                 EdgeWeights weights, EdgeMask mask)
    : inst_(&inst), anchor_(anchor), direction_(direction), cap_(std::max<Length>(cap, 0)) {
  const int n = inst.num_vertices();
  const std::size_t size = static_cast<std::size_t>(n) * (cap_ + 1);
  exact_.assign(size, Rational(0));
  reached_.assign(size, 0);
  pred_.assign(size, -1);
  best_len_.assign(size, -1);

  reached_[index(anchor, 0)] = 1;
  const bool forward = direction == Direction::FromAnchor;
  Rational candidate;
  for (Length l = 1; l <= cap_; ++l) {
    for (int v = 0; v < n; ++v) {
      // Forward: walks anchor -> u -> v, relax over arcs entering v.
      // Backward: walks v -> u -> anchor, relax over arcs leaving v.
      const auto& incident = forward ? inst.in_edges(v) : inst.out_edges(v);
      const std::size_t here = index(v, l);
      for (int id : incident) {
        if (!mask.empty() && !mask[id]) continue;
        const Edge& e = inst.edge(id);
        if (e.length > l) continue;
        const int u = forward ? e.tail : e.head;
        const std::size_t there = index(u, l - e.length);
        if (!reached_[there]) continue;
        candidate = exact_[there] + weight_of(inst, weights, id);
        if (!reached_[here] || candidate < exact_[here]) {
          exact_[here] = candidate;
          reached_[here] = 1;
          pred_[here] = id;
        }
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    Length best = -1;
    for (Length l = 0; l <= cap_; ++l) {
      const std::size_t here = index(v, l);
      if (reached_[here] && (best < 0 || exact_[here] < exact_[index(v, best)])) best = l;
      best_len_[here] = best;
    }
  }
}

std::optional<Rational> CostLengthTable::at_most(int v, Length l) const {
  if (l < 0) return std::nullopt;
  const Length best = best_len_[index(v, std::min(l, cap_))];
  if (best < 0) return std::nullopt;
  return exact_[index(v, best)];
}

std::optional<Length> CostLengthTable::best_length(int v, Length l) const {
  if (l < 0) return std::nullopt;
  const Length best = best_len_[index(v, std::min(l, cap_))];
  if (best < 0) return std::nullopt;
  return best;
}

std::vector<int> CostLengthTable::walk(int v, Length l) const {
  auto best = best_length(v, l);
  if (!best) return {};
  std::vector<int> edges;
  Length at = *best;
  int cur = v;
  const bool forward = direction_ == Direction::FromAnchor;
  while (at > 0) {
    const int id = pred_[index(cur, at)];
    assert(id >= 0);
    edges.push_back(id);
    const Edge& e = inst_->edge(id);
    cur = forward ? e.tail : e.head;
    at -= e.length;
  }
  if (forward) std::reverse(edges.begin(), edges.end());
  return edges;
}

Length path_length_cap(const Instance& inst) {
  return static_cast<Length>(std::max(inst.num_vertices() - 1, 0)) * inst.max_length();
}

std::optional<ConstrainedPath> rsp_exact(const Instance& inst, int s, int t, Length T,
                                         EdgeWeights weights) {
  if (T < 0) return std::nullopt;
  if (s == t) return make_path(inst, {}, weights);
  const Length cap = std::min(T, path_length_cap(inst));
  CostLengthTable table(inst, s, CostLengthTable::Direction::FromAnchor, cap, weights);
  if (!table.at_most(t, cap)) return std::nullopt;
  return make_path(inst, table.walk(t, cap), weights);
}

namespace {

// Shortest-length path inside the zero-weight subgraph, if within T.
std::optional<std::vector<int>> zero_weight_path(const Instance& inst, int s, int t, Length T,
                                                 EdgeWeights weights) {
  std::vector<char> mask(inst.num_edges(), 0);
  for (int id = 0; id < inst.num_edges(); ++id) mask[id] = weight_of(inst, weights, id) == 0;
  CostLengthTable table(inst, s, CostLengthTable::Direction::FromAnchor,
                        std::min(T, path_length_cap(inst)), {}, EdgeMask(mask.data(), mask.size()));
  if (!table.at_most(t, T)) return std::nullopt;
  // All weights are zero under the mask; the table keeps the shortest walk.
  return table.walk(t, T);
}

// Minimum weight ignoring lengths (Dijkstra over weights).
std::optional<Rational> unrestricted_min_weight(const Instance& inst, int s, int t,
                                                EdgeWeights weights) {
  std::vector<std::optional<Rational>> dist(inst.num_vertices());
  std::vector<char> done(inst.num_vertices(), 0);
  dist[s] = Rational(0);
  for (;;) {
    int v = -1;
    for (int u = 0; u < inst.num_vertices(); ++u) {
      if (!done[u] && dist[u] && (v < 0 || *dist[u] < *dist[v])) v = u;
    }
    if (v < 0) break;
    done[v] = 1;
    for (int id : inst.out_edges(v)) {
      const int w = inst.edge(id).head;
      Rational cand = *dist[v] + weight_of(inst, weights, id);
      if (!dist[w] || cand < *dist[w]) dist[w] = cand;
    }
  }
  return dist[t];
}

}  // namespace

std::optional<ConstrainedPath> rsp_fptas(const Instance& inst, int s, int t, Length T, double eps,
                                         EdgeWeights weights) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (T < 0) return std::nullopt;
  if (s == t) return make_path(inst, {}, weights);
  const Length cap = std::min(T, path_length_cap(inst));

  auto lower = unrestricted_min_weight(inst, s, t, weights);
  if (!lower) return std::nullopt;
  Rational lb = *lower;
  if (lb == 0) {
    if (auto zero = zero_weight_path(inst, s, t, cap, weights)) {
      return make_path(inst, std::move(*zero), weights);
    }
    // Every admissible path then pays for at least one positive edge.
    std::optional<Rational> min_positive;
    for (int id = 0; id < inst.num_edges(); ++id) {
      const Rational& w = weight_of(inst, weights, id);
      if (w > 0 && (!min_positive || w < *min_positive)) min_positive = w;
    }
    if (!min_positive) return std::nullopt;
    lb = *min_positive;
  }

  // theta = eps * lb / (n - 1); rounding loses at most theta per edge of a
  // simple path, i.e. at most eps * lb <= eps * OPT overall.
  const int hops = std::max(inst.num_vertices() - 1, 1);
  const Rational theta = from_double(eps) * lb / hops;
  std::vector<std::int64_t> scaled(inst.num_edges());
  for (int id = 0; id < inst.num_edges(); ++id) {
    const Rational ratio = weight_of(inst, weights, id) / theta;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
    if (!q.fits_slong_p() || q > (mpz_class(1) << 40)) {
      return rsp_exact(inst, s, t, T, weights);
    }
    scaled[id] = q.get_si();
  }

  const int n = inst.num_vertices();
  constexpr std::int64_t kNone = -1;
  auto at = [&](int v, Length l) { return static_cast<std::size_t>(v) * (cap + 1) + l; };
  std::vector<std::int64_t> best(static_cast<std::size_t>(n) * (cap + 1), kNone);
  std::vector<int> pred(best.size(), -1);
  best[at(s, 0)] = 0;
  for (Length l = 1; l <= cap; ++l) {
    for (int v = 0; v < n; ++v) {
      for (int id : inst.in_edges(v)) {
        const Edge& e = inst.edge(id);
        if (e.length > l) continue;
        const std::int64_t from = best[at(e.tail, l - e.length)];
        if (from == kNone) continue;
        const std::int64_t cand = from + scaled[id];
        if (best[at(v, l)] == kNone || cand < best[at(v, l)]) {
          best[at(v, l)] = cand;
          pred[at(v, l)] = id;
        }
      }
    }
  }
  Length pick = -1;
  for (Length l = 0; l <= cap; ++l) {
    if (best[at(t, l)] != kNone && (pick < 0 || best[at(t, l)] < best[at(t, pick)])) pick = l;
  }
  if (pick < 0) return std::nullopt;
  std::vector<int> edges;
  int cur = t;
  for (Length l = pick; l > 0;) {
    const int id = pred[at(cur, l)];
    edges.push_back(id);
    cur = inst.edge(id).tail;
    l -= inst.edge(id).length;
  }
  std::reverse(edges.begin(), edges.end());
  return make_path(inst, std::move(edges), weights);
}

std::optional<ConstrainedPath> rsp_auto(const Instance& inst, int s, int t, Length T, double eps,
                                        Length exact_cap, EdgeWeights weights) {
  if (T <= exact_cap) return rsp_exact(inst, s, t, T, weights);
  return rsp_fptas(inst, s, t, T, eps, weights);
}

std::optional<ConstrainedPath> min_length_under_cost(const Instance& inst, int s, int t,
                                                     const Rational& B, MinLengthOptions options) {
  if (B < 0) throw std::invalid_argument("cost budget must be non-negative");
  if (s == t) return make_path(inst, {}, {});
  const Length exact_cap = options.exact_cap < 0 ? 10 * static_cast<Length>(inst.num_vertices())
                                                 : options.exact_cap;
  const Rational budget = B * (1 + from_double(options.eps));
  auto probe = [&](Length T) -> std::optional<ConstrainedPath> {
    auto path = rsp_auto(inst, s, t, T, options.eps, exact_cap);
    if (path && path->cost <= budget) return path;
    return std::nullopt;
  };

  Length lo = 1;
  Length hi = static_cast<Length>(inst.num_vertices()) * inst.max_length();
  auto found = probe(hi);
  if (!found) return std::nullopt;
  while (lo < hi) {
    const Length mid = lo + (hi - lo) / 2;
    if (auto path = probe(mid)) {
      hi = mid;
      found = std::move(path);
    } else {
      lo = mid + 1;
    }
  }
  return found;
}

std::optional<ConstrainedPath> rcsp(const Instance& inst, int s, int t, Length T,
                                    EdgeWeights objective, EdgeWeights resource,
                                    const Rational& Z, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (Z < 0) throw std::invalid_argument("resource budget must be non-negative");
  if (T < 0) return std::nullopt;

  auto finish = [&](std::vector<int> edges) {
    ConstrainedPath path = make_path(inst, std::move(edges), objective);
    Rational price = 0;
    for (int id : path.edges) price += weight_of(inst, resource, id);
    path.price = price;
    return path;
  };
  if (s == t) return finish({});

  const int n = inst.num_vertices();
  const Length cap = std::min(T, path_length_cap(inst));

  // Resource buckets: floor(r / delta) with delta = eps * Z / n. A simple path
  // admitted with bucket sum <= Z / delta has true resource below Z (1 + eps).
  std::vector<int> bucket(inst.num_edges(), -1);
  int bucket_cap = 0;
  if (Z == 0) {
    for (int id = 0; id < inst.num_edges(); ++id) {
      if (weight_of(inst, resource, id) == 0) bucket[id] = 0;
    }
  } else {
    const Rational delta = from_double(eps) * Z / n;
    bucket_cap = static_cast<int>(floor_to_int(Z / delta));
    for (int id = 0; id < inst.num_edges(); ++id) {
      // compare floored units: sum of floors <= floor(Z / delta) for any path within Z
      const std::int64_t units = floor_to_int(weight_of(inst, resource, id) / delta);
      if (units > bucket_cap) continue;
      bucket[id] = static_cast<int>(units);
    }
  }

  struct Label {
    int vertex;
    Length length;
    int bucket;
    Rational cost;
    int parent;
    int edge;
    bool alive;
  };
  std::vector<Label> labels;
  std::vector<std::vector<int>> at_vertex(n);
  std::vector<std::vector<int>> by_length(cap + 1);

  labels.push_back({s, 0, 0, Rational(0), -1, -1, true});
  at_vertex[s].push_back(0);
  by_length[0].push_back(0);

  for (Length l = 0; l <= cap; ++l) {
    for (std::size_t qi = 0; qi < by_length[l].size(); ++qi) {
      const int li = by_length[l][qi];
      if (!labels[li].alive) continue;
      const int v = labels[li].vertex;
      if (v == t) continue;
      for (int id : inst.out_edges(v)) {
        if (bucket[id] < 0) continue;
        const Edge& e = inst.edge(id);
        const Length nl = labels[li].length + e.length;
        const int nb = labels[li].bucket + bucket[id];
        if (nl > cap || nb > bucket_cap) continue;
        Rational nc = labels[li].cost + weight_of(inst, objective, id);
        const int w = e.head;
        bool dominated = false;
        for (int other : at_vertex[w]) {
          const Label& o = labels[other];
          if (o.alive && o.length <= nl && o.bucket <= nb && o.cost <= nc) {
            dominated = true;
            break;
          }
        }
        if (dominated) continue;
        auto& bucket_list = at_vertex[w];
        std::erase_if(bucket_list, [&](int other) {
          Label& o = labels[other];
          if (nl <= o.length && nb <= o.bucket && nc <= o.cost) {
            o.alive = false;
            return true;
          }
          return false;
        });
        const int ni = static_cast<int>(labels.size());
        labels.push_back({w, nl, nb, std::move(nc), li, id, true});
        bucket_list.push_back(ni);
        by_length[nl].push_back(ni);
      }
    }
  }

  int pick = -1;
  for (int li : at_vertex[t]) {
    const Label& c = labels[li];
    if (pick < 0) {
      pick = li;
      continue;
    }
    const Label& p = labels[pick];
    if (c.cost < p.cost || (c.cost == p.cost && (c.length < p.length ||
                                                 (c.length == p.length && c.bucket < p.bucket)))) {
      pick = li;
    }
  }
  if (pick < 0) return std::nullopt;
  std::vector<int> edges;
  for (int li = pick; labels[li].parent >= 0; li = labels[li].parent) edges.push_back(labels[li].edge);
  std::reverse(edges.begin(), edges.end());
  return finish(std::move(edges));
}

std::optional<ConstrainedPath> rcsp_price(const Instance& inst, int s, int t, Length T,
                                          EdgeWeights prices, const Rational& Z, double eps) {
  if (static_cast<int>(prices.size()) != inst.num_edges()) {
    throw std::invalid_argument("rcsp_price needs one price per edge");
  }
  return rcsp(inst, s, t, T, {}, prices, Z, eps);
}

}  // namespace wsp
