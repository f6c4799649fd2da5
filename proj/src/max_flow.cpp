#include "wsp/max_flow.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace wsp {

MinCut min_cut(int n, const std::vector<FlowArc>& arcs, int source, int sink) {
  if (source == sink) throw std::invalid_argument("min_cut needs distinct terminals");
  // Residual graph: arc 2i is forward, 2i+1 its reverse.
  std::vector<int> to;
  std::vector<Rational> residual;
  std::vector<std::vector<int>> adj(n);
  for (const FlowArc& a : arcs) {
    if (sgn(a.capacity) < 0) throw std::invalid_argument("negative capacity");
    adj[a.tail].push_back(static_cast<int>(to.size()));
    to.push_back(a.head);
    residual.push_back(a.capacity);
    adj[a.head].push_back(static_cast<int>(to.size()));
    to.push_back(a.tail);
    residual.push_back(0);
  }

  MinCut cut;
  cut.value = 0;
  std::vector<int> via(n);
  for (;;) {
    std::fill(via.begin(), via.end(), -1);
    std::vector<char> seen(n, 0);
    seen[source] = 1;
    std::deque<int> queue{source};
    while (!queue.empty() && !seen[sink]) {
      const int v = queue.front();
      queue.pop_front();
      for (int r : adj[v]) {
        if (seen[to[r]] || sgn(residual[r]) <= 0) continue;
        seen[to[r]] = 1;
        via[to[r]] = r;
        queue.push_back(to[r]);
      }
    }
    if (!seen[sink]) {
      cut.source_side = std::move(seen);
      break;
    }
    Rational push = residual[via[sink]];
    for (int v = sink; v != source; v = to[via[v] ^ 1]) push = std::min(push, residual[via[v]]);
    for (int v = sink; v != source; v = to[via[v] ^ 1]) {
      residual[via[v]] -= push;
      residual[via[v] ^ 1] += push;
    }
    cut.value += push;
  }
  for (const FlowArc& a : arcs) {
    if (cut.source_side[a.tail] && !cut.source_side[a.head]) cut.arcs.push_back(a.id);
  }
  std::sort(cut.arcs.begin(), cut.arcs.end());
  return cut;
}

}  // namespace wsp
