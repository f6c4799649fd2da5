#pragma once

#include <vector>

#include "wsp/rational.hpp"

namespace wsp {

struct FlowArc {
  int tail = 0;
  int head = 0;
  Rational capacity;
  int id = -1;  // caller's label, echoed back in the cut
};

struct MinCut {
  Rational value;
  std::vector<char> source_side;  // per vertex
  std::vector<int> arcs;          // ids of arcs leaving the source side, ascending
};

// Edmonds-Karp on exact capacities. Every arc must have capacity >= 0.
MinCut min_cut(int n, const std::vector<FlowArc>& arcs, int source, int sink);

}  // namespace wsp
