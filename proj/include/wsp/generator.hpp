#pragma once

#include <cstdint>
#include <stdexcept>

#include "wsp/instance.hpp"

namespace wsp {

struct GeneratorParams {
  int n = 8;
  double edge_probability = 0.3;
  int cost_min = 1;
  int cost_max = 10;
  int max_length = 5;
  int demands = 3;
  // Distance bounds are ceil(slack * d_G(s, t)); slack = 1 gives preservers.
  Rational slack = 1;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Erdos-Renyi style digraph with integral costs in [cost_min, cost_max] and
// lengths in [1, max_length], plus `demands` distinct reachable pairs.
// Throws GenerationError ("RequestedDemandsUnreachable") when too few
// reachable pairs exist. Deterministic for a fixed seed.
Instance gen_random_instance(const GeneratorParams& params, std::uint64_t seed);

}  // namespace wsp
