#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wsp/instance.hpp"

namespace wsp {

// Shape of a seeded family of random instances.
struct SuiteSpec {
  int count = 200;
  int n_min = 4;
  int n_max = 10;
  int max_edges = 20;
  int k_min = 1;
  int k_max = 5;
  int max_length = 5;
  std::uint64_t seed = 0;
};

struct SuiteCase {
  std::string name;
  Rational slack;
  std::uint64_t seed = 0;
  Instance instance;
};

// Deterministic: case i draws its shape from derive_seed(spec.seed, i) and
// redraws (with the next derived seed) until the edge cap and demand count fit.
std::vector<SuiteCase> make_suite(const SuiteSpec& spec);

// The 200-case feasibility suite and the 50-case sub-suite inside the
// default oracle budget (n <= 8, m <= 14).
SuiteSpec tiny_suite_spec();
SuiteSpec oracle_suite_spec();

// Same graph, demands from the source of demand 0: that source's own demands
// first, then further reachable sinks (bound = distance) up to the original
// demand count.
Instance single_source_variant(const Instance& inst);

}  // namespace wsp
