#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "wsp/instance.hpp"

namespace wsp {

struct SampleSet {
  std::vector<int> draws;     // with replacement, in draw order
  std::vector<int> distinct;  // sorted, deduplicated
  std::uint64_t seed = 0;
};

// ceil(factor * beta * ln n); factor 3 for the pairwise hitting set.
int hitting_sample_size(int n, double beta, double factor = 3.0);

// `hitting_sample_size(n, beta, factor)` independent uniform draws from V.
SampleSet sample_hitters(int n, double beta, std::uint64_t seed, double factor = 3.0);

struct ThickResult {
  std::set<int> edges;
  SampleSet samples;
  std::vector<int> sources;  // active thick-pair sources
  std::vector<int> sinks;
  Rational cost;
  // |distinct samples| * (|S| + |T|) * L * (1 + eps)
  Rational cost_bound;
  std::vector<int> unresolved;  // thick pairs the returned edges do not resolve
};

// For each distinct sample u: the shortest cheap s->u path for every active
// source s and u->t path for every active sink t (cost budget L (1 + eps)).
ThickResult resolve_thick_with(const Instance& inst, const std::vector<int>& thick_pairs,
                               const Rational& cost_budget, double eps, const SampleSet& samples);

// Samples with beta = n^(3/5) and uses L = tau / n^(4/5).
ThickResult resolve_thick(const Instance& inst, const std::vector<int>& thick_pairs,
                          const Rational& tau, double eps, std::uint64_t seed);

}  // namespace wsp
