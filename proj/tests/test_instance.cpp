#include <doctest.h>

#include <algorithm>

#include "support/brute.hpp"
#include "wsp/constrained_paths.hpp"
#include "wsp/generator.hpp"
#include "wsp/local_graph.hpp"
#include "wsp/solution.hpp"

using namespace wsp;

namespace {

InstanceErrorKind parse_error_kind(const std::string& text, int* line = nullptr) {
  try {
    parse_instance(text);
  } catch (const InstanceError& err) {
    if (line) *line = err.line();
    return err.kind();
  }
  FAIL("no error for: " << text);
  return InstanceErrorKind::Syntax;
}

}  // namespace

TEST_CASE("parse the basic example") {
  auto inst = parse_instance("graph 2 1\ne 0 1 3/2 4\ndemands 1\nd 0 1 4\n");
  CHECK(inst.num_vertices() == 2);
  REQUIRE(inst.num_edges() == 1);
  CHECK(inst.edge(0).cost == Rational(3, 2));
  CHECK(inst.edge(0).length == 4);
  REQUIRE(inst.num_demands() == 1);
  CHECK(inst.demand(0).bound == 4);
}

TEST_CASE("demand section may be empty or missing") {
  CHECK(parse_instance("graph 2 1\ne 0 1 1 1\ndemands 0\n").num_demands() == 0);
  CHECK(parse_instance("graph 2 1\ne 0 1 1 1\n").num_demands() == 0);
}

TEST_CASE("bound below the shortest distance is rejected with its line") {
  int line = -1;
  CHECK(parse_error_kind("graph 2 1\ne 0 1 1 4\ndemands 1\nd 0 1 2\n", &line) ==
        InstanceErrorKind::DistBelowShortest);
  CHECK(line == 4);
  // unreachable sink
  CHECK(parse_error_kind("graph 3 1\ne 0 1 1 1\ndemands 1\nd 0 2 9\n") ==
        InstanceErrorKind::DistBelowShortest);
}

TEST_CASE("error kinds") {
  CHECK(parse_error_kind("graph 2 1\ne 0 2 1 1\n") == InstanceErrorKind::VertexOutOfRange);
  CHECK(parse_error_kind("graph 2 1\ne 0 1 1 0\n") == InstanceErrorKind::NonPositiveLength);
  CHECK(parse_error_kind("graph 2 1\ne 0 1 1 3/2\n") == InstanceErrorKind::NonIntegralLength);
  CHECK(parse_error_kind("graph 2 1\ne 0 1 -1 1\n") == InstanceErrorKind::NegativeCost);
  CHECK(parse_error_kind("graph 2 1\ne 1 1 1 1\n") == InstanceErrorKind::SelfLoop);
  CHECK(parse_error_kind("graph 2 2\ne 0 1 1 1\ne 0 1 2 1\n") == InstanceErrorKind::DuplicateArc);
  CHECK(parse_error_kind("graph 2 1\ne 0 1 1 1\ndemands 1\nd 1 1 0\n") ==
        InstanceErrorKind::SameEndpoints);
}

TEST_CASE("syntax errors carry line numbers") {
  int line = -1;
  CHECK(parse_error_kind("# header comment\ngraph 2 1\ne 0 1 x 1\n", &line) ==
        InstanceErrorKind::Syntax);
  CHECK(line == 3);
  CHECK(parse_error_kind("graph 2 2\ne 0 1 1 1\n") == InstanceErrorKind::Syntax);
  CHECK(parse_error_kind("") == InstanceErrorKind::Syntax);
  CHECK(parse_error_kind("graph 2 0\nbogus\n") == InstanceErrorKind::Syntax);
  CHECK(parse_error_kind("graph 2 1\ne 0 1 1 1\ndemands 1\nd 0 1 1\nd 0 1 1\n") ==
        InstanceErrorKind::Syntax);
}

TEST_CASE("rational text forms") {
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("-3") == -3);
  CHECK(parse_rational("010") == 10);
  CHECK(parse_rational("09/012") == Rational(3, 4));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("2.5") == Rational(5, 2));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK_THROWS_AS(parse_rational("1e3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK(format_rational(parse_rational("6/4")) == "3/2");
  CHECK(format_rational(Rational(2)) == "2/1");
  CHECK(floor_to_int(Rational(-1, 2)) == -1);
  CHECK(ceil_to_int(Rational(7, 2)) == 4);
  CHECK(from_double(0.375) == Rational(3, 8));
}

TEST_CASE("decimal costs and rational bounds") {
  auto inst = parse_instance("graph 3 2\ne 0 1 0.25 1\ne 1 2 1 2\ndemands 1\nd 0 2 7/2\n");
  CHECK(inst.edge(0).cost == Rational(1, 4));
  CHECK(inst.demand(0).bound == 3);
  REQUIRE(inst.bound_adjustments().size() == 1);
  CHECK(inst.bound_adjustments()[0].given == Rational(7, 2));
}

TEST_CASE("write and parse round trip") {
  GeneratorParams p;
  p.n = 7;
  p.edge_probability = 0.4;
  p.demands = 3;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto a = gen_random_instance(p, seed);
    auto b = parse_instance(write_instance(a));
    CHECK(write_instance(b) == write_instance(a));
  }
}

TEST_CASE("verify: all edges, empty set, broken chain") {
  auto chain = parse_instance("graph 3 2\ne 0 1 1 1\ne 1 2 1 1\ndemands 1\nd 0 2 2\n");
  CHECK(verify_edges(chain, {0, 1}).all_resolved);
  auto empty = verify_edges(chain, {});
  CHECK_FALSE(empty.all_resolved);
  CHECK(empty.resolved_count() == 0);
  auto broken = verify_edges(chain, {0});
  CHECK_FALSE(broken.demands[0].resolved);
  CHECK(broken.demands[0].attained == kUnreachable);

  GeneratorParams p;
  p.n = 8;
  p.demands = 4;
  p.slack = Rational(3, 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = gen_random_instance(p, seed);
    CHECK(verify_edges(inst, brute::all_edges(inst)).all_resolved);
  }
}

TEST_CASE("solution text round trip") {
  auto inst = parse_instance("graph 3 3\ne 0 1 1 1\ne 1 2 1/3 1\ne 0 2 5 3\ndemands 1\nd 0 2 2\n");
  Solution sol;
  add_edges(sol, inst, std::vector<int>{0, 1}, Phase::Thick);
  refresh_achieved(inst, sol);
  auto back = parse_solution(write_solution(inst, sol), inst);
  CHECK(back.edges == sol.edges);
  CHECK(back.total_cost == Rational(4, 3));
  CHECK(back.phases.at(1) == Phase::Thick);
}

TEST_CASE("local graph examples") {
  auto single = parse_instance("graph 2 1\ne 0 1 1 1\ndemands 1\nd 0 1 1\n");
  auto lg = local_graph(single, 0, Rational(1));
  CHECK(lg.vertices == std::set<int>{0, 1});
  CHECK(local_graph(single, 0, Rational(1, 2)).vertices.empty());

  // cheap-long 0-1-2-4 (cost 3, length 3) vs costly-short 0-3-4 (cost 10, length 2)
  auto diamond = parse_instance(
      "graph 5 5\ne 0 1 1 1\ne 1 2 1 1\ne 2 4 1 1\ne 0 3 5 1\ne 3 4 5 1\ndemands 1\nd 0 4 3\n");
  auto cheap = local_graph(diamond, 0, Rational(5));
  CHECK(cheap.vertices == std::set<int>{0, 1, 2, 4});
  CHECK(cheap.edges == std::set<int>{0, 1, 2});
  std::set<int> from_paths;
  for (const auto& p : brute::simple_paths(diamond, 0, 4)) {
    if (p.length <= 3 && p.cost <= 5) from_paths.insert(p.vertices.begin(), p.vertices.end());
  }
  CHECK(from_paths == cheap.vertices);
}

TEST_CASE("local graph equals walk enumeration and contains every simple path") {
  GeneratorParams p;
  p.n = 6;
  p.edge_probability = 0.35;
  p.max_length = 2;
  p.cost_min = 0;
  p.cost_max = 4;
  p.demands = 3;
  p.slack = 2;
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance inst = [&] {
      try {
        return gen_random_instance(p, seed);
      } catch (const GenerationError&) {
        return parse_instance("graph 2 1\ne 0 1 1 1\ndemands 1\nd 0 1 1\n");
      }
    }();
    for (int d = 0; d < inst.num_demands(); ++d) {
      for (int budget : {0, 2, 5, 100}) {
        const auto& dem = inst.demand(d);
        auto lg = local_graph(inst, d, Rational(budget));
        std::set<int> walk_v, walk_e, path_v;
        // the tables stop at the simple-path length cap
        const Length cap = std::min<Length>(dem.bound, path_length_cap(inst));
        brute::walks(inst, dem.source, dem.sink, cap, budget, [&](const brute::PathInfo& w) {
          walk_v.insert(w.vertices.begin(), w.vertices.end());
          walk_e.insert(w.edges.begin(), w.edges.end());
        });
        for (const auto& sp : brute::simple_paths(inst, dem.source, dem.sink)) {
          if (sp.length <= dem.bound && sp.cost <= budget) {
            path_v.insert(sp.vertices.begin(), sp.vertices.end());
          }
        }
        CHECK(lg.vertices == walk_v);
        CHECK(lg.edges == walk_e);
        CHECK(std::includes(lg.vertices.begin(), lg.vertices.end(), path_v.begin(), path_v.end()));
        ++checked;
      }
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("classification at n = 32") {
  // path 0-1-2-3 with zero costs plus an isolated pair 4 -> 5 of cost 5
  std::string text = "graph 32 4\ne 0 1 0 1\ne 1 2 0 1\ne 2 3 0 1\ne 4 5 5 1\ndemands 2\nd 0 3 3\nd 4 5 1\n";
  auto inst = parse_instance(text);
  auto c = classify_pairs(inst, Rational(32));
  CHECK(c.beta == doctest::Approx(8.0));
  CHECK(c.threshold == 4);
  REQUIRE(c.cost_budget);
  CHECK(*c.cost_budget == 2);
  CHECK(c.thick == std::vector<int>{0});
  CHECK(c.thin == std::vector<int>{1});  // cost 5 > L = 2: empty local graph

  // larger tau only grows local graphs
  auto wide = classify_pairs(inst, Rational(80));
  CHECK(wide.thick == std::vector<int>{0});
  CHECK(snapped_pow(32, 0.8) == 16.0);
}

TEST_CASE("generator contracts") {
  GeneratorParams p;
  p.n = 8;
  CHECK(write_instance(gen_random_instance(p, 7)) == write_instance(gen_random_instance(p, 7)));

  p.slack = 1;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = gen_random_instance(p, seed);
    for (const auto& d : inst.demands()) {
      CHECK(shortest_lengths(inst, d.source)[d.sink] == d.bound);
    }
  }

  GeneratorParams complete;
  complete.n = 6;
  complete.edge_probability = 1.0;
  auto full = gen_random_instance(complete, 3);
  CHECK(full.num_edges() == 30);

  GeneratorParams sparse;
  sparse.n = 4;
  sparse.edge_probability = 0.0;
  sparse.demands = 1;
  CHECK_THROWS_AS(gen_random_instance(sparse, 1), GenerationError);
}

TEST_CASE("reversed graph flips arcs and demands") {
  auto inst = parse_instance("graph 3 2\ne 0 1 2 1\ne 1 2 3 2\ndemands 1\nd 0 2 3\n");
  auto rev = inst.reversed();
  CHECK(rev.edge(1).tail == 2);
  CHECK(rev.edge(1).head == 1);
  CHECK(rev.demand(0).source == 2);
  CHECK(rev.demand(0).sink == 0);
  CHECK(shortest_lengths(rev, 2)[0] == 3);
}
