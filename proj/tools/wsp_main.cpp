// wsp: solve, verify, generate and benchmark weighted spanner instances.
//
// Exit codes: 0 ok, 1 infeasible solution, 2 parse error, 3 invalid
// instance, 4 internal error, 5 oracle budget exceeded.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wsp/constrained_paths.hpp"
#include "wsp/generator.hpp"
#include "wsp/instance.hpp"
#include "wsp/oracle.hpp"
#include "wsp/pipeline.hpp"
#include "wsp/solution.hpp"
#include "wsp/suite.hpp"

namespace {

enum Exit { kOk = 0, kInfeasible = 1, kParse = 2, kInvalid = 3, kInternal = 4, kBudget = 5 };

struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseFailure("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void append_manifest(const std::string& path, const wsp::Manifest& manifest) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "run\n" << manifest.text() << "end\n";
}

wsp::JtBackend parse_backend(const std::string& name) {
  if (name == "exact") return wsp::JtBackend::Exact;
  if (name == "greedy") return wsp::JtBackend::Greedy;
  return wsp::JtBackend::Auto;
}

void print_report(std::ostream& os, const wsp::Instance& inst, const wsp::VerifyReport& report) {
  for (const auto& check : report.demands) {
    const auto& d = inst.demand(check.demand);
    os << "demand " << check.demand << " " << d.source << " " << d.sink << " " << d.bound << " ";
    if (check.attained == wsp::kUnreachable) {
      os << "inf";
    } else {
      os << check.attained;
    }
    os << (check.resolved ? " resolved" : " BROKEN") << "\n";
  }
  os << "cost " << wsp::format_rational(report.total_cost) << "\n";
  os << "resolved " << report.resolved_count() << "/" << report.demands.size() << "\n";
}

struct SolveArgs {
  std::string input;
  std::string mode = "pairwise";
  double eps = 0.1;
  std::uint64_t seed = 0;
  std::string arrivals;
  std::string out;
  std::string manifest;
  std::string backend = "auto";
  int threads = 1;
};

int cmd_solve(const SolveArgs& args) {
  const wsp::Instance inst = wsp::read_instance_file(args.input);
  wsp::Manifest manifest;
  manifest.add("input " + args.input);
  const wsp::JtBackend backend = parse_backend(args.backend);

  wsp::Solution sol;
  std::optional<wsp::Instance> target;
  if (args.mode == "pairwise") {
    wsp::PairwiseOptions options;
    options.eps = args.eps;
    options.seed = args.seed;
    options.backend = backend;
    options.threads = args.threads;
    sol = wsp::solve_pairwise(inst, options, &manifest);
    target = inst;
  } else if (args.mode == "allpair-preserver") {
    wsp::PreserverOptions options;
    options.seed = args.seed;
    options.backend = backend;
    sol = wsp::solve_allpair_preserver(inst, options, &manifest);
    target = wsp::allpair_instance(inst);
  } else if (args.mode == "single-source") {
    sol = wsp::solve_single_source(inst, backend, &manifest);
    target = inst;
  } else if (args.mode == "online") {
    std::vector<wsp::Demand> arrivals = inst.demands();
    if (!args.arrivals.empty()) {
      arrivals = wsp::parse_arrivals(read_file(args.arrivals), inst.num_vertices());
    }
    auto result = wsp::online_solve(inst, arrivals, backend, &manifest);
    sol = std::move(result.solution);
    target = std::move(result.instance);
  } else {
    throw ParseFailure("unknown mode " + args.mode);
  }

  const auto report = wsp::verify_solution(*target, sol);
  if (!report.all_resolved) {
    std::cerr << "internal error: solver output leaves demands unresolved\n";
    return kInternal;
  }
  manifest.add("final cost " + wsp::format_rational(sol.total_cost) + " edges " +
               std::to_string(sol.edges.size()));
  write_output(args.out, wsp::write_solution(*target, sol));
  append_manifest(args.manifest, manifest);
  return kOk;
}

wsp::Instance target_instance(const std::string& path, bool allpair) {
  wsp::Instance inst = wsp::read_instance_file(path);
  return allpair ? wsp::allpair_instance(inst) : inst;
}

int cmd_verify(const std::string& instance_path, const std::string& solution_path, bool allpair) {
  const wsp::Instance inst = target_instance(instance_path, allpair);
  const wsp::Solution sol = wsp::parse_solution(read_file(solution_path), inst);
  const auto report = wsp::verify_solution(inst, sol);
  print_report(std::cout, inst, report);
  return report.all_resolved ? kOk : kInfeasible;
}

struct OracleArgs {
  std::string input;
  std::string against;
  bool allpair = false;
  int max_edges = 14;
  int max_vertices = 8;
  double time_limit = 0;
};

int cmd_oracle(const OracleArgs& args) {
  const wsp::Instance inst = target_instance(args.input, args.allpair);
  wsp::OracleBudget budget;
  budget.max_edges = args.max_edges;
  budget.max_vertices = args.max_vertices;
  budget.time_limit_seconds = args.time_limit;
  const wsp::Solution opt = wsp::exact_opt(inst, budget);
  std::cout << "opt " << wsp::format_rational(opt.total_cost) << "\n";
  std::cout << "opt_edges";
  for (int id : opt.edges) std::cout << " " << id;
  std::cout << "\n";
  if (!args.against.empty()) {
    const wsp::Solution sol = wsp::parse_solution(read_file(args.against), inst);
    const auto report = wsp::verify_solution(inst, sol);
    std::cout << "candidate " << wsp::format_rational(sol.total_cost) << "\n";
    if (sgn(opt.total_cost) > 0) {
      std::cout << "ratio " << wsp::format_rational(sol.total_cost / opt.total_cost) << "\n";
    } else {
      std::cout << "ratio " << (sgn(sol.total_cost) == 0 ? "1/1" : "inf") << "\n";
    }
    if (!report.all_resolved) {
      std::cout << "candidate infeasible\n";
      return kInfeasible;
    }
  }
  return kOk;
}

struct GenArgs {
  wsp::GeneratorParams params;
  std::string slack = "1";
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(GenArgs args) {
  args.params.slack = wsp::parse_rational(args.slack);
  const wsp::Instance inst = wsp::gen_random_instance(args.params, args.seed);
  write_output(args.out, wsp::write_instance(inst));
  return kOk;
}

struct BenchArgs {
  std::string suite = "tiny";
  int count = -1;
  double eps = 0.1;
  std::uint64_t seed = 0;
};

int cmd_bench(const BenchArgs& args) {
  wsp::SuiteSpec spec;
  if (args.suite == "tiny") {
    spec = wsp::tiny_suite_spec();
  } else if (args.suite == "oracle") {
    spec = wsp::oracle_suite_spec();
  } else {
    throw ParseFailure("unknown suite " + args.suite);
  }
  if (args.count >= 0) spec.count = args.count;
  const auto cases = wsp::make_suite(spec);
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  std::cout << "case,n,m,k,mode,cost,opt,ratio,ms\n";
  int failures = 0;
  for (const auto& c : cases) {
    const wsp::Instance& inst = c.instance;
    std::optional<wsp::Rational> opt;
    if (inst.num_vertices() <= 8 && inst.num_edges() <= 14) opt = wsp::exact_opt(inst).total_cost;

    auto row = [&](const std::string& mode, const wsp::Instance& target, auto&& run) {
      const auto t0 = clock::now();
      const wsp::Solution sol = run();
      const double ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
      if (!wsp::verify_solution(target, sol).all_resolved) ++failures;
      std::cout << c.name << "," << inst.num_vertices() << "," << inst.num_edges() << ","
                << target.num_demands() << "," << mode << "," << wsp::format_rational(sol.total_cost);
      if (opt && &target == &inst) {
        std::cout << "," << wsp::format_rational(*opt) << ",";
        if (sgn(*opt) > 0) {
          std::cout << wsp::to_double(sol.total_cost / *opt);
        } else {
          std::cout << (sgn(sol.total_cost) == 0 ? "1" : "inf");
        }
      } else {
        std::cout << ",,";
      }
      std::cout << "," << ms << "\n";
    };

    wsp::PairwiseOptions options;
    options.eps = args.eps;
    options.seed = args.seed;
    row("pairwise", inst, [&] { return wsp::solve_pairwise(inst, options); });
    const wsp::Instance ss = wsp::single_source_variant(inst);
    row("single-source", ss, [&] { return wsp::solve_single_source(ss); });
    row("online", inst, [&] { return wsp::online_solve(inst, inst.demands()).solution; });
    const wsp::Instance all = wsp::allpair_instance(inst);
    wsp::PreserverOptions preserver;
    preserver.seed = args.seed;
    row("allpair-preserver", all, [&] { return wsp::solve_allpair_preserver(inst, preserver); });
  }
  const double seconds = std::chrono::duration<double>(clock::now() - start).count();
  std::cout << "# cases " << cases.size() << " seconds " << seconds << " infeasible " << failures
            << "\n";
  return failures == 0 ? kOk : kInternal;
}

struct PathArgs {
  std::string input;
  int s = 0;
  int t = 0;
  long long T = 0;
  double eps = 0.1;
  bool fptas = false;
  std::string Z = "0";
  std::vector<std::string> prices;
};

void print_path(const std::optional<wsp::ConstrainedPath>& path) {
  if (!path) {
    std::cout << "no feasible path\n";
    return;
  }
  std::cout << "edges";
  for (int id : path->edges) std::cout << " " << id;
  std::cout << "\ncost " << wsp::format_rational(path->cost) << "\nlength " << path->length << "\n";
  if (path->price) std::cout << "price " << wsp::format_rational(*path->price) << "\n";
}

int cmd_rsp(const PathArgs& args) {
  const wsp::Instance inst = wsp::read_instance_file(args.input);
  if (args.fptas) {
    print_path(wsp::rsp_fptas(inst, args.s, args.t, args.T, args.eps));
  } else {
    print_path(wsp::rsp_exact(inst, args.s, args.t, args.T));
  }
  return kOk;
}

int cmd_rcsp(const PathArgs& args) {
  const wsp::Instance inst = wsp::read_instance_file(args.input);
  std::vector<wsp::Rational> prices;
  if (args.prices.empty()) {
    for (const auto& e : inst.edges()) prices.emplace_back(e.length);
  } else {
    for (const auto& p : args.prices) prices.push_back(wsp::parse_rational(p));
  }
  print_path(wsp::rcsp_price(inst, args.s, args.t, args.T, prices, wsp::parse_rational(args.Z),
                             args.eps));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate minimum-cost pairwise weighted spanners"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("instance", solve.input)->required();
  solve_cmd->add_option("--mode", solve.mode)
      ->check(CLI::IsMember({"pairwise", "allpair-preserver", "single-source", "online"}));
  solve_cmd->add_option("--eps", solve.eps)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", solve.seed);
  solve_cmd->add_option("--arrivals", solve.arrivals, "Arrival order file (online mode)");
  solve_cmd->add_option("--out,-o", solve.out);
  solve_cmd->add_option("--manifest", solve.manifest, "Append the run manifest here");
  solve_cmd->add_option("--backend", solve.backend)->check(CLI::IsMember({"auto", "exact", "greedy"}));
  solve_cmd->add_option("--threads", solve.threads)->check(CLI::PositiveNumber);

  std::string verify_instance;
  std::string verify_solution;
  bool verify_allpair = false;
  auto* verify_cmd = app.add_subcommand("verify", "Check a solution against an instance");
  verify_cmd->add_option("instance", verify_instance)->required();
  verify_cmd->add_option("solution", verify_solution)->required();
  verify_cmd->add_flag("--allpair", verify_allpair, "Check every ordered reachable pair");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--n", gen.params.n)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--p", gen.params.edge_probability)->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--cost-min", gen.params.cost_min);
  gen_cmd->add_option("--cost-max", gen.params.cost_max);
  gen_cmd->add_option("--max-length", gen.params.max_length)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--demands,-k", gen.params.demands);
  gen_cmd->add_option("--slack", gen.slack);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out,-o", gen.out);

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum by subset enumeration");
  oracle_cmd->add_option("instance", oracle.input)->required();
  oracle_cmd->add_option("--against", oracle.against, "Solution to compare");
  oracle_cmd->add_flag("--allpair", oracle.allpair);
  oracle_cmd->add_option("--max-edges", oracle.max_edges);
  oracle_cmd->add_option("--max-vertices", oracle.max_vertices);
  oracle_cmd->add_option("--time-limit", oracle.time_limit, "Seconds, 0 for none");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run every mode over a seeded suite");
  bench_cmd->add_option("--suite", bench.suite)->check(CLI::IsMember({"tiny", "oracle"}));
  bench_cmd->add_option("--count", bench.count);
  bench_cmd->add_option("--eps", bench.eps)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed);

  PathArgs rsp;
  auto* rsp_cmd = app.add_subcommand("rsp", "Restricted shortest path");
  rsp_cmd->add_option("instance", rsp.input)->required();
  rsp_cmd->add_option("--s", rsp.s)->required();
  rsp_cmd->add_option("--t", rsp.t)->required();
  rsp_cmd->add_option("--T", rsp.T)->required();
  rsp_cmd->add_option("--eps", rsp.eps)->check(CLI::PositiveNumber);
  rsp_cmd->add_flag("--fptas", rsp.fptas);

  PathArgs rcsp;
  auto* rcsp_cmd = app.add_subcommand("rcsp", "Cost-minimal path under length and price budgets");
  rcsp_cmd->add_option("instance", rcsp.input)->required();
  rcsp_cmd->add_option("--s", rcsp.s)->required();
  rcsp_cmd->add_option("--t", rcsp.t)->required();
  rcsp_cmd->add_option("--T", rcsp.T)->required();
  rcsp_cmd->add_option("--Z", rcsp.Z)->required();
  rcsp_cmd->add_option("--eps", rcsp.eps)->check(CLI::PositiveNumber);
  rcsp_cmd->add_option("--prices", rcsp.prices, "One price per edge (default: lengths)")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve);
    if (*verify_cmd) return cmd_verify(verify_instance, verify_solution, verify_allpair);
    if (*gen_cmd) return cmd_gen(gen);
    if (*oracle_cmd) return cmd_oracle(oracle);
    if (*bench_cmd) return cmd_bench(bench);
    if (*rsp_cmd) return cmd_rsp(rsp);
    if (*rcsp_cmd) return cmd_rcsp(rcsp);
  } catch (const wsp::InstanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == wsp::InstanceErrorKind::Syntax ? kParse : kInvalid;
  } catch (const ParseFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const wsp::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const wsp::GenerationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
