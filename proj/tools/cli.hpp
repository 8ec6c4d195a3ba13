// Copyright (c) survpath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// survpath command line. Exit codes:
//   0  success
//   2  infeasible instance or non-survivable selection
//   3  randomized failure (retry with another seed)
//   4  exact search hit --node-limit
//   64 bad flags or unknown path id
//   65 malformed input file

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "survpath/survpath.hpp"

namespace survpath::cli {

inline constexpr int kOk = 0;
inline constexpr int kNotSurvivable = 2;
inline constexpr int kRandomizedFailure = 3;
inline constexpr int kBudget = 4;
inline constexpr int kUsage = 64;
inline constexpr int kDataError = 65;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Loads .spn directly or enumerates the s-t paths of an .lnet file (all of
/// them, or those within K fibers when k is given).
inline Instance load_instance(const std::string& path,
                              std::optional<std::size_t> k) {
  auto in = io::open_input(path);
  if (io::looks_like_spn(in)) return io::read_spn(in);
  const auto net = io::read_lnet(in);
  const auto catalog =
      k ? enumerate_paths_k_restricted(net, *k) : enumerate_all_paths(net);
  return catalog.instance();
}

inline std::vector<PathIndex> parse_path_list(const std::string& text,
                                              std::size_t num_paths) {
  std::vector<PathIndex> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::logic_error&) {
      throw UsageError("bad path id '" + tok + "'");
    }
    if (used != tok.size()) throw UsageError("bad path id '" + tok + "'");
    if (v < 1 || static_cast<std::size_t>(v) > num_paths) {
      throw UsageError("unknown path id " + tok + " (instance has " +
                       std::to_string(num_paths) + " paths)");
    }
    out.push_back(static_cast<PathIndex>(v - 1));
  }
  return out;
}

inline std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const auto v = std::stoul(s);
      return {v, v};
    }
    return {std::stoul(s.substr(0, dots)), std::stoul(s.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw UsageError("bad range '" + s + "', expected A..B");
  }
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

struct SolveArgs {
  std::string problem;
  std::string alg;
  std::string in;
  std::optional<std::size_t> k, w;
  double q = 0.99;
  std::uint64_t seed = 0;
  bool repair = false;
  std::string out = "json";
  bool timing = false;
  std::uint64_t node_limit = 0;
};

inline int do_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  if (!solves(a.problem, a.alg)) {
    err << "algorithm '" << a.alg << "' does not solve " << a.problem << '\n';
    return kUsage;
  }
  Instance inst = load_instance(a.in, a.k);
  if (a.k) inst.limits.K = a.k;
  if (a.w) inst.limits.W = a.w;
  inst.matrix.validate(inst.limits);

  SolverOptions opt;
  opt.seed = a.seed;
  opt.q = a.q;
  opt.repair = a.repair;
  if (a.node_limit > 0) opt.exact.node_limit = a.node_limit;
  const auto report = run_solver(a.problem, a.alg, inst.matrix, inst.limits, opt);
  if (a.out == "csv") {
    out << kCsvHeader << '\n' << csv_row(report, inst.limits, a.timing) << '\n';
  } else {
    out << to_json(report, a.timing).dump(2) << '\n';
  }
  if (!report.solution.survivable) {
    err << "rounded selection is not survivable (seed " << a.seed
        << "); retry with another seed or --repair\n";
    return kRandomizedFailure;
  }
  return kOk;
}

inline int do_verify(const std::string& file, const std::string& paths,
                     std::ostream& out) {
  const Instance inst = load_instance(file, std::nullopt);
  const auto selection = parse_path_list(paths, inst.matrix.num_paths());
  const auto missing = uncovered_fibers(inst.matrix, selection);
  if (missing.empty()) {
    out << "survivable\n";
    return kOk;
  }
  out << "not survivable; uncovered fibers:";
  for (auto i : missing) out << " f" << i + 1;
  out << '\n';
  return kNotSurvivable;
}

struct BenchArgs {
  std::size_t paths = 50;
  std::size_t fibers = 100;
  std::string w_range = "2..6";
  std::optional<std::size_t> k;
  std::size_t trials = 50;
  std::string algs = "exact,acg,nacg,rsg";
  std::string problem = "mfsp";
  std::uint64_t seed = 0;
  double q = 0.99;
  bool repair = false;
  bool timing = false;
  std::uint64_t node_limit = 0;
};

inline int do_bench(const BenchArgs& a, std::ostream& out) {
  BenchConfig cfg;
  cfg.n_paths = a.paths;
  cfg.m_fibers = a.fibers;
  std::tie(cfg.w_lo, cfg.w_hi) = parse_range(a.w_range);
  cfg.K = a.k;
  cfg.trials = a.trials;
  cfg.algs = split_list(a.algs);
  cfg.problem = a.problem;
  cfg.seed = a.seed;
  cfg.solver.q = a.q;
  cfg.solver.repair = a.repair;
  if (a.node_limit > 0) cfg.solver.exact.node_limit = a.node_limit;
  if (cfg.algs.empty()) throw UsageError("--algs is empty");
  write_csv(out, run_bench(cfg), a.timing);
  return kOk;
}

struct GenerateArgs {
  std::size_t paths = 50;
  std::size_t fibers = 100;
  std::size_t w = 2;
  std::optional<std::size_t> k;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
};

inline int do_generate(const GenerateArgs& a, std::ostream& out) {
  RandomEnsembleConfig cfg;
  cfg.n_paths = a.paths;
  cfg.m_fibers = a.fibers;
  cfg.W = a.w;
  cfg.K = a.k;
  cfg.trials = a.trial + 1;
  cfg.seed = a.seed;
  io::write_spn(out, gen_random_trial(cfg, a.trial));
  return kOk;
}

inline int do_paths(const std::string& file, std::optional<std::size_t> k,
                    std::ostream& out) {
  io::write_spn(out, load_instance(file, k));
  return kOk;
}

/// Entry point shared by the binary and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Survivable path sets in layered networks"};
  app.name("survpath");
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Run one solver on an instance file");
  s->add_option("problem", solve.problem, "msp or mfsp")
      ->required()
      ->check(CLI::IsMember({"msp", "mfsp"}));
  s->add_option("--alg", solve.alg, "Algorithm")
      ->required()
      ->check(CLI::IsMember(
          {"exact", "greedy", "acg", "nacg", "rsg", "rr", "epsnet"}));
  s->add_option("--in", solve.in, ".spn or .lnet file")->required();
  s->add_option("--k", solve.k, "Fiber cap per path")->check(CLI::PositiveNumber);
  s->add_option("--w", solve.w, "Path cap per fiber")->check(CLI::PositiveNumber);
  s->add_option("--q", solve.q, "Rounding success target")
      ->check(CLI::Range(0.0, 1.0));
  s->add_option("--seed", solve.seed, "Seed for randomized solvers");
  s->add_flag("--repair", solve.repair, "Complete rounding with greedy picks");
  s->add_option("--out", solve.out, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  s->add_flag("--timing", solve.timing, "Report elapsed time");
  s->add_option("--node-limit", solve.node_limit, "Exact search node budget");

  std::string verify_in, verify_paths;
  auto* v = app.add_subcommand("verify", "Check a selection for survivability");
  v->add_option("--in", verify_in, ".spn or .lnet file")->required();
  v->add_option("--paths", verify_paths, "Comma-separated path ids")
      ->required();

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Random-ensemble experiment as CSV");
  b->add_option("--paths", bench.paths, "Paths per instance");
  b->add_option("--fibers", bench.fibers, "Fibers per instance");
  b->add_option("--w-range", bench.w_range, "W values A..B");
  b->add_option("--k", bench.k, "Fiber cap per path")->check(CLI::PositiveNumber);
  b->add_option("--trials", bench.trials, "Instances per W")
      ->check(CLI::PositiveNumber);
  b->add_option("--algs", bench.algs, "Comma-separated algorithms");
  b->add_option("--problem", bench.problem, "msp or mfsp")
      ->check(CLI::IsMember({"msp", "mfsp"}));
  b->add_option("--seed", bench.seed, "Base seed");
  b->add_option("--q", bench.q, "Rounding success target")
      ->check(CLI::Range(0.0, 1.0));
  b->add_flag("--repair", bench.repair, "Complete rounding with greedy picks");
  b->add_flag("--timing", bench.timing, "Report elapsed time");
  b->add_option("--node-limit", bench.node_limit, "Exact search node budget");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write one random instance as .spn");
  g->add_option("--paths", gen.paths, "Paths");
  g->add_option("--fibers", gen.fibers, "Fibers");
  g->add_option("--w", gen.w, "Path cap per fiber")->check(CLI::PositiveNumber);
  g->add_option("--k", gen.k, "Fiber cap per path")->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed, "Ensemble seed");
  g->add_option("--trial", gen.trial, "Trial index");

  std::string paths_in;
  std::optional<std::size_t> paths_k;
  auto* p = app.add_subcommand("paths", "Enumerate .lnet s-t paths as .spn");
  p->add_option("--in", paths_in, ".lnet file")->required();
  p->add_option("--k", paths_k, "Fiber cap per path")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kUsage;
  }

  try {
    if (*s) return do_solve(solve, out, err);
    if (*v) return do_verify(verify_in, verify_paths, out);
    if (*b) return do_bench(bench, out);
    if (*g) return do_generate(gen, out);
    if (*p) return do_paths(paths_in, paths_k, out);
  } catch (const InfeasibleError& e) {
    err << e.what() << '\n';
    return kNotSurvivable;
  } catch (const RandomizedFailure& e) {
    err << e.what() << '\n';
    return kRandomizedFailure;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << e.what() << '\n';
    return kDataError;
  } catch (const SearchBudgetExceeded& e) {
    err << e.what() << '\n';
    return kBudget;
  }
  return kUsage;
}

}  // namespace survpath::cli
