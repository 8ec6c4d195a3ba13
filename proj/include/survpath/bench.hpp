// Copyright (c) survpath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Solver dispatch by name and the random-ensemble benchmark runner.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "survpath/errors.hpp"
#include "survpath/instances.hpp"
#include "survpath/mfsp.hpp"
#include "survpath/msp.hpp"
#include "survpath/report.hpp"
#include "survpath/survival_matrix.hpp"

namespace survpath {

struct SolverOptions {
  std::uint64_t seed = 0;
  double q = 0.99;
  bool repair = false;
  ExactOptions exact;
  EpsNetOptions epsnet;
};

inline bool solves(const std::string& problem, const std::string& alg) {
  if (problem == "msp") {
    return alg == "exact" || alg == "greedy" || alg == "epsnet";
  }
  if (problem == "mfsp") {
    return alg == "exact" || alg == "acg" || alg == "nacg" || alg == "rsg" ||
           alg == "rr" || alg == "epsnet";
  }
  return false;
}

inline bool is_randomized(const std::string& alg) {
  return alg == "rsg" || alg == "rr" || alg == "epsnet";
}

/// Runs `alg` on `problem` ("msp" or "mfsp"). Unknown pairs throw
/// PreconditionError.
inline SolveReport run_solver(const std::string& problem,
                              const std::string& alg,
                              const SurvivalMatrix& mat, const Limits& limits,
                              const SolverOptions& opt) {
  if (problem == "msp") {
    if (alg == "exact") return msp_exact(mat, limits, opt.exact);
    if (alg == "greedy") return msp_greedy(mat);
    if (alg == "epsnet") return msp_epsnet(mat, limits, opt.seed, opt.epsnet);
  } else if (problem == "mfsp") {
    if (alg == "exact") return mfsp_exact(mat, limits, opt.exact);
    if (alg == "acg") return mfsp_acg(mat);
    if (alg == "nacg") return mfsp_nacg(mat);
    if (alg == "rsg") return mfsp_rsg(mat, opt.seed);
    if (alg == "rr") {
      return mfsp_randomized_rounding(mat, {opt.q, opt.seed, opt.repair});
    }
    if (alg == "epsnet") return mfsp_epsnet(mat, limits, opt.seed, opt.epsnet);
  } else {
    throw PreconditionError("unknown problem '" + problem + "'");
  }
  throw PreconditionError("algorithm '" + alg + "' does not solve " + problem);
}

/// One solver run inside a benchmark. Objective and survivable are empty
/// when the run produced no set (budget exhausted, randomized failure,
/// infeasible instance).
struct BenchRow {
  std::string alg;
  std::string problem;
  std::size_t W = 0;
  std::optional<std::size_t> K;
  std::size_t trial = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> objective;
  std::optional<bool> survivable;
  std::size_t iterations = 0;
  std::int64_t elapsed_us = 0;
};

/// Mean and sample standard deviation of the objective over survivable
/// rows; success rate over all rows of the group.
struct AggregateRow {
  std::string alg;
  std::string problem;
  std::size_t W = 0;
  std::optional<std::size_t> K;
  std::size_t rows = 0;
  std::size_t successes = 0;
  double mean = 0;
  double stddev = 0;

  double success_rate() const {
    return rows == 0 ? 0.0 : static_cast<double>(successes) / rows;
  }
};

struct ExperimentResult {
  std::vector<BenchRow> rows;
  std::vector<AggregateRow> aggregates;
};

/// Groups rows by (alg, W) in first-appearance order.
inline std::vector<AggregateRow> aggregate(const std::vector<BenchRow>& rows) {
  std::vector<AggregateRow> out;
  std::map<std::pair<std::string, std::size_t>, std::size_t> index;
  std::vector<std::vector<double>> values;
  for (const auto& r : rows) {
    auto [it, fresh] = index.try_emplace({r.alg, r.W}, out.size());
    if (fresh) {
      out.push_back({r.alg, r.problem, r.W, r.K});
      values.emplace_back();
    }
    auto& agg = out[it->second];
    ++agg.rows;
    if (r.objective && r.survivable.value_or(false)) {
      ++agg.successes;
      values[it->second].push_back(static_cast<double>(*r.objective));
    }
  }
  for (std::size_t g = 0; g < out.size(); ++g) {
    const auto& v = values[g];
    if (v.empty()) continue;
    double sum = 0;
    for (double x : v) sum += x;
    out[g].mean = sum / static_cast<double>(v.size());
    if (v.size() > 1) {
      double ss = 0;
      for (double x : v) ss += (x - out[g].mean) * (x - out[g].mean);
      out[g].stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
  }
  return out;
}

struct BenchConfig {
  std::size_t n_paths = 50;
  std::size_t m_fibers = 100;
  std::size_t w_lo = 2;
  std::size_t w_hi = 6;
  std::optional<std::size_t> K;
  std::size_t trials = 50;
  std::vector<std::string> algs{"exact", "acg", "nacg", "rsg"};
  std::string problem = "mfsp";
  std::uint64_t seed = 0;
  SolverOptions solver;
};

/// The ensemble of one W value: seed derived from (base seed, W).
inline RandomEnsembleConfig ensemble_for(const BenchConfig& cfg,
                                         std::size_t W) {
  RandomEnsembleConfig e;
  e.n_paths = cfg.n_paths;
  e.m_fibers = cfg.m_fibers;
  e.W = W;
  e.K = cfg.K;
  e.trials = cfg.trials;
  e.seed = derive_seed(cfg.seed, {W});
  return e;
}

/// Seed handed to randomized solvers for (W, trial).
inline std::uint64_t solver_seed(const BenchConfig& cfg, std::size_t W,
                                 std::size_t trial) {
  return derive_seed(cfg.seed, {W, trial, 1});
}

/// Worker count: hardware concurrency, capped by SURVPATH_THREADS when it
/// holds a positive integer.
inline std::size_t worker_count(std::size_t tasks) {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SURVPATH_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      n = std::min(n, static_cast<std::size_t>(v));
    }
  }
  return std::max<std::size_t>(1, std::min(n, tasks));
}

namespace detail {

inline BenchRow bench_one(const BenchConfig& cfg, const Instance& inst,
                          const std::string& alg, std::size_t W,
                          std::size_t trial) {
  BenchRow row;
  row.alg = alg;
  row.problem = cfg.problem;
  row.W = W;
  row.K = cfg.K;
  row.trial = trial;
  SolverOptions opt = cfg.solver;
  opt.seed = solver_seed(cfg, W, trial);
  if (is_randomized(alg)) row.seed = opt.seed;
  Stopwatch clock;
  try {
    const auto rep = run_solver(cfg.problem, alg, inst.matrix, inst.limits, opt);
    row.objective = rep.objective;
    row.survivable = rep.solution.survivable;
    row.iterations = rep.iterations;
  } catch (const SearchBudgetExceeded&) {
  } catch (const RandomizedFailure&) {
    row.survivable = false;
  } catch (const InfeasibleError&) {
    row.survivable = false;
  }
  row.elapsed_us = clock.elapsed().count();
  return row;
}

}  // namespace detail

/// Runs every algorithm on every (W, trial) instance. Tasks run on a worker
/// pool; rows come back ordered by (W, trial, algorithm list order).
inline ExperimentResult run_bench(const BenchConfig& cfg) {
  if (cfg.w_lo == 0 || cfg.w_lo > cfg.w_hi) {
    throw PreconditionError("W range must satisfy 1 <= A <= B");
  }
  for (const auto& alg : cfg.algs) {
    if (!solves(cfg.problem, alg)) {
      throw PreconditionError("algorithm '" + alg + "' does not solve " +
                              cfg.problem);
    }
  }
  std::vector<RandomEnsembleConfig> ensembles;
  for (std::size_t W = cfg.w_lo; W <= cfg.w_hi; ++W) {
    ensembles.push_back(ensemble_for(cfg, W));
    ensembles.back().validate();
  }
  const std::size_t tasks = ensembles.size() * cfg.trials;
  std::vector<std::vector<BenchRow>> slots(tasks);
  std::vector<std::exception_ptr> errors(tasks);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t task; (task = next++) < tasks;) {
      try {
        const auto& ens = ensembles[task / cfg.trials];
        const std::size_t trial = task % cfg.trials;
        const Instance inst = gen_random_trial(ens, trial);
        for (const auto& alg : cfg.algs) {
          slots[task].push_back(
              detail::bench_one(cfg, inst, alg, ens.W, trial));
        }
      } catch (...) {
        errors[task] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t workers = worker_count(tasks);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  ExperimentResult result;
  for (auto& s : slots) {
    for (auto& r : s) result.rows.push_back(std::move(r));
  }
  result.aggregates = aggregate(result.rows);
  return result;
}

}  // namespace survpath
