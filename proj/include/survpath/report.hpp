// Copyright (c) survpath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "survpath/survival_matrix.hpp"

namespace survpath {

/// Outcome of one solver run.
struct SolveReport {
  std::string algorithm;
  std::string problem;  // "msp" or "mfsp"
  PathSet solution;
  /// Paths selected (MSP) or distinct fibers used (MFSP).
  std::size_t objective = 0;
  std::size_t iterations = 0;
  std::optional<std::uint64_t> seed;
  std::chrono::microseconds elapsed{0};
  /// Randomized rounding only: greedy paths were appended after rounding.
  bool repaired = false;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::chrono::microseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - start_);
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

namespace detail {

inline SolveReport finish_report(std::string algorithm, std::string problem,
                                 const SurvivalMatrix& mat,
                                 std::vector<PathIndex> selected,
                                 std::size_t iterations,
                                 std::optional<std::uint64_t> seed,
                                 const Stopwatch& clock) {
  SolveReport r;
  r.algorithm = std::move(algorithm);
  r.problem = std::move(problem);
  r.solution = make_path_set(mat, std::move(selected));
  r.objective = r.problem == "msp" ? r.solution.selected.size()
                                   : r.solution.fiber_count();
  r.iterations = iterations;
  r.seed = seed;
  r.elapsed = clock.elapsed();
  return r;
}

}  // namespace detail

}  // namespace survpath
