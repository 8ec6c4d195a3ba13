// Copyright (c) survpath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// JSON and CSV renderings of solver reports and benchmark results.
//
// CSV columns are fixed:
//   alg,problem,W,K,trial,seed,objective,survivable,iterations,elapsed_us
// Empty cells mean "not applicable" (no K declared, deterministic solver,
// no set produced). Aggregate rows put "mean" or "std" in the trial column;
// their objective cell holds the statistic and their survivable cell the
// success rate, both with four decimals.

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "survpath/bench.hpp"
#include "survpath/report.hpp"

namespace survpath {

inline constexpr const char* kCsvHeader =
    "alg,problem,W,K,trial,seed,objective,survivable,iterations,elapsed_us";

namespace detail {

template <class T>
std::string cell(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string{};
}

inline std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace detail

/// Report as JSON with one-based path and fiber ids. elapsed_us is written
/// only when `timing` is set so default output is reproducible byte for byte.
inline nlohmann::ordered_json to_json(const SolveReport& r, bool timing) {
  nlohmann::ordered_json j;
  j["problem"] = r.problem;
  j["alg"] = r.algorithm;
  j["objective"] = r.objective;
  j["survivable"] = r.solution.survivable;
  auto paths = nlohmann::ordered_json::array();
  for (auto p : r.solution.selected) paths.push_back(p + 1);
  j["paths"] = paths;
  auto fibers = nlohmann::ordered_json::array();
  const auto& u = r.solution.fibers_used;
  for (auto i = u.find_first(); i != Bits::npos; i = u.find_next(i)) {
    fibers.push_back(i + 1);
  }
  j["fibers"] = fibers;
  j["iterations"] = r.iterations;
  j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json();
  j["repaired"] = r.repaired;
  if (timing) j["elapsed_us"] = r.elapsed.count();
  return j;
}

/// One CSV data row for a single solve; trial is 0 and W/K come from the
/// instance's declared limits.
inline std::string csv_row(const SolveReport& r, const Limits& limits,
                           bool timing) {
  return r.algorithm + ',' + r.problem + ',' + detail::cell(limits.W) + ',' +
         detail::cell(limits.K) + ",0," + detail::cell(r.seed) + ',' +
         std::to_string(r.objective) + ',' +
         (r.solution.survivable ? "1" : "0") + ',' +
         std::to_string(r.iterations) + ',' +
         std::to_string(timing ? r.elapsed.count() : 0);
}

inline std::string csv_row(const BenchRow& r, bool timing) {
  std::string survivable;
  if (r.survivable) survivable = *r.survivable ? "1" : "0";
  return r.alg + ',' + r.problem + ',' + std::to_string(r.W) + ',' +
         detail::cell(r.K) + ',' + std::to_string(r.trial) + ',' +
         detail::cell(r.seed) + ',' + detail::cell(r.objective) + ',' +
         survivable + ',' + std::to_string(r.iterations) + ',' +
         std::to_string(timing ? r.elapsed_us : 0);
}

inline void write_csv(std::ostream& out, const ExperimentResult& result,
                      bool timing) {
  out << kCsvHeader << '\n';
  for (const auto& r : result.rows) out << csv_row(r, timing) << '\n';
  for (const auto& a : result.aggregates) {
    const std::string prefix = a.alg + ',' + a.problem + ',' +
                               std::to_string(a.W) + ',' + detail::cell(a.K) +
                               ',';
    const std::string rate = detail::fixed4(a.success_rate());
    out << prefix << "mean,," << detail::fixed4(a.mean) << ',' << rate
        << ",,\n";
    out << prefix << "std,," << detail::fixed4(a.stddev) << ',' << rate
        << ",,\n";
  }
}

}  // namespace survpath
