// Copyright (c) survpath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <string>
#include <vector>

#include "survpath/survival_matrix.hpp"

namespace testing_support {

using survpath::SurvivalMatrix;

/// Each path uses each fiber independently with probability `density`; an
/// empty path gets one random fiber.
inline SurvivalMatrix random_matrix(std::mt19937_64& rng, std::size_t m,
                                    std::size_t n, double density) {
  std::bernoulli_distribution use(density);
  std::uniform_int_distribution<std::size_t> any(0, m - 1);
  std::vector<std::vector<std::size_t>> paths(n);
  for (auto& p : paths) {
    for (std::size_t i = 0; i < m; ++i) {
      if (use(rng)) p.push_back(i);
    }
    if (p.empty()) p.push_back(any(rng));
  }
  return SurvivalMatrix(m, paths);
}

inline SurvivalMatrix from_lists(
    std::size_t m, const std::vector<std::vector<std::size_t>>& one_based) {
  std::vector<std::vector<std::size_t>> paths;
  for (const auto& p : one_based) {
    std::vector<std::size_t> q;
    for (auto f : p) q.push_back(f - 1);
    paths.push_back(q);
  }
  return SurvivalMatrix(m, paths);
}

inline std::string data_file(const std::string& name) {
  return std::string(SURVPATH_DATA_DIR) + "/" + name;
}

}  // namespace testing_support
