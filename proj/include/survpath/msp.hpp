// Copyright (c) survpath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Minimum survivable path set (MSP): fewest paths whose survival rows cover
// every fiber.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "survpath/errors.hpp"
#include "survpath/random.hpp"
#include "survpath/report.hpp"
#include "survpath/survival_matrix.hpp"

namespace survpath {

struct ExactOptions {
  /// Search nodes allowed before SearchBudgetExceeded is thrown.
  std::uint64_t node_limit = std::numeric_limits<std::uint64_t>::max();
};

/// Largest size an optimal MSP set can have: K+1 or W+1 when declared
/// (tighter of the two), min(m, n)+1 otherwise.
inline std::size_t msp_size_bound(const SurvivalMatrix& mat,
                                  const Limits& limits) {
  std::size_t bound = std::min(mat.num_fibers(), mat.num_paths()) + 1;
  if (limits.K) bound = std::min(bound, *limits.K + 1);
  if (limits.W) bound = std::min(bound, *limits.W + 1);
  return bound;
}

namespace detail {

/// Depth-bounded enumeration of irredundant covers, branching on the
/// uncovered fiber with the fewest survivors. Every minimum cover is
/// irredundant, so the lexicographically smallest one of the minimum size is
/// found.
class CoverSearch {
 public:
  CoverSearch(const SurvivalMatrix& mat, std::uint64_t node_limit)
      : mat_(mat), node_limit_(node_limit) {
    for (PathIndex j = 0; j < mat.num_paths(); ++j) {
      survived_.push_back(mat.survived_fibers(j));
    }
  }

  std::optional<std::vector<PathIndex>> smallest_lex_cover(std::size_t size) {
    best_.reset();
    std::vector<PathIndex> chosen;
    dfs(chosen, Bits(mat_.num_fibers()), size);
    return best_;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void dfs(std::vector<PathIndex>& chosen, const Bits& covered,
           std::size_t slots) {
    if (++nodes_ > node_limit_) {
      throw SearchBudgetExceeded("exact MSP search exceeded its node budget");
    }
    if (covered.all()) {
      auto candidate = chosen;
      std::sort(candidate.begin(), candidate.end());
      if (!best_ || candidate < *best_) best_ = std::move(candidate);
      return;
    }
    if (slots == 0) return;
    const Bits uncovered = ~covered;
    const std::size_t need = uncovered.count();
    std::size_t max_gain = 0;
    for (const auto& s : survived_) {
      max_gain = std::max(max_gain, (s & uncovered).count());
    }
    if (max_gain * slots < need) return;

    FiberIndex branch = 0;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (auto i = uncovered.find_first(); i != Bits::npos;
         i = uncovered.find_next(i)) {
      auto c = mat_.survivors(i).count();
      if (c < fewest) {
        fewest = c;
        branch = i;
      }
    }
    const Bits& options = mat_.survivors(branch);
    for (auto j = options.find_first(); j != Bits::npos;
         j = options.find_next(j)) {
      chosen.push_back(j);
      dfs(chosen, covered | survived_[j], slots - 1);
      chosen.pop_back();
    }
  }

  const SurvivalMatrix& mat_;
  std::uint64_t node_limit_;
  std::uint64_t nodes_ = 0;
  std::vector<Bits> survived_;
  std::optional<std::vector<PathIndex>> best_;
};

inline std::vector<PathIndex> prune_redundant(const SurvivalMatrix& mat,
                                              std::vector<PathIndex> set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  for (std::size_t k = 0; k < set.size();) {
    std::vector<PathIndex> without = set;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(k));
    if (is_survivable(mat, without)) {
      set = std::move(without);
    } else {
      ++k;
    }
  }
  return set;
}

}  // namespace detail

/// Minimum-cardinality survivable set by iterative deepening up to the size
/// bound. Ties go to the lexicographically smallest id tuple.
inline SolveReport msp_exact(const SurvivalMatrix& mat, const Limits& limits,
                             const ExactOptions& options = {}) {
  Stopwatch clock;
  mat.require_feasible();
  if (mat.num_fibers() == 0) {
    return detail::finish_report("exact", "msp", mat, {}, 0, std::nullopt,
                                 clock);
  }
  detail::CoverSearch search(mat, options.node_limit);
  const std::size_t bound = std::min(msp_size_bound(mat, limits), mat.num_paths());
  for (std::size_t size = 1; size <= bound; ++size) {
    if (auto best = search.smallest_lex_cover(size)) {
      return detail::finish_report("exact", "msp", mat, std::move(*best),
                                   search.nodes(), std::nullopt, clock);
    }
  }
  throw PreconditionError("no survivable set within the size bound " +
                          std::to_string(bound) +
                          "; the instance breaks its declared limits");
}

/// Repeatedly takes the path surviving the most not-yet-survived fibers,
/// smallest id on ties.
inline SolveReport msp_greedy(const SurvivalMatrix& mat) {
  Stopwatch clock;
  mat.require_feasible();
  Bits covered(mat.num_fibers());
  std::vector<PathIndex> selected;
  while (!covered.all()) {
    const Bits uncovered = ~covered;
    PathIndex pick = 0;
    std::size_t best_gain = 0;
    for (PathIndex j = 0; j < mat.num_paths(); ++j) {
      auto gain = (uncovered - mat.used_fibers(j)).count();
      if (gain > best_gain) {
        best_gain = gain;
        pick = j;
      }
    }
    selected.push_back(pick);
    covered |= ~mat.used_fibers(pick);
  }
  const auto rounds = selected.size();
  return detail::finish_report("greedy", "msp", mat, std::move(selected),
                               rounds, std::nullopt, clock);
}

/// Weights and sampling distribution of the iterative-reweighting epsilon-net
/// search.
class EpsNetState {
 public:
  EpsNetState(std::size_t num_paths, double epsilon, std::size_t sample_size,
              double c)
      : weights_(num_paths, 1.0),
        epsilon_(epsilon),
        sample_size_(sample_size),
        c_(c) {}

  const std::vector<double>& weights() const { return weights_; }
  double epsilon() const { return epsilon_; }
  std::size_t sample_size() const { return sample_size_; }
  double c() const { return c_; }
  const Bits& unsurvived() const { return unsurvived_; }

  double total_weight() const {
    double t = 0;
    for (double w : weights_) t += w;
    return t;
  }

  /// mu(P_j) = W_j / sum W.
  double probability(PathIndex j) const { return weights_[j] / total_weight(); }

  /// W(f_i): total weight of the paths surviving fiber i.
  double fiber_weight(const SurvivalMatrix& mat, FiberIndex i) const {
    double t = 0;
    const Bits& s = mat.survivors(i);
    for (auto j = s.find_first(); j != Bits::npos; j = s.find_next(j)) {
      t += weights_[j];
    }
    return t;
  }

  /// Fibers survived by at least an epsilon fraction of the path weight.
  bool is_heavy(const SurvivalMatrix& mat, FiberIndex i) const {
    return fiber_weight(mat, i) >= epsilon_ * total_weight();
  }

  /// s independent draws with replacement from mu, deduplicated and sorted.
  std::vector<PathIndex> draw(Rng& rng) const {
    std::vector<double> cumulative(weights_.size());
    double acc = 0;
    for (std::size_t j = 0; j < weights_.size(); ++j) {
      acc += weights_[j];
      cumulative[j] = acc;
    }
    std::vector<PathIndex> picks;
    picks.reserve(sample_size_);
    for (std::size_t d = 0; d < sample_size_; ++d) {
      const double u = uniform01(rng) * acc;
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      if (it == cumulative.end()) --it;
      picks.push_back(static_cast<PathIndex>(it - cumulative.begin()));
    }
    std::sort(picks.begin(), picks.end());
    picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
    return picks;
  }

  /// Records the unsurvived fibers and doubles every path that survives at
  /// least one of them.
  void reweight(const SurvivalMatrix& mat, Bits unsurvived) {
    unsurvived_ = std::move(unsurvived);
    for (PathIndex j = 0; j < weights_.size(); ++j) {
      if ((unsurvived_ - mat.used_fibers(j)).any()) weights_[j] *= 2.0;
    }
  }

 private:
  std::vector<double> weights_;
  double epsilon_;
  std::size_t sample_size_;
  double c_;
  Bits unsurvived_;
};

struct EpsNetOptions {
  double c = 10.0;
};

/// VC-dimension stand-in D used in the sample size: 1 + log2 K for
/// K-restricted instances, W for W-restricted ones, the tighter when both
/// are declared. Undeclared limits fall back to the instance's own maximum
/// path cost and fiber load.
inline double epsnet_dimension(const SurvivalMatrix& mat, const Limits& limits) {
  auto from_k = [](std::size_t k) {
    return 1.0 + std::log2(static_cast<double>(std::max<std::size_t>(k, 1)));
  };
  if (limits.K || limits.W) {
    double d = std::numeric_limits<double>::infinity();
    if (limits.K) d = std::min(d, from_k(*limits.K));
    if (limits.W) d = std::min(d, static_cast<double>(*limits.W));
    return d;
  }
  return std::min(from_k(mat.max_path_cost()),
                  static_cast<double>(std::max<std::size_t>(mat.max_fiber_load(), 1)));
}

/// s = c (D / eps) ln(D / eps), at least 1.
inline std::size_t epsnet_sample_size(double dimension, double epsilon,
                                      double c) {
  const double ratio = dimension / epsilon;
  const double s = c * ratio * std::log(std::max(ratio, 1.0));
  return static_cast<std::size_t>(std::max(1.0, std::ceil(s)));
}

/// Weight-doubling rounds allowed for guess g: ceil(4 g log2(m / g)) + 1.
inline std::size_t epsnet_round_limit(std::size_t m, std::size_t guess) {
  const double g = static_cast<double>(guess);
  const double lg = std::max(0.0, std::log2(static_cast<double>(m) / g));
  return static_cast<std::size_t>(std::ceil(4.0 * g * lg)) + 1;
}

/// Randomized epsilon-net search with an OPT-guess doubling schedule. The
/// first survivable sample is pruned of redundant paths (smallest id first).
inline SolveReport msp_epsnet(const SurvivalMatrix& mat, const Limits& limits,
                              std::uint64_t seed,
                              const EpsNetOptions& options = {}) {
  Stopwatch clock;
  mat.require_feasible();
  if (mat.num_fibers() == 0) {
    return detail::finish_report("epsnet", "msp", mat, {}, 0, seed, clock);
  }
  Rng rng(seed);
  const double dimension = epsnet_dimension(mat, limits);
  std::size_t rounds = 0;
  for (std::size_t guess = 1; guess <= mat.num_paths(); guess *= 2) {
    const double epsilon = 1.0 / (2.0 * static_cast<double>(guess));
    EpsNetState state(mat.num_paths(), epsilon,
                      epsnet_sample_size(dimension, epsilon, options.c),
                      options.c);
    const std::size_t limit = epsnet_round_limit(mat.num_fibers(), guess);
    for (std::size_t r = 0; r < limit; ++r) {
      ++rounds;
      auto sample = state.draw(rng);
      Bits unsurvived = ~covered_fibers(mat, sample);
      if (unsurvived.none()) {
        return detail::finish_report("epsnet", "msp", mat,
                                     detail::prune_redundant(mat, sample),
                                     rounds, seed, clock);
      }
      state.reweight(mat, std::move(unsurvived));
    }
  }
  throw RandomizedFailure("epsilon-net search exhausted its guesses", seed);
}

}  // namespace survpath
