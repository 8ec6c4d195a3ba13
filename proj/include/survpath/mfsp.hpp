// Copyright (c) survpath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Minimum-fiber survivable path set (MFSP): survivable selection whose union
// of used fibers is smallest. Costs are not additive: a fiber shared by
// several selected paths counts once.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <tuple>
#include <vector>

#include "survpath/errors.hpp"
#include "survpath/lp.hpp"
#include "survpath/msp.hpp"
#include "survpath/random.hpp"
#include "survpath/report.hpp"
#include "survpath/survival_matrix.hpp"

namespace survpath {

enum class CostMode {
  additive,     // C_j fixed at the path's fiber count
  non_additive  // C_j counts only fibers not already used by the selection
};

/// Selection state shared by the amortized-cost greedy family.
class GreedyState {
 public:
  explicit GreedyState(const SurvivalMatrix& mat)
      : mat_(mat),
        uncovered_(mat.num_fibers()),
        used_(mat.num_fibers()) {
    uncovered_.set();
    for (PathIndex j = 0; j < mat.num_paths(); ++j) {
      survived_.push_back(mat.survived_fibers(j));
    }
  }
  explicit GreedyState(SurvivalMatrix&&) = delete;

  const std::vector<PathIndex>& selected() const { return selected_; }
  const Bits& uncovered() const { return uncovered_; }
  const Bits& used() const { return used_; }
  /// S_j
  const Bits& survived_set(PathIndex j) const { return survived_[j]; }

  std::size_t cost(PathIndex j, CostMode mode) const {
    return mode == CostMode::additive ? mat_.path_cost(j)
                                      : (mat_.used_fibers(j) - used_).count();
  }

  std::size_t newly_survived(PathIndex j) const {
    return (survived_[j] & uncovered_).count();
  }

  /// AC_j, or nothing when path j survives no new fiber.
  std::optional<double> amortized(PathIndex j, CostMode mode) const {
    const auto gain = newly_survived(j);
    if (gain == 0) return std::nullopt;
    return static_cast<double>(cost(j, mode)) / static_cast<double>(gain);
  }

  /// Minimum amortized cost; ties to the smaller cost, then the smaller id.
  /// Ratios are compared exactly by cross-multiplication.
  std::optional<PathIndex> best_candidate(CostMode mode) const {
    std::optional<PathIndex> best;
    std::size_t best_cost = 0, best_gain = 0;
    for (PathIndex j = 0; j < mat_.num_paths(); ++j) {
      const auto gain = newly_survived(j);
      if (gain == 0) continue;
      const auto c = cost(j, mode);
      if (!best) {
        best = j;
        best_cost = c;
        best_gain = gain;
        continue;
      }
      const auto lhs = c * best_gain;
      const auto rhs = best_cost * gain;
      if (lhs < rhs || (lhs == rhs && c < best_cost)) {
        best = j;
        best_cost = c;
        best_gain = gain;
      }
    }
    return best;
  }

  void select(PathIndex j) {
    selected_.push_back(j);
    refresh();
  }

  void remove(PathIndex k) {
    selected_.erase(std::find(selected_.begin(), selected_.end(), k));
    refresh();
  }

 private:
  void refresh() {
    uncovered_.set();
    used_.reset();
    for (PathIndex j : selected_) {
      uncovered_ -= survived_[j];
      used_ |= mat_.used_fibers(j);
    }
  }

  const SurvivalMatrix& mat_;
  std::vector<PathIndex> selected_;
  Bits uncovered_;
  Bits used_;
  std::vector<Bits> survived_;
};

namespace detail {

inline SolveReport amortized_greedy(const SurvivalMatrix& mat, CostMode mode,
                                    const char* name) {
  Stopwatch clock;
  mat.require_feasible();
  GreedyState state(mat);
  std::size_t rounds = 0;
  while (state.uncovered().any()) {
    state.select(*state.best_candidate(mode));
    ++rounds;
  }
  return finish_report(name, "mfsp", mat, state.selected(), rounds,
                       std::nullopt, clock);
}

/// Branch and bound over irredundant covers keyed by
/// (fibers used, paths, sorted ids).
class FiberSearch {
 public:
  FiberSearch(const SurvivalMatrix& mat, std::size_t depth_limit,
              std::uint64_t node_limit)
      : mat_(mat), depth_limit_(depth_limit), node_limit_(node_limit) {
    for (PathIndex j = 0; j < mat.num_paths(); ++j) {
      survived_.push_back(mat.survived_fibers(j));
    }
  }

  void seed_incumbent(std::vector<PathIndex> set) { consider(std::move(set)); }

  std::vector<PathIndex> run() {
    std::vector<PathIndex> chosen;
    dfs(chosen, Bits(mat_.num_fibers()), Bits(mat_.num_fibers()));
    return best_ids_;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  using Key = std::tuple<std::size_t, std::size_t>;

  void consider(std::vector<PathIndex> set) {
    std::sort(set.begin(), set.end());
    const Key key{union_of_used(mat_, set).count(), set.size()};
    if (!have_best_ || key < best_key_ ||
        (key == best_key_ && set < best_ids_)) {
      have_best_ = true;
      best_key_ = key;
      best_ids_ = std::move(set);
    }
  }

  void dfs(std::vector<PathIndex>& chosen, const Bits& covered,
           const Bits& used) {
    if (++nodes_ > node_limit_) {
      throw SearchBudgetExceeded("exact MFSP search exceeded its node budget");
    }
    if (covered.all()) {
      consider(chosen);
      return;
    }
    if (chosen.size() >= depth_limit_) return;

    const Bits uncovered = ~covered;
    // Every uncovered fiber still needs a survivor; the dearest of those
    // cheapest survivors is a valid lower bound on the added fibers.
    std::size_t lower = 0;
    FiberIndex branch = 0;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (auto i = uncovered.find_first(); i != Bits::npos;
         i = uncovered.find_next(i)) {
      const Bits& s = mat_.survivors(i);
      std::size_t cheapest = std::numeric_limits<std::size_t>::max();
      for (auto j = s.find_first(); j != Bits::npos; j = s.find_next(j)) {
        cheapest = std::min(cheapest, (mat_.used_fibers(j) - used).count());
      }
      lower = std::max(lower, cheapest);
      const auto c = s.count();
      if (c < fewest) {
        fewest = c;
        branch = i;
      }
    }
    const Key bound{used.count() + lower, chosen.size() + 1};
    if (have_best_ && best_key_ < bound) return;

    std::vector<std::pair<std::size_t, PathIndex>> order;
    const Bits& options = mat_.survivors(branch);
    for (auto j = options.find_first(); j != Bits::npos;
         j = options.find_next(j)) {
      order.emplace_back((mat_.used_fibers(j) - used).count(), j);
    }
    std::sort(order.begin(), order.end());
    for (auto [extra, j] : order) {
      const Key child{used.count() + extra, chosen.size() + 1};
      if (have_best_ && best_key_ < child) break;
      chosen.push_back(j);
      dfs(chosen, covered | survived_[j], used | mat_.used_fibers(j));
      chosen.pop_back();
    }
  }

  const SurvivalMatrix& mat_;
  std::size_t depth_limit_;
  std::uint64_t node_limit_;
  std::uint64_t nodes_ = 0;
  std::vector<Bits> survived_;
  bool have_best_ = false;
  Key best_key_{};
  std::vector<PathIndex> best_ids_;
};

}  // namespace detail

/// Survivable set with the fewest distinct fibers; among those the fewest
/// paths, then the lexicographically smallest ids. Search depth is bounded
/// like msp_exact (an irredundant set never exceeds K+1 or W+1 paths).
inline SolveReport mfsp_exact(const SurvivalMatrix& mat, const Limits& limits,
                              const ExactOptions& options = {}) {
  Stopwatch clock;
  mat.require_feasible();
  if (mat.num_fibers() == 0) {
    return detail::finish_report("exact", "mfsp", mat, {}, 0, std::nullopt,
                                 clock);
  }
  detail::FiberSearch search(mat, msp_size_bound(mat, limits),
                             options.node_limit);
  auto incumbent = detail::amortized_greedy(mat, CostMode::non_additive, "");
  search.seed_incumbent(detail::prune_redundant(mat, incumbent.solution.selected));
  auto best = search.run();
  return detail::finish_report("exact", "mfsp", mat, std::move(best),
                               search.nodes(), std::nullopt, clock);
}

/// Additive Cost Greedy: minimum C_j / (newly survived fibers) with static
/// C_j.
inline SolveReport mfsp_acg(const SurvivalMatrix& mat) {
  return detail::amortized_greedy(mat, CostMode::additive, "acg");
}

/// Non-additive Cost Greedy: as ACG, with C_j counting only fibers the
/// selection does not already use.
inline SolveReport mfsp_nacg(const SurvivalMatrix& mat) {
  return detail::amortized_greedy(mat, CostMode::non_additive, "nacg");
}

/// Random-Sweep Greedy. The first two picks follow NACG. Afterwards each
/// pick i is paired with one uniformly drawn earlier pick j, and the
/// smallest-id earlier pick k (k != j) with S_k inside S_i | S_j is dropped.
inline SolveReport mfsp_rsg(const SurvivalMatrix& mat, std::uint64_t seed) {
  Stopwatch clock;
  mat.require_feasible();
  Rng rng(seed);
  GreedyState state(mat);
  std::size_t rounds = 0;
  while (state.uncovered().any()) {
    const PathIndex i = *state.best_candidate(CostMode::non_additive);
    ++rounds;
    if (rounds <= 2) {
      state.select(i);
      continue;
    }
    std::vector<PathIndex> earlier = state.selected();
    const PathIndex j = earlier[uniform_below(rng, earlier.size())];
    const Bits pair_cover = state.survived_set(i) | state.survived_set(j);
    state.select(i);
    std::sort(earlier.begin(), earlier.end());
    for (PathIndex k : earlier) {
      if (k == j || !state.survived_set(k).is_subset_of(pair_cover)) continue;
      const Bits before = state.uncovered();
      state.remove(k);
      if (state.uncovered() != before) {
        throw std::logic_error("random sweep removal changed coverage");
      }
      break;
    }
  }
  return detail::finish_report("rsg", "mfsp", mat, state.selected(), rounds,
                               seed, clock);
}

struct RoundingConfig {
  /// Target probability that the rounded set is survivable.
  double q = 0.99;
  std::uint64_t seed = 0;
  /// Append NACG picks when rounding leaves fibers unsurvived.
  bool repair = false;
};

/// T = ceil(ln(m / (1 - q))), at least 1.
inline std::size_t rounding_iterations(std::size_t m, double q) {
  if (!(q > 0.0 && q < 1.0)) throw PreconditionError("q must lie in (0, 1)");
  if (m == 0) return 1;
  const double t = std::ceil(std::log(static_cast<double>(m) / (1.0 - q)));
  return static_cast<std::size_t>(std::max(1.0, t));
}

/// Randomized rounding from a precomputed relaxation optimum.
inline SolveReport mfsp_randomized_rounding(const SurvivalMatrix& mat,
                                            const FractionalSolution& frac,
                                            const RoundingConfig& cfg) {
  Stopwatch clock;
  mat.require_feasible();
  const std::size_t rounds = rounding_iterations(mat.num_fibers(), cfg.q);
  Rng rng(cfg.seed);
  std::vector<bool> picked(mat.num_paths(), false);
  for (std::size_t t = 0; t < rounds; ++t) {
    for (PathIndex j = 0; j < mat.num_paths(); ++j) {
      if (uniform01(rng) < frac.p_star[j]) picked[j] = true;
    }
  }
  std::vector<PathIndex> selected;
  for (PathIndex j = 0; j < mat.num_paths(); ++j) {
    if (picked[j]) selected.push_back(j);
  }
  bool repaired = false;
  if (cfg.repair && !is_survivable(mat, selected)) {
    GreedyState state(mat);
    for (PathIndex j : selected) state.select(j);
    while (state.uncovered().any()) {
      state.select(*state.best_candidate(CostMode::non_additive));
    }
    selected = state.selected();
    repaired = true;
  }
  auto report = detail::finish_report("rr", "mfsp", mat, std::move(selected),
                                      rounds, cfg.seed, clock);
  report.repaired = repaired;
  return report;
}

/// Solves the relaxation, then rounds. The result may be non-survivable
/// (probability at most 1 - q) unless repair is requested.
inline SolveReport mfsp_randomized_rounding(const SurvivalMatrix& mat,
                                            const RoundingConfig& cfg) {
  Stopwatch clock;
  auto frac = solve_mfsp_relaxation(mat);
  auto report = mfsp_randomized_rounding(mat, frac, cfg);
  report.elapsed = clock.elapsed();
  return report;
}

/// Epsilon-net search in wavelength mode (D = W), scored by fibers used.
/// Without a declared W the instance's maximum fiber load is used.
inline SolveReport mfsp_epsnet(const SurvivalMatrix& mat, const Limits& limits,
                               std::uint64_t seed,
                               const EpsNetOptions& options = {}) {
  Limits w_mode;
  w_mode.W = limits.W ? *limits.W
                      : std::max<std::size_t>(mat.max_fiber_load(), 1);
  auto report = msp_epsnet(mat, w_mode, seed, options);
  report.problem = "mfsp";
  report.objective = report.solution.fiber_count();
  return report;
}

/// (sum of C_j over the selection) / W <= distinct fibers used. Requires a
/// declared W.
inline bool check_additive_bound(const SurvivalMatrix& mat,
                                 const Limits& limits, const PathSet& set) {
  if (!limits.W) {
    throw PreconditionError("check_additive_bound needs a declared W");
  }
  const Bits used = union_of_used(mat, set.selected);
  return set.additive_cost(mat) <= *limits.W * used.count();
}

}  // namespace survpath
