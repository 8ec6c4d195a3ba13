// Copyright (c) survpath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Path/fiber survival relation and survivability checks.
//
// Paths and fibers are addressed by zero-based indices throughout the
// library. Text formats and CLI output use one-based ids (f1, path 1).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "survpath/errors.hpp"

namespace survpath {

using Bits = boost::dynamic_bitset<>;
using PathIndex = std::size_t;
using FiberIndex = std::size_t;

/// Optional instance restrictions: K caps fibers per path, W caps paths per
/// fiber.
struct Limits {
  std::optional<std::size_t> K;
  std::optional<std::size_t> W;

  friend bool operator==(const Limits&, const Limits&) = default;
};

/// The m x n survival relation A. Entry (i, j) is 1 when path j survives the
/// failure of fiber i, i.e. path j does not use fiber i.
///
/// Stored twice: by row (survivors of each fiber) and by column (fibers each
/// path uses), so both coverage tests and fiber-union accounting are
/// word-parallel.
class SurvivalMatrix {
 public:
  SurvivalMatrix() = default;

  /// Builds the relation from the fibers each path uses. Throws RoutingError
  /// when a fiber index is >= num_fibers.
  SurvivalMatrix(std::size_t num_fibers,
                 const std::vector<std::vector<FiberIndex>>& used_by_path)
      : m_(num_fibers), n_(used_by_path.size()) {
    uses_.assign(n_, Bits(m_));
    survivors_.assign(m_, Bits(n_));
    for (PathIndex j = 0; j < n_; ++j) {
      for (FiberIndex i : used_by_path[j]) {
        if (i >= m_) {
          throw RoutingError("path " + std::to_string(j + 1) +
                             " uses unknown fiber f" + std::to_string(i + 1));
        }
        uses_[j].set(i);
      }
    }
    finish();
  }

  /// Builds the relation from per-path usage bitsets of size num_fibers.
  SurvivalMatrix(std::size_t num_fibers, std::vector<Bits> uses)
      : m_(num_fibers), n_(uses.size()), uses_(std::move(uses)) {
    for (PathIndex j = 0; j < n_; ++j) {
      if (uses_[j].size() != m_) {
        throw RoutingError("usage set of path " + std::to_string(j + 1) +
                           " has wrong width");
      }
    }
    survivors_.assign(m_, Bits(n_));
    finish();
  }

  std::size_t num_fibers() const noexcept { return m_; }
  std::size_t num_paths() const noexcept { return n_; }

  bool uses(FiberIndex i, PathIndex j) const { return uses_[j].test(i); }
  bool survives(FiberIndex i, PathIndex j) const { return !uses_[j].test(i); }

  /// Paths that survive the failure of fiber i (row i of A).
  const Bits& survivors(FiberIndex i) const { return survivors_[i]; }
  /// Fibers path j uses.
  const Bits& used_fibers(PathIndex j) const { return uses_[j]; }
  /// Fibers path j survives (S_j).
  Bits survived_fibers(PathIndex j) const { return ~uses_[j]; }

  /// w_i: number of paths using fiber i.
  std::size_t fiber_load(FiberIndex i) const { return load_[i]; }
  /// C_j: number of fibers path j uses.
  std::size_t path_cost(PathIndex j) const { return cost_[j]; }

  std::size_t max_fiber_load() const {
    return load_.empty() ? 0 : *std::max_element(load_.begin(), load_.end());
  }
  std::size_t max_path_cost() const {
    return cost_.empty() ? 0 : *std::max_element(cost_.begin(), cost_.end());
  }

  /// First fiber no path survives, if any. Its absence is exactly the
  /// feasibility of A x P >= e.
  std::optional<FiberIndex> uncoverable_fiber() const {
    for (FiberIndex i = 0; i < m_; ++i) {
      if (survivors_[i].none()) return i;
    }
    return std::nullopt;
  }

  void require_feasible() const {
    if (auto f = uncoverable_fiber()) throw InfeasibleError(*f);
  }

  /// Throws ValidationError when the relation breaks a declared limit.
  void validate(const Limits& limits) const {
    if (limits.K) {
      if (*limits.K < 1) throw ValidationError("K must be at least 1");
      for (PathIndex j = 0; j < n_; ++j) {
        if (cost_[j] > *limits.K) {
          throw ValidationError("path " + std::to_string(j + 1) + " uses " +
                                std::to_string(cost_[j]) +
                                " fibers, more than K=" +
                                std::to_string(*limits.K));
        }
      }
    }
    if (limits.W) {
      if (*limits.W < 1) throw ValidationError("W must be at least 1");
      for (FiberIndex i = 0; i < m_; ++i) {
        if (load_[i] > *limits.W) {
          throw ValidationError("fiber f" + std::to_string(i + 1) +
                                " carries " + std::to_string(load_[i]) +
                                " paths, more than W=" +
                                std::to_string(*limits.W));
        }
      }
      if (n_ > *limits.W * m_) {
        throw ValidationError(std::to_string(n_) +
                              " paths exceed the W*m bound of " +
                              std::to_string(*limits.W * m_));
      }
    }
  }

  friend bool operator==(const SurvivalMatrix& a, const SurvivalMatrix& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.uses_ == b.uses_;
  }

 private:
  void finish() {
    load_.assign(m_, 0);
    cost_.assign(n_, 0);
    for (PathIndex j = 0; j < n_; ++j) {
      cost_[j] = uses_[j].count();
      for (auto i = uses_[j].find_first(); i != Bits::npos;
           i = uses_[j].find_next(i)) {
        ++load_[i];
      }
    }
    for (FiberIndex i = 0; i < m_; ++i) {
      survivors_[i].set();
      for (PathIndex j = 0; j < n_; ++j) {
        if (uses_[j].test(i)) survivors_[i].reset(j);
      }
    }
  }

  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<Bits> uses_;       // per path, width m
  std::vector<Bits> survivors_;  // per fiber, width n
  std::vector<std::size_t> load_;
  std::vector<std::size_t> cost_;
};

/// A survival matrix together with the limits it was declared under.
struct Instance {
  SurvivalMatrix matrix;
  Limits limits;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Fibers survived by at least one path of the selection.
inline Bits covered_fibers(const SurvivalMatrix& mat,
                           std::span<const PathIndex> selection) {
  Bits covered(mat.num_fibers());
  for (PathIndex j : selection) covered |= ~mat.used_fibers(j);
  return covered;
}

/// Union of the fibers used by the selection.
inline Bits union_of_used(const SurvivalMatrix& mat,
                          std::span<const PathIndex> selection) {
  Bits used(mat.num_fibers());
  for (PathIndex j : selection) used |= mat.used_fibers(j);
  return used;
}

/// Fibers whose failure kills every selected path.
inline std::vector<FiberIndex> uncovered_fibers(
    const SurvivalMatrix& mat, std::span<const PathIndex> selection) {
  Bits covered = covered_fibers(mat, selection);
  std::vector<FiberIndex> out;
  for (FiberIndex i = 0; i < mat.num_fibers(); ++i) {
    if (!covered.test(i)) out.push_back(i);
  }
  return out;
}

/// A x P >= e restricted to the selection. Vacuously true when m = 0;
/// false for an empty selection otherwise.
inline bool is_survivable(const SurvivalMatrix& mat,
                          std::span<const PathIndex> selection) {
  for (PathIndex j : selection) {
    if (j >= mat.num_paths()) {
      throw InputError("unknown path " + std::to_string(j + 1));
    }
  }
  return covered_fibers(mat, selection).all();
}

/// A selection of paths with its survivability status and fiber usage.
struct PathSet {
  std::vector<PathIndex> selected;
  bool survivable = false;
  Bits fibers_used;

  std::size_t fiber_count() const { return fibers_used.count(); }

  /// Sum of C_j over the selection (additive fiber cost).
  std::size_t additive_cost(const SurvivalMatrix& mat) const {
    std::size_t total = 0;
    for (PathIndex j : selected) total += mat.path_cost(j);
    return total;
  }
};

inline PathSet make_path_set(const SurvivalMatrix& mat,
                             std::vector<PathIndex> selected) {
  PathSet set;
  set.survivable = is_survivable(mat, selected);
  set.fibers_used = union_of_used(mat, selected);
  set.selected = std::move(selected);
  return set;
}

}  // namespace survpath
