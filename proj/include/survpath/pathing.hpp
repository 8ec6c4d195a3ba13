// Copyright (c) survpath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Candidate path catalogs: enumeration of simple logical s-t paths under a
// fiber budget, and catalogs of parallel paths given directly as fiber sets.

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "survpath/network.hpp"
#include "survpath/survival_matrix.hpp"

namespace survpath {

struct PathCatalog {
  std::vector<LogicalPath> paths;
  Limits limits;
  /// True when the catalog provably holds every admissible path.
  bool complete = false;
  std::size_t num_fibers = 0;

  SurvivalMatrix matrix() const {
    std::vector<Bits> uses;
    uses.reserve(paths.size());
    for (const auto& p : paths) uses.push_back(p.fibers_used);
    return SurvivalMatrix(num_fibers, std::move(uses));
  }

  Instance instance() const { return Instance{matrix(), limits}; }
};

namespace detail {

class PathEnumerator {
 public:
  PathEnumerator(const LayeredNetwork& net, std::size_t fiber_budget,
                 std::size_t max_paths)
      : net_(net), budget_(fiber_budget), max_paths_(max_paths) {
    const auto& lt = net.logical();
    for (LinkIndex k = 0; k < lt.links().size(); ++k) {
      adjacency_[lt.links()[k].u].push_back(k);
      if (!lt.directed()) adjacency_[lt.links()[k].v].push_back(k);
    }
  }

  std::vector<LogicalPath> run() {
    const NodeId s = net_.logical().source();
    on_path_.push_back(s);
    dfs(s, Bits(net_.num_fibers()));
    return std::move(found_);
  }

 private:
  void dfs(NodeId at, const Bits& used) {
    if (at == net_.logical().sink()) {
      if (found_.size() >= max_paths_) {
        throw InputError("path enumeration exceeded " +
                         std::to_string(max_paths_) + " paths");
      }
      found_.push_back(LogicalPath{links_, used});
      return;
    }
    auto it = adjacency_.find(at);
    if (it == adjacency_.end()) return;
    for (LinkIndex k : it->second) {
      const NodeId next = net_.logical().links()[k].other(at);
      if (std::find(on_path_.begin(), on_path_.end(), next) != on_path_.end()) {
        continue;
      }
      Bits grown = used;
      for (FiberIndex i : net_.route(k)) grown.set(i);
      // fiber union only grows along a path, so the budget prunes soundly
      if (grown.count() > budget_) continue;
      links_.push_back(k);
      on_path_.push_back(next);
      dfs(next, grown);
      on_path_.pop_back();
      links_.pop_back();
    }
  }

  const LayeredNetwork& net_;
  std::size_t budget_;
  std::size_t max_paths_;
  std::map<NodeId, std::vector<LinkIndex>> adjacency_;
  std::vector<NodeId> on_path_;
  std::vector<LinkIndex> links_;
  std::vector<LogicalPath> found_;
};

inline void sort_catalog(std::vector<LogicalPath>& paths) {
  std::sort(paths.begin(), paths.end(),
            [](const LogicalPath& a, const LogicalPath& b) {
              return a.links < b.links;
            });
}

}  // namespace detail

/// Every simple s-t logical path whose fiber usage is at most K, sorted by
/// link sequence. Disconnected s and t yield an empty catalog.
inline PathCatalog enumerate_paths_k_restricted(
    const LayeredNetwork& net, std::size_t K,
    std::size_t max_paths = std::numeric_limits<std::size_t>::max()) {
  if (K < 1) throw PreconditionError("K must be at least 1");
  PathCatalog catalog;
  catalog.paths = detail::PathEnumerator(net, K, max_paths).run();
  detail::sort_catalog(catalog.paths);
  catalog.limits.K = K;
  catalog.complete = true;
  catalog.num_fibers = net.num_fibers();
  return catalog;
}

/// Every simple s-t logical path, without a fiber budget.
inline PathCatalog enumerate_all_paths(
    const LayeredNetwork& net,
    std::size_t max_paths = std::numeric_limits<std::size_t>::max()) {
  PathCatalog catalog;
  catalog.paths = detail::PathEnumerator(
                      net, std::numeric_limits<std::size_t>::max(), max_paths)
                      .run();
  detail::sort_catalog(catalog.paths);
  catalog.complete = true;
  catalog.num_fibers = net.num_fibers();
  return catalog;
}

/// Catalog of parallel s-t paths given directly as fiber sets (the two-node
/// logical abstraction). Path j is logical link j. Declared limits are
/// enforced, including the W*m cap on the number of paths.
inline PathCatalog make_parallel_catalog(const Instance& inst) {
  inst.matrix.validate(inst.limits);
  PathCatalog catalog;
  catalog.limits = inst.limits;
  catalog.num_fibers = inst.matrix.num_fibers();
  catalog.complete = true;
  for (PathIndex j = 0; j < inst.matrix.num_paths(); ++j) {
    catalog.paths.push_back(LogicalPath{{j}, inst.matrix.used_fibers(j)});
  }
  return catalog;
}

}  // namespace survpath
