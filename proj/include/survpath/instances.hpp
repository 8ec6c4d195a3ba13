// Copyright (c) survpath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Instance generators: random parallel-path ensembles, the set-cover
// reduction for MSP and the 3-set-cover gadget for MFSP.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "survpath/errors.hpp"
#include "survpath/network.hpp"
#include "survpath/pathing.hpp"
#include "survpath/random.hpp"
#include "survpath/survival_matrix.hpp"

namespace survpath {

struct RandomEnsembleConfig {
  std::size_t n_paths = 50;
  std::size_t m_fibers = 100;
  std::size_t W = 2;
  std::optional<std::size_t> K;
  std::size_t trials = 1;
  std::uint64_t seed = 0;

  /// Throws PreconditionError unless n <= W*m, trials >= 1 and the caps
  /// are positive.
  void validate() const {
    if (m_fibers == 0) throw PreconditionError("need at least one fiber");
    if (W == 0) throw PreconditionError("W must be at least 1");
    if (K && *K == 0) throw PreconditionError("K must be at least 1");
    if (trials == 0) throw PreconditionError("trials must be at least 1");
    if (n_paths > W * m_fibers) {
      throw PreconditionError(std::to_string(n_paths) +
                              " paths cannot fit under W*m = " +
                              std::to_string(W * m_fibers));
    }
  }
};

/// One trial of the ensemble. Each path draws a size uniformly from [1, K]
/// (or [1, m]) and then that many distinct fibers uniformly among those with
/// residual capacity. The size is clamped so every later path still finds a
/// free slot and to the number of fibers with capacity left.
inline Instance gen_random_trial(const RandomEnsembleConfig& cfg,
                                 std::size_t trial) {
  cfg.validate();
  Rng rng(derive_seed(cfg.seed, {trial}));
  const std::size_t m = cfg.m_fibers;
  const std::size_t max_size = cfg.K ? std::min(*cfg.K, m) : m;
  std::vector<std::size_t> residual(m, cfg.W);
  std::size_t total_residual = cfg.W * m;
  std::vector<std::vector<FiberIndex>> paths;
  paths.reserve(cfg.n_paths);
  std::vector<FiberIndex> open;
  for (std::size_t j = 0; j < cfg.n_paths; ++j) {
    std::size_t k = 1 + uniform_below(rng, max_size);
    open.clear();
    for (FiberIndex i = 0; i < m; ++i) {
      if (residual[i] > 0) open.push_back(i);
    }
    const std::size_t later = cfg.n_paths - j - 1;
    k = std::min({k, open.size(), total_residual - later});
    // partial Fisher-Yates over the open fibers
    for (std::size_t t = 0; t < k; ++t) {
      const auto pick = t + uniform_below(rng, open.size() - t);
      std::swap(open[t], open[pick]);
      --residual[open[t]];
    }
    total_residual -= k;
    std::vector<FiberIndex> used(open.begin(), open.begin() + static_cast<long>(k));
    std::sort(used.begin(), used.end());
    paths.push_back(std::move(used));
  }
  Limits limits;
  limits.W = cfg.W;
  limits.K = cfg.K;
  return Instance{SurvivalMatrix(m, paths), limits};
}

inline std::vector<SurvivalMatrix> gen_random_parallel(
    const RandomEnsembleConfig& cfg) {
  cfg.validate();
  std::vector<SurvivalMatrix> out;
  out.reserve(cfg.trials);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    out.push_back(gen_random_trial(cfg, t).matrix);
  }
  return out;
}

/// Set cover as MSP: fiber i is element i+1, path j survives exactly the
/// elements of subset j. Elements are one-based.
inline SurvivalMatrix gen_from_setcover(
    std::size_t ground_size,
    const std::vector<std::vector<std::size_t>>& subsets) {
  if (subsets.empty()) throw InputError("set cover needs at least one subset");
  std::vector<Bits> uses;
  uses.reserve(subsets.size());
  for (std::size_t j = 0; j < subsets.size(); ++j) {
    Bits u(ground_size);
    u.set();
    for (std::size_t e : subsets[j]) {
      if (e < 1 || e > ground_size) {
        throw InputError("subset " + std::to_string(j + 1) + " has element " +
                         std::to_string(e) + " outside 1.." +
                         std::to_string(ground_size));
      }
      u.reset(e - 1);
    }
    uses.push_back(std::move(u));
  }
  return SurvivalMatrix(ground_size, std::move(uses));
}

/// Layered network whose MFSP optimum encodes a minimum 3-set cover.
///
/// Physical layout (logical links are directed):
///   s --(L-fiber chain)--> left node C_j, one chain per triple, every chain
///     fiber also a logical link;
///   C_j -> e_i for each element of triple j, fiber and logical link alike;
///   e_i joins tail head r by fiber f_i; the tail r = t_0 .. t_m = t carries
///     two parallel fibers U_i, L_i per segment;
///   lightpath e_i -> t routes over f_i, U_i and L_k for every k != i.
///
/// A bypass lightpath s -> t routes over an extra fiber g from s to r and then
/// U_i, L_i, U_i on every segment. Every tail failure kills it, so it never
/// replaces an element path; it only survives chain failures when the cover
/// uses a single triple.
///
/// Optimal fibers F = 4m + L*c + [c == 1] for minimum cover size c, so
/// c = (F - 4m) / L (integer division) once L > 1.
struct SetCoverGadget {
  LayeredNetwork network;
  PathCatalog catalog;
  std::size_t elements = 0;
  std::size_t chain_length = 0;

  std::size_t decode_cover_size(std::size_t optimal_fibers) const {
    const std::size_t base = 4 * elements;
    if (optimal_fibers < base) {
      throw PreconditionError("fiber count below the gadget's fixed cost");
    }
    return (optimal_fibers - base) / chain_length;
  }
};

inline SetCoverGadget gen_mfsp_3setcover_gadget(
    std::size_t elements, const std::vector<std::vector<std::size_t>>& triples,
    std::size_t L) {
  if (triples.empty()) throw InputError("gadget needs at least one triple");
  std::vector<bool> covered(elements, false);
  for (std::size_t j = 0; j < triples.size(); ++j) {
    auto t = triples[j];
    std::sort(t.begin(), t.end());
    if (t.size() != 3 || std::adjacent_find(t.begin(), t.end()) != t.end()) {
      throw InputError("triple " + std::to_string(j + 1) +
                       " must hold 3 distinct elements");
    }
    for (std::size_t e : t) {
      if (e < 1 || e > elements) {
        throw InputError("triple " + std::to_string(j + 1) + " has element " +
                         std::to_string(e) + " outside 1.." +
                         std::to_string(elements));
      }
      covered[e - 1] = true;
    }
  }
  for (std::size_t e = 0; e < elements; ++e) {
    if (!covered[e]) {
      throw InputError("element " + std::to_string(e + 1) +
                       " is in no triple");
    }
  }
  if (L < 3 * elements + 3 * triples.size()) {
    throw PreconditionError("padding L must be at least 3m + 3n");
  }

  const std::size_t m = elements;
  NodeId next_id = 0;
  const NodeId s = next_id++;
  const NodeId t = next_id++;
  std::vector<NodeId> tail{next_id++};  // r
  for (std::size_t i = 1; i < m; ++i) tail.push_back(next_id++);
  tail.push_back(t);
  std::vector<NodeId> right(m), left(triples.size());
  for (auto& x : right) x = next_id++;
  for (auto& x : left) x = next_id++;

  std::vector<Edge> fibers;
  std::vector<Edge> links;
  LightpathRouting routing;
  auto add_fiber = [&](NodeId u, NodeId v) {
    fibers.push_back({u, v});
    return fibers.size() - 1;
  };
  auto add_link = [&](NodeId u, NodeId v, std::vector<FiberIndex> route) {
    links.push_back({u, v});
    routing.fibers_of_link.push_back(std::move(route));
  };

  std::vector<NodeId> logical_nodes{s, t};
  for (std::size_t j = 0; j < triples.size(); ++j) {
    NodeId at = s;
    for (std::size_t step = 0; step < L; ++step) {
      const NodeId to = step + 1 == L ? left[j] : next_id++;
      add_link(at, to, {add_fiber(at, to)});
      logical_nodes.push_back(to);
      at = to;
    }
  }
  for (std::size_t j = 0; j < triples.size(); ++j) {
    auto tr = triples[j];
    std::sort(tr.begin(), tr.end());
    for (std::size_t e : tr) {
      add_link(left[j], right[e - 1], {add_fiber(left[j], right[e - 1])});
    }
  }
  logical_nodes.insert(logical_nodes.end(), right.begin(), right.end());

  std::vector<FiberIndex> f(m), upper(m), lower(m);
  for (std::size_t i = 0; i < m; ++i) f[i] = add_fiber(right[i], tail[0]);
  for (std::size_t i = 0; i < m; ++i) {
    upper[i] = add_fiber(tail[i], tail[i + 1]);
    lower[i] = add_fiber(tail[i], tail[i + 1]);
  }
  const FiberIndex g = add_fiber(s, tail[0]);

  for (std::size_t i = 0; i < m; ++i) {
    std::vector<FiberIndex> route{f[i]};
    for (std::size_t k = 0; k < m; ++k) route.push_back(k == i ? upper[k] : lower[k]);
    add_link(right[i], t, std::move(route));
  }
  std::vector<FiberIndex> bypass{g};
  for (std::size_t k = 0; k < m; ++k) {
    bypass.insert(bypass.end(), {upper[k], lower[k], upper[k]});
  }
  add_link(s, t, std::move(bypass));

  std::vector<NodeId> physical_nodes(static_cast<std::size_t>(next_id));
  std::iota(physical_nodes.begin(), physical_nodes.end(), NodeId{0});

  SetCoverGadget gadget;
  gadget.network = LayeredNetwork(
      PhysicalTopology(std::move(physical_nodes), std::move(fibers)),
      LogicalTopology(std::move(logical_nodes), std::move(links), s, t,
                      /*directed=*/true),
      std::move(routing));
  gadget.catalog = enumerate_all_paths(gadget.network);
  gadget.elements = m;
  gadget.chain_length = L;
  return gadget;
}

}  // namespace survpath
