// Copyright (c) survpath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Layered (logical-over-physical) network model.
//
// Fibers are undirected physical edges. Logical links are undirected unless
// the logical topology is marked directed, in which case link (u, v) is only
// traversed from u to v. Logical paths run from source to sink. Every logical node is
// hosted on the physical node with the same id, and each logical link is
// routed over a walk of fibers joining its endpoints.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "survpath/errors.hpp"
#include "survpath/survival_matrix.hpp"

namespace survpath {

using NodeId = std::int64_t;
using LinkIndex = std::size_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  NodeId other(NodeId x) const { return x == u ? v : u; }
  bool touches(NodeId x) const { return x == u || x == v; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

namespace detail {

inline std::vector<NodeId> sorted_unique(std::vector<NodeId> ids) {
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw InputError("duplicate node id");
  }
  return ids;
}

inline bool contains(const std::vector<NodeId>& sorted, NodeId x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace detail

/// G_P: nodes and fibers. Fiber i is stored at index i (id i+1 in files).
class PhysicalTopology {
 public:
  PhysicalTopology() = default;
  PhysicalTopology(std::vector<NodeId> nodes, std::vector<Edge> fibers)
      : nodes_(detail::sorted_unique(std::move(nodes))),
        fibers_(std::move(fibers)) {
    for (std::size_t i = 0; i < fibers_.size(); ++i) {
      const auto& f = fibers_[i];
      if (f.u == f.v) {
        throw InputError("fiber f" + std::to_string(i + 1) + " is a self-loop");
      }
      if (!has_node(f.u) || !has_node(f.v)) {
        throw InputError("fiber f" + std::to_string(i + 1) +
                         " has an unknown endpoint");
      }
    }
  }

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<Edge>& fibers() const { return fibers_; }
  std::size_t num_fibers() const { return fibers_.size(); }
  bool has_node(NodeId x) const { return detail::contains(nodes_, x); }

  friend bool operator==(const PhysicalTopology&,
                         const PhysicalTopology&) = default;

 private:
  std::vector<NodeId> nodes_;
  std::vector<Edge> fibers_;
};

/// G_L with its source s and sink t.
class LogicalTopology {
 public:
  LogicalTopology() = default;
  LogicalTopology(std::vector<NodeId> nodes, std::vector<Edge> links,
                  NodeId source, NodeId sink, bool directed = false)
      : nodes_(detail::sorted_unique(std::move(nodes))),
        links_(std::move(links)),
        source_(source),
        sink_(sink),
        directed_(directed) {
    if (source_ == sink_) throw InputError("source and sink coincide");
    if (!has_node(source_) || !has_node(sink_)) {
      throw InputError("source or sink is not a logical node");
    }
    for (std::size_t k = 0; k < links_.size(); ++k) {
      const auto& l = links_[k];
      if (l.u == l.v) {
        throw InputError("logical link " + std::to_string(k + 1) +
                         " is a self-loop");
      }
      if (!has_node(l.u) || !has_node(l.v)) {
        throw InputError("logical link " + std::to_string(k + 1) +
                         " has an unknown endpoint");
      }
    }
  }

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<Edge>& links() const { return links_; }
  NodeId source() const { return source_; }
  NodeId sink() const { return sink_; }
  bool directed() const { return directed_; }
  bool has_node(NodeId x) const { return detail::contains(nodes_, x); }

  friend bool operator==(const LogicalTopology&,
                         const LogicalTopology&) = default;

 private:
  std::vector<NodeId> nodes_;
  std::vector<Edge> links_;
  NodeId source_ = 0;
  NodeId sink_ = 1;
  bool directed_ = false;
};

/// Per logical link, the ordered fibers of its physical route.
struct LightpathRouting {
  std::vector<std::vector<FiberIndex>> fibers_of_link;

  friend bool operator==(const LightpathRouting&,
                         const LightpathRouting&) = default;
};

/// A validated physical topology, logical topology and lightpath routing.
class LayeredNetwork {
 public:
  LayeredNetwork() = default;
  LayeredNetwork(PhysicalTopology physical, LogicalTopology logical,
                 LightpathRouting routing)
      : physical_(std::move(physical)),
        logical_(std::move(logical)),
        routing_(std::move(routing)) {
    for (NodeId x : logical_.nodes()) {
      if (!physical_.has_node(x)) {
        throw InputError("logical node " + std::to_string(x) +
                         " has no physical host");
      }
    }
    if (routing_.fibers_of_link.size() != logical_.links().size()) {
      throw RoutingError("routing must list one route per logical link");
    }
    for (LinkIndex k = 0; k < logical_.links().size(); ++k) check_route(k);
  }

  const PhysicalTopology& physical() const { return physical_; }
  const LogicalTopology& logical() const { return logical_; }
  const LightpathRouting& routing() const { return routing_; }
  std::size_t num_fibers() const { return physical_.num_fibers(); }

  const std::vector<FiberIndex>& route(LinkIndex k) const {
    return routing_.fibers_of_link.at(k);
  }

  /// Logical links whose lightpath crosses fiber i (they fail together).
  Bits links_using(FiberIndex i) const {
    if (i >= num_fibers()) {
      throw InputError("unknown fiber f" + std::to_string(i + 1));
    }
    Bits failed(logical_.links().size());
    for (LinkIndex k = 0; k < failed.size(); ++k) {
      const auto& r = routing_.fibers_of_link[k];
      if (std::find(r.begin(), r.end(), i) != r.end()) failed.set(k);
    }
    return failed;
  }

  friend bool operator==(const LayeredNetwork&,
                         const LayeredNetwork&) = default;

 private:
  void check_route(LinkIndex k) const {
    const auto& link = logical_.links()[k];
    const auto& route = routing_.fibers_of_link[k];
    const std::string name = "logical link " + std::to_string(k + 1);
    if (route.empty()) throw RoutingError(name + " has an empty routing");
    NodeId at = link.u;
    for (FiberIndex i : route) {
      if (i >= physical_.num_fibers()) {
        throw RoutingError(name + " uses unknown fiber f" +
                           std::to_string(i + 1));
      }
      const auto& f = physical_.fibers()[i];
      if (!f.touches(at)) {
        throw RoutingError(name + " routing is not a connected walk at f" +
                           std::to_string(i + 1));
      }
      at = f.other(at);
    }
    if (at != link.v) {
      throw RoutingError(name + " routing does not end at its endpoint");
    }
  }

  PhysicalTopology physical_;
  LogicalTopology logical_;
  LightpathRouting routing_;
};

/// A source-to-sink walk over logical links and the fibers it depends on.
struct LogicalPath {
  std::vector<LinkIndex> links;
  Bits fibers_used;

  friend bool operator==(const LogicalPath&, const LogicalPath&) = default;
};

/// Validates the link sequence against the network and computes its fiber
/// usage.
inline LogicalPath make_logical_path(const LayeredNetwork& net,
                                     std::vector<LinkIndex> links) {
  const auto& lt = net.logical();
  if (links.empty()) throw InputError("a logical path needs at least one link");
  LogicalPath path{std::move(links), Bits(net.num_fibers())};
  NodeId at = lt.source();
  for (LinkIndex k : path.links) {
    if (k >= lt.links().size()) {
      throw RoutingError("unknown logical link " + std::to_string(k + 1));
    }
    const auto& l = lt.links()[k];
    if (lt.directed() ? l.u != at : !l.touches(at)) {
      throw InputError("logical path is not connected at link " +
                       std::to_string(k + 1));
    }
    at = l.other(at);
    for (FiberIndex i : net.route(k)) path.fibers_used.set(i);
  }
  if (at != lt.sink()) throw InputError("logical path does not end at sink");
  return path;
}

/// Builds A for the given paths. Usage is recomputed from the network's
/// routing; a path whose recorded usage disagrees is rejected.
inline SurvivalMatrix build_survival_matrix(const LayeredNetwork& net,
                                            std::span<const LogicalPath> paths) {
  std::vector<Bits> uses;
  uses.reserve(paths.size());
  for (std::size_t j = 0; j < paths.size(); ++j) {
    Bits u(net.num_fibers());
    for (LinkIndex k : paths[j].links) {
      if (k >= net.logical().links().size()) {
        throw RoutingError("path " + std::to_string(j + 1) +
                           " uses unknown logical link " + std::to_string(k + 1));
      }
      for (FiberIndex i : net.route(k)) u.set(i);
    }
    if (paths[j].fibers_used.size() != u.size() || paths[j].fibers_used != u) {
      throw RoutingError("path " + std::to_string(j + 1) +
                         " fiber usage disagrees with its routing");
    }
    uses.push_back(std::move(u));
  }
  return SurvivalMatrix(net.num_fibers(), std::move(uses));
}

/// After fiber `fiber` fails, does some selected path still run entirely
/// over surviving logical links of G_L^k? Works from the routing, not from
/// A, so it is an independent check of is_survivable.
inline bool residual_survivability_check(const LayeredNetwork& net,
                                         std::span<const LogicalPath> paths,
                                         std::span<const PathIndex> selection,
                                         FiberIndex fiber) {
  const Bits failed = net.links_using(fiber);
  const auto& lt = net.logical();
  for (PathIndex j : selection) {
    if (j >= paths.size()) {
      throw InputError("unknown path " + std::to_string(j + 1));
    }
    NodeId at = lt.source();
    bool intact = true;
    for (LinkIndex k : paths[j].links) {
      if (failed.test(k)) {
        intact = false;
        break;
      }
      at = lt.links()[k].other(at);
    }
    if (intact && at == lt.sink()) return true;
  }
  return false;
}

}  // namespace survpath
