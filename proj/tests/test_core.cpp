// Copyright (c) survpath contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "survpath/io.hpp"
#include "survpath/network.hpp"
#include "survpath/pathing.hpp"
#include "survpath/survival_matrix.hpp"

using namespace survpath;
using testing_support::from_lists;

namespace {

SurvivalMatrix pairwise3() { return from_lists(3, {{1, 2}, {2, 3}, {1, 3}}); }

// s=1, t=4; logical links are the fibers themselves
LayeredNetwork diamond() {
  PhysicalTopology phys({1, 2, 3, 4},
                        {{1, 2}, {2, 4}, {1, 3}, {3, 4}, {2, 3}});
  LogicalTopology log({1, 2, 3, 4},
                      {{1, 2}, {2, 4}, {1, 3}, {3, 4}, {2, 3}}, 1, 4);
  return LayeredNetwork(phys, log, LightpathRouting{{{0}, {1}, {2}, {3}, {4}}});
}

}  // namespace

TEST(SurvivalMatrix, PairwiseRowsAreComplementOfUsage) {
  auto mat = pairwise3();
  // rows f1=(0,1,0) f2=(0,0,1) f3=(1,0,0)
  const int expect[3][3] = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  for (FiberIndex i = 0; i < 3; ++i) {
    for (PathIndex j = 0; j < 3; ++j) {
      EXPECT_EQ(mat.survives(i, j), expect[i][j] == 1) << i << ',' << j;
      EXPECT_EQ(mat.uses(i, j), expect[i][j] == 0);
    }
    EXPECT_EQ(mat.fiber_load(i), 2u);
  }
}

TEST(SurvivalMatrix, PathUsingEveryFiberHasZeroColumn) {
  auto mat = from_lists(4, {{1, 2, 3, 4}});
  for (FiberIndex i = 0; i < 4; ++i) EXPECT_FALSE(mat.survives(i, 0));
  EXPECT_EQ(mat.path_cost(0), 4u);
  ASSERT_TRUE(mat.uncoverable_fiber());
  EXPECT_EQ(*mat.uncoverable_fiber(), 0u);
  EXPECT_THROW(mat.require_feasible(), InfeasibleError);
}

TEST(SurvivalMatrix, UnknownFiberIsRoutingError) {
  EXPECT_THROW(SurvivalMatrix(2, std::vector<std::vector<FiberIndex>>{{0, 2}}), RoutingError);
}

TEST(SurvivalMatrix, ValidateLimits) {
  auto mat = from_lists(2, {{1}, {1}, {1, 2}});
  EXPECT_NO_THROW(mat.validate({2, 3}));
  EXPECT_THROW(mat.validate({1, std::nullopt}), ValidationError);
  EXPECT_THROW(mat.validate({std::nullopt, 2}), ValidationError);
  // 3 paths but W*m = 1*2
  auto disjoint = from_lists(2, {{1}, {2}, {}});
  EXPECT_THROW(disjoint.validate({std::nullopt, 1}), ValidationError);
}

TEST(IsSurvivable, PairwiseInstance) {
  auto mat = pairwise3();
  EXPECT_TRUE(is_survivable(mat, std::vector<PathIndex>{0, 1, 2}));
  for (auto pair : {std::vector<PathIndex>{0, 1}, {0, 2}, {1, 2}}) {
    EXPECT_FALSE(is_survivable(mat, pair));
  }
  EXPECT_FALSE(is_survivable(mat, std::vector<PathIndex>{}));
  EXPECT_THROW(is_survivable(mat, std::vector<PathIndex>{3}), InputError);
}

TEST(IsSurvivable, NoFibersIsVacuouslyTrue) {
  SurvivalMatrix mat(0, std::vector<std::vector<FiberIndex>>{{}, {}});
  EXPECT_TRUE(is_survivable(mat, std::vector<PathIndex>{}));
  EXPECT_TRUE(is_survivable(mat, std::vector<PathIndex>{1}));
}

TEST(IsSurvivable, UncoveredFibersListed) {
  auto mat = pairwise3();
  auto missing = uncovered_fibers(mat, std::vector<PathIndex>{0, 1});
  EXPECT_EQ(missing, std::vector<FiberIndex>{1});
}

TEST(Properties, PairSurvivableIffDisjoint) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    auto mat = testing_support::random_matrix(rng, 6, 5, 0.3);
    for (PathIndex a = 0; a < 5; ++a) {
      for (PathIndex b = a + 1; b < 5; ++b) {
        const bool disjoint =
            !(mat.used_fibers(a) & mat.used_fibers(b)).any();
        EXPECT_EQ(is_survivable(mat, std::vector<PathIndex>{a, b}), disjoint);
      }
    }
  }
}

TEST(Properties, AddingAPathKeepsSurvivability) {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 200; ++rep) {
    auto mat = testing_support::random_matrix(rng, 7, 8, 0.35);
    std::vector<PathIndex> all(8);
    for (PathIndex j = 0; j < 8; ++j) all[j] = j;
    for (std::uint32_t mask = 0; mask < 256; mask += 7) {
      std::vector<PathIndex> sel;
      for (PathIndex j = 0; j < 8; ++j) {
        if (mask >> j & 1u) sel.push_back(j);
      }
      if (!is_survivable(mat, sel)) continue;
      for (PathIndex extra = 0; extra < 8; ++extra) {
        auto more = sel;
        more.push_back(extra);
        EXPECT_TRUE(is_survivable(mat, more));
      }
    }
  }
}

TEST(Network, RejectsBrokenTopologies) {
  EXPECT_THROW(PhysicalTopology({1, 2}, {{1, 1}}), InputError);
  EXPECT_THROW(PhysicalTopology({1, 2}, {{1, 3}}), InputError);
  EXPECT_THROW(LogicalTopology({1, 2}, {}, 1, 1), InputError);
  PhysicalTopology phys({1, 2, 3}, {{1, 2}, {2, 3}});
  LogicalTopology log({1, 3}, {{1, 3}}, 1, 3);
  EXPECT_NO_THROW(LayeredNetwork(phys, log, LightpathRouting{{{0, 1}}}));
  EXPECT_THROW(LayeredNetwork(phys, log, LightpathRouting{{{1, 0}}}),
               RoutingError);
  EXPECT_THROW(LayeredNetwork(phys, log, LightpathRouting{{{0}}}),
               RoutingError);
  EXPECT_THROW(LayeredNetwork(phys, log, LightpathRouting{{{0, 5}}}),
               RoutingError);
  EXPECT_THROW(LayeredNetwork(phys, log, LightpathRouting{{{}}}), RoutingError);
}

TEST(Network, BuildSurvivalMatrixFromRouting) {
  auto net = diamond();
  std::vector<LogicalPath> paths{make_logical_path(net, {0, 1}),
                                 make_logical_path(net, {2, 3})};
  auto mat = build_survival_matrix(net, paths);
  EXPECT_EQ(mat.num_fibers(), 5u);
  EXPECT_TRUE(mat.uses(0, 0));
  EXPECT_TRUE(mat.uses(1, 0));
  EXPECT_TRUE(mat.survives(2, 0));
  EXPECT_TRUE(mat.uses(3, 1));
  EXPECT_TRUE(mat.survives(4, 0) && mat.survives(4, 1));

  auto tampered = paths;
  tampered[0].fibers_used.reset(0);
  EXPECT_THROW(build_survival_matrix(net, tampered), RoutingError);
  auto unknown = paths;
  unknown[1].links.push_back(9);
  EXPECT_THROW(build_survival_matrix(net, unknown), RoutingError);
  EXPECT_THROW(make_logical_path(net, {0, 3}), InputError);
}

TEST(Network, DirectedLinksOnlyForward) {
  PhysicalTopology phys({1, 2}, {{1, 2}});
  LogicalTopology log({1, 2}, {{2, 1}}, 1, 2, true);
  LayeredNetwork net(phys, log, LightpathRouting{{{0}}});
  EXPECT_THROW(make_logical_path(net, {0}), InputError);
  EXPECT_TRUE(enumerate_all_paths(net).paths.empty());
}

TEST(ResidualCheck, SinglePathCases) {
  auto net = diamond();
  std::vector<LogicalPath> paths{make_logical_path(net, {0, 1}),
                                 make_logical_path(net, {2, 3})};
  const std::vector<PathIndex> one{0};
  EXPECT_FALSE(residual_survivability_check(net, paths, one, 0));
  EXPECT_TRUE(residual_survivability_check(net, paths, one, 2));
  EXPECT_THROW(residual_survivability_check(net, paths, one, 7), InputError);
}

TEST(ResidualCheck, AgreesWithMatrixOnEnumeratedCatalogs) {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 60; ++rep) {
    // random physical graph on 6 nodes, logical links routed over 1-2 fibers
    std::vector<Edge> fibers;
    for (NodeId u = 1; u <= 6; ++u) {
      for (NodeId v = u + 1; v <= 6; ++v) {
        if (std::bernoulli_distribution(0.5)(rng)) fibers.push_back({u, v});
      }
    }
    if (fibers.empty()) continue;
    PhysicalTopology phys({1, 2, 3, 4, 5, 6}, fibers);
    std::vector<Edge> links;
    LightpathRouting routing;
    for (FiberIndex i = 0; i < fibers.size(); ++i) {
      links.push_back(fibers[i]);
      routing.fibers_of_link.push_back({i});
    }
    LayeredNetwork net(phys, LogicalTopology({1, 2, 3, 4, 5, 6}, links, 1, 6),
                       routing);
    auto catalog = enumerate_all_paths(net, 5000);
    if (catalog.paths.empty() || catalog.paths.size() > 10) continue;
    auto mat = catalog.matrix();
    const std::size_t n = catalog.paths.size();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<PathIndex> sel;
      for (PathIndex j = 0; j < n; ++j) {
        if (mask >> j & 1u) sel.push_back(j);
      }
      bool all = true;
      for (FiberIndex i = 0; i < mat.num_fibers(); ++i) {
        all = all && residual_survivability_check(net, catalog.paths, sel, i);
      }
      ASSERT_EQ(all, is_survivable(mat, sel));
    }
  }
}

TEST(Io, SpnRoundTripIsCanonical) {
  const std::string text =
      "spn 1\nfibers 4\nw 2\nk 3\npath 1: f1 f2\npath 2: f3\npath 3: f2 f4\n";
  auto inst = io::spn_from_string(text);
  EXPECT_EQ(io::to_spn(inst), text);
  EXPECT_EQ(io::spn_from_string(io::to_spn(inst)), inst);
}

TEST(Io, SpnAcceptsLooseSyntax) {
  auto inst = io::spn_from_string(
      "# comment\n\nspn 1\nfibers 3\npath 1: 2 f1\npath 2: f3\n");
  EXPECT_EQ(io::to_spn(inst), "spn 1\nfibers 3\npath 1: f1 f2\npath 2: f3\n");
}

TEST(Io, SpnErrorsNameTheLine) {
  auto fails = [](const std::string& text, const std::string& needle) {
    try {
      io::spn_from_string(text);
    } catch (const InputError& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  EXPECT_TRUE(fails("spn 2\n", "line 1"));
  EXPECT_TRUE(fails("spn 1\nfibers 2\npath 2: f1\n", "line 3"));
  EXPECT_TRUE(fails("spn 1\nfibers 2\npath 1: f3\n", "out of range"));
  EXPECT_TRUE(fails("spn 1\nfibers 2\npath 1: f1 f1\n", "duplicate"));
  EXPECT_TRUE(fails("spn 1\npath 1: f1\n", "'fibers'"));
  EXPECT_TRUE(fails("", "empty"));
}

TEST(Io, ParallelLoadEnforcesW) {
  // three parallel paths, W=2, loads <= 2
  EXPECT_NO_THROW(make_parallel_catalog(io::spn_from_string(
      "spn 1\nfibers 2\nw 2\npath 1: f1\npath 2: f1 f2\npath 3: f2\n")));
  EXPECT_THROW(io::spn_from_string(
                   "spn 1\nfibers 2\nw 2\npath 1: f1\npath 2: f1\npath 3: f1\n"),
               ValidationError);
  EXPECT_THROW(io::spn_from_string("spn 1\nfibers 1\nw 1\npath 1:\npath 2:\n"),
               ValidationError);
  auto catalog = io::load_parallel_paths(testing_support::data_file("pairwise3.spn"));
  EXPECT_EQ(catalog.paths.size(), 3u);
  EXPECT_EQ(catalog.matrix(), pairwise3());
}

TEST(Io, LnetRoundTrip) {
  auto in = io::open_input(testing_support::data_file("diamond.lnet"));
  auto net = io::read_lnet(in);
  EXPECT_EQ(net, diamond());
  EXPECT_EQ(io::lnet_from_string(io::to_lnet(net)), net);
  auto directed = io::lnet_from_string(
      "pnodes 1 2\npfibers\n1 1 2\nlnodes 1 2\ndirected\nllinks\n1 1 2: 1\n"
      "st 1 2\n");
  EXPECT_TRUE(directed.logical().directed());
  EXPECT_EQ(io::lnet_from_string(io::to_lnet(directed)), directed);
}

TEST(Io, LnetErrors) {
  EXPECT_THROW(io::lnet_from_string("pnodes 1 2\nlnet 1\nst 1 2\n"), InputError);
  EXPECT_THROW(io::lnet_from_string("pnodes 1 2\npfibers\n1 1 2\nlnodes 1 2\n"
                                    "llinks\n1 1 2: 4\nst 1 2\n"),
               RoutingError);
  EXPECT_THROW(io::lnet_from_string("pnodes 1 2\n"), InputError);
}
