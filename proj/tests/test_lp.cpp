// Copyright (c) survpath contributors.
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "survpath/lp.hpp"

using namespace survpath;
using testing_support::from_lists;

namespace {

void expect_relative(double got, double want) {
  EXPECT_LE(std::abs(got - want), 1e-7 * std::max(1.0, std::abs(want)))
      << got << " vs " << want;
}

// Checks primal feasibility and a dual certificate for
// max c.x, A x <= b, x >= 0.
void check_certificate(const lp::Problem& p, const lp::Result& r) {
  ASSERT_EQ(r.status, lp::Status::optimal);
  std::vector<double> ay(p.num_vars, 0.0);
  double by = 0;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    double lhs = 0;
    for (auto [v, c] : p.rows[i].terms) {
      lhs += c * r.x[v];
      ay[v] += c * r.duals[i];
    }
    EXPECT_LE(lhs, p.rows[i].rhs + 1e-9);
    EXPECT_GE(r.duals[i], -1e-9);
    by += p.rows[i].rhs * r.duals[i];
  }
  for (std::size_t v = 0; v < p.num_vars; ++v) {
    EXPECT_GE(r.x[v], -1e-9);
    EXPECT_GE(ay[v], p.objective[v] - 1e-9);
  }
  expect_relative(by, r.objective);
}

}  // namespace

TEST(Simplex, TextbookMaximum) {
  // max 3x + 5y; x <= 4; 2y <= 12; 3x + 2y <= 18 -> 36 at (2, 6)
  lp::Problem p{2, {3, 5}, {{{{0, 1}}, 4}, {{{1, 2}}, 12}, {{{0, 3}, {1, 2}}, 18}}};
  auto r = lp::solve(p);
  EXPECT_NEAR(r.objective, 36.0, 1e-9);
  EXPECT_NEAR(r.x[0], 2.0, 1e-9);
  EXPECT_NEAR(r.x[1], 6.0, 1e-9);
  check_certificate(p, r);
}

TEST(Simplex, NeedsPhaseOne) {
  // max -x - y; x + y >= 2; x <= 3 -> -2
  lp::Problem p{2, {-1, -1}, {{{{0, -1}, {1, -1}}, -2}, {{{0, 1}}, 3}}};
  auto r = lp::solve(p);
  EXPECT_NEAR(r.objective, -2.0, 1e-9);
  check_certificate(p, r);
}

TEST(Simplex, InfeasibleAndUnbounded) {
  lp::Problem infeasible{1, {1}, {{{{0, 1}}, 1}, {{{0, -1}}, -2}}};
  EXPECT_EQ(lp::solve(infeasible).status, lp::Status::infeasible);
  lp::Problem unbounded{2, {1, 0}, {{{{1, 1}}, 1}}};
  EXPECT_EQ(lp::solve(unbounded).status, lp::Status::unbounded);
  lp::Problem bad{1, {1, 2}, {}};
  EXPECT_THROW(lp::solve(bad), PreconditionError);
}

TEST(Simplex, DegenerateCyclingExample) {
  // Beale's example cycles under the textbook largest-coefficient rule
  lp::Problem p{4,
                {0.75, -150, 0.02, -6},
                {{{{0, 0.25}, {1, -60}, {2, -0.04}, {3, 9}}, 0},
                 {{{0, 0.5}, {1, -90}, {2, -0.02}, {3, 3}}, 0},
                 {{{2, 1}}, 1}}};
  auto r = lp::solve(p);
  EXPECT_NEAR(r.objective, 0.05, 1e-9);
  check_certificate(p, r);
}

TEST(Relaxation, HandExamples) {
  auto two = solve_mfsp_relaxation(from_lists(2, {{1}, {2}}));
  expect_relative(two.objective, 2.0);
  EXPECT_NEAR(two.p_star[0], 1.0, 1e-9);
  EXPECT_NEAR(two.p_star[1], 1.0, 1e-9);

  // a path using no fiber survives everything for free
  auto universal = solve_mfsp_relaxation(from_lists(3, {{}, {1, 2}}));
  EXPECT_NEAR(universal.objective, 0.0, 1e-9);
  SurvivalMatrix single(4, std::vector<std::vector<FiberIndex>>{{0, 1, 2}});
  EXPECT_THROW(solve_mfsp_relaxation(single), InfeasibleError);
}

TEST(Relaxation, SinglePathSurvivingAllFibersOfOthers) {
  // the only survivor of f4 must be taken fully and pays for its three fibers
  auto sol = solve_mfsp_relaxation(from_lists(4, {{1, 2, 3}, {4}}));
  expect_relative(sol.objective, 4.0);
  EXPECT_NEAR(sol.p_star[0], 1.0, 1e-9);
}

// LP* values computed independently with scipy.optimize.linprog (HiGHS).
TEST(Relaxation, FrozenReferenceValues) {
  struct Case {
    std::size_t m;
    std::vector<std::vector<std::size_t>> paths;
    double lp_star;
  };
  const std::vector<Case> cases{
      {3, {{1, 2}, {2, 3}, {1, 3}}, 3.0},
      {9, {{1, 2, 3}, {4, 5, 6, 7}, {4, 5, 8, 9}, {6, 7, 8, 9}}, 4.0},
      {8, {{1, 2, 3}, {4, 5, 6, 7}, {4, 5, 8}, {6, 7, 8}}, 11.0 / 3},
      {2, {{1}, {2}}, 2.0},
      {10,
       {{6, 8, 9}, {1, 3, 4, 6}, {2, 7, 9}, {1, 9}, {2, 4, 8, 10}, {6, 8, 10},
        {4, 6}, {3, 9}},
       9.0 / 4},
      {10,
       {{2}, {4, 5, 10}, {9, 10}, {3}, {6}, {6, 9, 10}, {3}, {1, 5, 7, 10}},
       6.0 / 5},
      {10,
       {{2, 9}, {8}, {2, 5, 6}, {2, 8, 9, 10}, {4}, {1, 2, 6}, {1, 5},
        {2, 4, 7, 10}},
       11.0 / 7},
      {10,
       {{5}, {1, 4, 10}, {4}, {1, 3}, {1, 2, 4}, {10}, {3, 10}, {8}},
       11.0 / 9},
  };
  for (const auto& c : cases) {
    auto sol = solve_mfsp_relaxation(from_lists(c.m, c.paths));
    expect_relative(sol.objective, c.lp_star);
    double sum = 0;
    for (double f : sol.f_star) sum += f;
    expect_relative(sum, sol.objective);
  }
}

TEST(Relaxation, FeasibleAndBelowIntegerOptimum) {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int rep = 0; rep < 200; ++rep) {
    auto mat = testing_support::random_matrix(rng, 3 + rep % 9, 2 + rep % 10, 0.3);
    auto best = oracle::min_fibers(mat);
    if (!best) continue;
    auto sol = solve_mfsp_relaxation(mat);
    for (FiberIndex i = 0; i < mat.num_fibers(); ++i) {
      double cover = 0;
      for (PathIndex j = 0; j < mat.num_paths(); ++j) {
        if (mat.survives(i, j)) cover += sol.p_star[j];
        if (mat.uses(i, j)) {
          EXPECT_GE(sol.f_star[i], sol.p_star[j] - 1e-9);
        }
      }
      EXPECT_GE(cover, 1.0 - 1e-9);
    }
    for (double v : sol.p_star) EXPECT_TRUE(v >= 0 && v <= 1);
    // weak duality against the integer optimum
    std::uint32_t mask = 0;
    for (auto j : *best) mask |= 1u << j;
    EXPECT_LE(sol.objective, oracle::fibers_of(mat, mask) + 1e-7);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(Relaxation, InvariantUnderCoverageRowDuplication) {
  std::mt19937_64 rng(53);
  for (int rep = 0; rep < 40; ++rep) {
    auto mat = testing_support::random_matrix(rng, 8, 7, 0.3);
    if (mat.uncoverable_fiber()) continue;
    auto problem = mfsp_relaxation_problem(mat);
    const auto base = lp::solve(problem);
    check_certificate(problem, base);
    for (FiberIndex i = 0; i < mat.num_fibers(); ++i) {
      problem.rows.push_back(problem.rows[i]);
    }
    const auto dup = lp::solve(problem);
    check_certificate(problem, dup);
    expect_relative(dup.objective, base.objective);
    expect_relative(-base.objective, solve_mfsp_relaxation(mat).objective);
  }
}

TEST(Relaxation, FiberCopiesDoubleTheObjective) {
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 40; ++rep) {
    auto mat = testing_support::random_matrix(rng, 8, 7, 0.3);
    if (mat.uncoverable_fiber()) continue;
    // duplicate every fiber: paths use fiber i and its copy i + m together
    std::vector<std::vector<FiberIndex>> doubled(mat.num_paths());
    for (PathIndex j = 0; j < mat.num_paths(); ++j) {
      for (FiberIndex i = 0; i < mat.num_fibers(); ++i) {
        if (mat.uses(i, j)) {
          doubled[j].push_back(i);
          doubled[j].push_back(i + mat.num_fibers());
        }
      }
    }
    SurvivalMatrix twice(2 * mat.num_fibers(), doubled);
    const double base = solve_mfsp_relaxation(mat).objective;
    // coverage rows duplicate; fiber objective doubles with the fiber copies
    expect_relative(solve_mfsp_relaxation(twice).objective, 2 * base);
  }
}

TEST(Relaxation, Deterministic) {
  std::mt19937_64 rng(47);
  auto mat = testing_support::random_matrix(rng, 12, 10, 0.3);
  if (mat.uncoverable_fiber()) GTEST_SKIP();
  auto a = solve_mfsp_relaxation(mat);
  auto b = solve_mfsp_relaxation(mat);
  EXPECT_EQ(a.p_star, b.p_star);
  EXPECT_EQ(a.objective, b.objective);
}
