// Copyright (c) survpath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dense two-phase simplex (Bland's rule) and the MFSP linear relaxation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "survpath/errors.hpp"
#include "survpath/survival_matrix.hpp"

namespace survpath::lp {

/// sum(coef * x[var]) <= rhs
struct Constraint {
  std::vector<std::pair<std::size_t, double>> terms;
  double rhs = 0;
};

/// maximize objective . x  subject to rows, x >= 0
struct Problem {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<Constraint> rows;
};

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  double objective = 0;
  std::vector<double> x;
  /// One multiplier per row; valid when status is optimal.
  std::vector<double> duals;
  std::size_t pivots = 0;
};

namespace detail {

// Tableau layout: rows 0..m-1 constraints, row m objective, row m+1 phase-one
// objective; columns 0..n-1 nonbasic variables, column n the artificial
// variable, column n+1 the right-hand side. Variable ids: structural 0..n-1,
// slack n+i, artificial -1.
class Tableau {
 public:
  Tableau(const Problem& p, double eps)
      : m_(p.rows.size()),
        n_(p.num_vars),
        w_(n_ + 2),
        eps_(eps),
        d_((m_ + 2) * w_, 0.0),
        basis_(m_),
        nonbasis_(n_ + 1) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (auto [var, coef] : p.rows[i].terms) at(i, var) += coef;
      at(i, n_) = -1.0;
      at(i, n_ + 1) = p.rows[i].rhs;
      basis_[i] = static_cast<long>(n_ + i);
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasis_[j] = static_cast<long>(j);
      at(m_, j) = -p.objective[j];
    }
    nonbasis_[n_] = -1;
    at(m_ + 1, n_) = 1.0;
  }

  Result solve(std::size_t max_pivots) {
    max_pivots_ = max_pivots;
    Result res;
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i) {
      if (at(i, n_ + 1) < at(r, n_ + 1)) r = i;
    }
    if (m_ > 0 && at(r, n_ + 1) < -eps_) {
      pivot(r, n_);
      if (!run(2) || at(m_ + 1, n_ + 1) < -eps_) {
        res.status = Status::infeasible;
        res.pivots = pivots_;
        return res;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] != -1) continue;
        // drive a degenerate artificial out of the basis
        std::size_t s = n_ + 1;
        double best = eps_;
        for (std::size_t j = 0; j <= n_; ++j) {
          if (nonbasis_[j] == -1) continue;
          if (std::abs(at(i, j)) > best) {
            best = std::abs(at(i, j));
            s = j;
          }
        }
        if (s <= n_) pivot(i, s);
      }
    }
    const bool bounded = run(1);
    res.pivots = pivots_;
    if (!bounded) {
      res.status = Status::unbounded;
      return res;
    }
    res.status = Status::optimal;
    res.objective = at(m_, n_ + 1);
    res.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < n_) {
        res.x[basis_[i]] = at(i, n_ + 1);
      }
    }
    res.duals.assign(m_, 0.0);
    for (std::size_t j = 0; j <= n_; ++j) {
      const long v = nonbasis_[j];
      if (v >= static_cast<long>(n_)) res.duals[v - n_] = at(m_, j);
    }
    return res;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return d_[i * w_ + j]; }

  void pivot(std::size_t r, std::size_t s) {
    if (++pivots_ > max_pivots_) {
      throw NumericalError("simplex exceeded " + std::to_string(max_pivots_) +
                           " pivots");
    }
    double* a = &d_[r * w_];
    const double inv = 1.0 / a[s];
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      double* b = &d_[i * w_];
      if (std::abs(b[s]) <= 1e-300) continue;
      const double factor = b[s] * inv;
      for (std::size_t j = 0; j < w_; ++j) b[j] -= a[j] * factor;
      b[s] = a[s] * factor;
    }
    for (std::size_t j = 0; j < w_; ++j) {
      if (j != s) a[j] *= inv;
    }
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i != r) at(i, s) *= -inv;
    }
    a[s] = inv;
    std::swap(basis_[r], nonbasis_[s]);
  }

  // phase 1 optimizes row m, phase 2 the auxiliary row m+1
  bool run(int phase) {
    const std::size_t row = m_ + static_cast<std::size_t>(phase) - 1;
    for (;;) {
      // Bland: entering variable with the smallest id among improving ones
      std::size_t s = n_ + 1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (nonbasis_[j] == -phase) continue;
        if (at(row, j) < -eps_ && (s > n_ || nonbasis_[j] < nonbasis_[s])) {
          s = j;
        }
      }
      if (s > n_) return true;
      // leaving row: minimum ratio, smallest basic id on ties
      std::size_t r = m_;
      double best = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, s);
        if (a <= eps_) continue;
        const double ratio = at(i, n_ + 1) / a;
        const double tol = 1e-12 * std::max(1.0, std::abs(best));
        if (r == m_ || ratio < best - tol ||
            (ratio <= best + tol && basis_[i] < basis_[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == m_) return false;
      pivot(r, s);
    }
  }

  std::size_t m_, n_, w_;
  double eps_;
  std::vector<double> d_;
  std::vector<long> basis_, nonbasis_;
  std::size_t pivots_ = 0;
  std::size_t max_pivots_ = 0;
};

}  // namespace detail

/// Solves the problem exactly up to floating-point tolerance. Deterministic
/// for a given input.
inline Result solve(const Problem& problem, double eps = 1e-9) {
  if (problem.objective.size() != problem.num_vars) {
    throw PreconditionError("objective length differs from variable count");
  }
  for (const auto& row : problem.rows) {
    for (auto [var, coef] : row.terms) {
      if (var >= problem.num_vars) {
        throw PreconditionError("constraint references unknown variable");
      }
    }
  }
  const std::size_t limit =
      200 * (problem.rows.size() + problem.num_vars) + 10000;
  return detail::Tableau(problem, eps).solve(limit);
}

}  // namespace survpath::lp

namespace survpath {

/// Optimum of the MFSP linear relaxation: P*, f* and LP* = sum f*.
struct FractionalSolution {
  std::vector<double> p_star;
  std::vector<double> f_star;
  double objective = 0;
};

inline constexpr double kFeasibilityTolerance = 1e-9;

/// The relaxation as a maximization: variables P_j at j and f_i at n + i,
/// objective -sum f. Rows: one coverage row per fiber, then one linking row
/// per (path, used fiber), then P_j <= 1.
inline lp::Problem mfsp_relaxation_problem(const SurvivalMatrix& mat) {
  const std::size_t n = mat.num_paths();
  const std::size_t m = mat.num_fibers();
  lp::Problem problem;
  problem.num_vars = n + m;
  problem.objective.assign(n + m, 0.0);
  for (std::size_t i = 0; i < m; ++i) problem.objective[n + i] = -1.0;
  for (FiberIndex i = 0; i < m; ++i) {
    lp::Constraint cover{{}, -1.0};
    const Bits& s = mat.survivors(i);
    for (auto j = s.find_first(); j != Bits::npos; j = s.find_next(j)) {
      cover.terms.emplace_back(j, -1.0);
    }
    problem.rows.push_back(std::move(cover));
  }
  for (PathIndex j = 0; j < n; ++j) {
    const Bits& u = mat.used_fibers(j);
    for (auto i = u.find_first(); i != Bits::npos; i = u.find_next(i)) {
      problem.rows.push_back({{{j, 1.0}, {n + i, -1.0}}, 0.0});
    }
  }
  for (PathIndex j = 0; j < n; ++j) problem.rows.push_back({{{j, 1.0}}, 1.0});
  return problem;
}

/// min sum f_i  s.t.  A P >= e,  f_i >= P_j for every fiber i on path j,
/// 0 <= P_j <= 1.
inline FractionalSolution solve_mfsp_relaxation(const SurvivalMatrix& mat) {
  mat.require_feasible();
  const std::size_t n = mat.num_paths();
  const std::size_t m = mat.num_fibers();
  const lp::Problem problem = mfsp_relaxation_problem(mat);

  const lp::Result res = lp::solve(problem, kFeasibilityTolerance);
  if (res.status != lp::Status::optimal) {
    throw NumericalError("MFSP relaxation did not reach an optimum");
  }

  FractionalSolution sol;
  sol.p_star.assign(res.x.begin(), res.x.begin() + static_cast<long>(n));
  sol.f_star.assign(res.x.begin() + static_cast<long>(n), res.x.end());
  auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
  for (std::size_t k = 0; k < n + m; ++k) {
    const double v = res.x[k];
    if (v < -kFeasibilityTolerance || v > 1.0 + kFeasibilityTolerance) {
      throw NumericalError("relaxation variable " + std::to_string(k) +
                           " left [0, 1]: " + std::to_string(v));
    }
  }
  for (FiberIndex i = 0; i < m; ++i) {
    double sum = 0;
    const Bits& s = mat.survivors(i);
    for (auto j = s.find_first(); j != Bits::npos; j = s.find_next(j)) {
      sum += sol.p_star[j];
    }
    if (sum < 1.0 - kFeasibilityTolerance) {
      throw NumericalError("coverage row for fiber f" + std::to_string(i + 1) +
                           " violated: " + std::to_string(sum));
    }
  }
  for (PathIndex j = 0; j < n; ++j) {
    const Bits& u = mat.used_fibers(j);
    for (auto i = u.find_first(); i != Bits::npos; i = u.find_next(i)) {
      if (sol.f_star[i] < sol.p_star[j] - kFeasibilityTolerance) {
        throw NumericalError("linking row f" + std::to_string(i + 1) +
                             " >= P" + std::to_string(j + 1) + " violated");
      }
    }
  }
  for (auto& v : sol.p_star) v = clamp01(v);
  for (auto& v : sol.f_star) v = clamp01(v);
  sol.objective = -res.objective;
  return sol;
}

}  // namespace survpath
