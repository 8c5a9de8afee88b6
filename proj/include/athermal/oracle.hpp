#pragma once

// Linear-programming referee for relative majorization: decides whether a
// column-stochastic E with E p = q and E r = s exists. Independent of the
// testing-region geometry in majorization.hpp.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "athermal/core.hpp"

namespace athermal {

struct FeasibilityResult {
  bool feasible = false;
  /// Largest constraint residual at the point found when feasible, otherwise
  /// the phase-1 optimum (total artificial slack that cannot be removed).
  double max_violation = 0.0;
};

namespace detail {

/// Dense phase-1 tableau: minimise the sum of artificial variables.
class PhaseOneTableau {
 public:
  PhaseOneTableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t i, std::size_t j) { return a_[i * (cols_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * (cols_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols_); }
  double rhs(std::size_t i) const { return at(i, cols_); }
  std::size_t& basic(std::size_t i) { return basis_[i]; }
  std::size_t basic(std::size_t i) const { return basis_[i]; }

  void pivot(std::size_t row, std::size_t col) {
    const double piv = at(row, col);
    for (std::size_t j = 0; j <= cols_; ++j) at(row, j) /= piv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row) continue;
      const double f = at(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= f * at(row, j);
      at(i, col) = 0.0;
    }
    basis_[row] = col;
  }

  /// Bland's-rule simplex on cost vector c (minimisation). Returns the
  /// optimal objective value.
  double minimise(const std::vector<double>& cost, double eps) {
    const std::size_t max_iter = 50 * (rows_ + cols_) + 1000;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      // Entering column: lowest index with negative reduced cost.
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        double reduced = cost[j];
        for (std::size_t i = 0; i < rows_; ++i) reduced -= cost[basis_[i]] * at(i, j);
        if (reduced < -eps) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) {
        double obj = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) obj += cost[basis_[i]] * rhs(i);
        return obj;
      }
      // Ratio test, ties broken by smallest basic index.
      std::size_t leave = rows_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        const double aij = at(i, enter);
        if (aij <= eps) continue;
        const double ratio = rhs(i) / aij;
        if (ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && leave < rows_ && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == rows_) {
        // Unbounded cannot happen for a non-negative objective.
        throw Error(ErrorCode::NumericFailure, "phase-1 simplex reported an unbounded ray");
      }
      pivot(leave, enter);
    }
    throw Error(ErrorCode::NumericFailure, "phase-1 simplex exceeded its iteration budget");
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Existence of an m x n column-stochastic E with E p = q and E r = s,
/// decided by phase-1 simplex. The n column-sum rows start with E(0, j)
/// basic; only the 2m mapping rows carry artificial slack.
inline FeasibilityResult lp_feasible(const ProbabilityVector& p, const ProbabilityVector& r,
                                     const ProbabilityVector& q, const ProbabilityVector& s,
                                     double tol = 1e-7) {
  if (p.size() != r.size() || q.size() != s.size()) {
    throw Error(ErrorCode::DimensionMismatch, "lp_feasible needs dim(p)=dim(r), dim(q)=dim(s)");
  }
  const std::size_t n = p.size();
  const std::size_t m = q.size();
  const std::size_t nvar = m * n;
  const std::size_t nart = 2 * m;
  const std::size_t rows = n + 2 * m;
  const std::size_t cols = nvar + nart;
  auto var = [n](std::size_t i, std::size_t j) { return i * n + j; };

  detail::PhaseOneTableau t(rows, cols);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) t.at(j, var(i, j)) = 1.0;
    t.rhs(j) = 1.0;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t prow = n + i;
    const std::size_t rrow = n + m + i;
    for (std::size_t j = 0; j < n; ++j) {
      t.at(prow, var(i, j)) = p[j];
      t.at(rrow, var(i, j)) = r[j];
    }
    t.rhs(prow) = q[i];
    t.rhs(rrow) = s[i];
  }
  // E(0, j) basic in column-sum row j.
  for (std::size_t j = 0; j < n; ++j) t.pivot(j, var(0, j));
  for (std::size_t k = 0; k < nart; ++k) {
    const std::size_t row = n + k;
    if (t.rhs(row) < 0.0) {
      for (std::size_t j = 0; j <= cols; ++j) t.at(row, j) = -t.at(row, j);
    }
    t.at(row, nvar + k) = 1.0;
    t.basic(row) = nvar + k;
  }

  std::vector<double> cost(cols, 0.0);
  for (std::size_t k = 0; k < nart; ++k) cost[nvar + k] = 1.0;
  const double slack = std::max(0.0, t.minimise(cost, 1e-12));

  if (slack > tol) return {false, slack};

  std::vector<double> x(nvar, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (t.basic(i) < nvar) x[t.basic(i)] = t.rhs(i);
  }
  double worst = 0.0;
  for (double v : x) worst = std::max(worst, -v);
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < m; ++i) col += x[var(i, j)];
    worst = std::max(worst, std::abs(col - 1.0));
  }
  for (std::size_t i = 0; i < m; ++i) {
    double ep = 0.0;
    double er = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      ep += x[var(i, j)] * p[j];
      er += x[var(i, j)] * r[j];
    }
    worst = std::max({worst, std::abs(ep - q[i]), std::abs(er - s[i])});
  }
  return {worst <= tol, worst};
}

inline FeasibilityResult lp_feasible(const AthermalityState& from, const AthermalityState& to,
                                     double tol = 1e-7) {
  return lp_feasible(from.r(), from.g(), to.r(), to.g(), tol);
}

}  // namespace athermal
