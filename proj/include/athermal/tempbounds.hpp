#pragma once

// Extremal temperatures a resource can cool or heat a target system to, and
// the largest reachable ground-state overlap.

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "athermal/core.hpp"
#include "athermal/majorization.hpp"
#include "athermal/thermo.hpp"

namespace athermal {

inline constexpr double kLimitSlack = 1e-12;

struct CoolingCondition {
  std::size_t k = 0;  // number of lowest levels, 1-based
  ExtendedBeta beta_k;
  double alpha_k = 0.0;
};

struct HeatingCondition {
  std::size_t k = 0;  // number of highest levels, 1-based
  ExtendedBeta beta_k;
  double alpha_tilde_k = 0.0;
};

struct CoolingReport {
  ExtendedBeta beta_max;
  std::vector<CoolingCondition> per_condition;
};

struct HeatingReport {
  ExtendedBeta beta_min;
  std::vector<HeatingCondition> per_condition;
};

namespace detail {

/// Mass of the k lowest levels of the energy-sorted Gibbs vector.
inline double lowest_mass(const GibbsContext& ctx, double beta, std::size_t k) {
  const ProbabilityVector g = gibbs_vector(ctx, beta);
  double s = 0.0;
  for (std::size_t j = 0; j < k; ++j) s += g[j];
  return s;
}

/// Mass of the k highest levels, summed directly (not as 1 - lowest).
inline double highest_mass(const GibbsContext& ctx, double beta, std::size_t k) {
  const ProbabilityVector g = gibbs_vector(ctx, beta);
  double s = 0.0;
  for (std::size_t j = g.size() - k; j < g.size(); ++j) s += g[j];
  return s;
}

/// Root of an increasing function f on [start, +inf) with f(start) <= target.
/// `direction` = +1 searches upward from start, -1 downward (f then taken as
/// decreasing in beta). Brackets by doubling the offset, then bisects until the
/// width drops below 1e-13 max(1,|beta|) or 200 iterations.
inline double solve_monotone(const std::function<double(double)>& f, double target, double start,
                             int direction) {
  double inner = start;
  double offset = 1.0;
  double outer = start + direction * offset;
  int doublings = 0;
  while (f(outer) < target) {
    inner = outer;
    offset *= 2.0;
    outer = start + direction * offset;
    if (++doublings > 1100 || !std::isfinite(outer)) {
      throw Error(ErrorCode::NumericFailure, "could not bracket the temperature condition");
    }
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (inner + outer);
    if (std::abs(outer - inner) < 1e-13 * std::max(1.0, std::abs(mid))) break;
    if (f(mid) < target) {
      inner = mid;
    } else {
      outer = mid;
    }
  }
  return 0.5 * (inner + outer);
}

inline void require_cooling_target(const GibbsContext& target) {
  if (target.dim() < 2 || target.completely_degenerate()) {
    throw Error(ErrorCode::DegenerateTarget, "target Hamiltonian is completely degenerate");
  }
}

}  // namespace detail

/// Largest inverse temperature the target can be cooled to. Condition k
/// (k = 1..n-1) equates the mass of the k lowest target levels at the new
/// temperature with alpha at the equilibrium mass of those levels.
inline CoolingReport beta_max(const AthermalityState& resource, const GibbsContext& target) {
  detail::require_cooling_target(target);
  const TestingBoundary boundary = compute_elbows(resource);
  const double beta = target.beta();
  const std::size_t n = target.dim();
  const std::size_t d = target.ground_degeneracy();
  CoolingReport report{ExtendedBeta::plus_infinity(), {}};
  for (std::size_t k = 1; k < n; ++k) {
    const double y = detail::lowest_mass(target, beta, k);
    const double alpha = alpha_at(boundary, y);
    const double limit = k < d ? static_cast<double>(k) / static_cast<double>(d) : 1.0;
    ExtendedBeta bk;
    if (alpha <= y) {
      bk = ExtendedBeta(beta);
    } else if (alpha >= limit - kLimitSlack) {
      bk = ExtendedBeta::plus_infinity();
    } else {
      auto lhs = [&](double b) { return detail::lowest_mass(target, b, k); };
      bk = ExtendedBeta(detail::solve_monotone(lhs, alpha, beta, +1));
    }
    report.per_condition.push_back({k, bk, alpha});
    if (bk < report.beta_max) report.beta_max = bk;
  }
  return report;
}

/// Smallest (possibly negative) inverse temperature the target can be heated
/// to. Condition k uses the mass of the k highest levels.
inline HeatingReport beta_min(const AthermalityState& resource, const GibbsContext& target) {
  detail::require_cooling_target(target);
  const TestingBoundary boundary = compute_elbows(resource);
  const double beta = target.beta();
  const std::size_t n = target.dim();
  const std::size_t d = target.top_degeneracy();
  HeatingReport report{ExtendedBeta::minus_infinity(), {}};
  for (std::size_t k = 1; k < n; ++k) {
    const double y = detail::highest_mass(target, beta, k);
    const double alpha = alpha_at(boundary, y);
    const double limit = k < d ? static_cast<double>(k) / static_cast<double>(d) : 1.0;
    ExtendedBeta bk;
    if (alpha <= y) {
      bk = ExtendedBeta(beta);
    } else if (alpha >= limit - kLimitSlack) {
      bk = ExtendedBeta::minus_infinity();
    } else {
      // The top-k mass grows as beta decreases; search downward on -beta.
      auto lhs = [&](double b) { return detail::highest_mass(target, b, k); };
      bk = ExtendedBeta(detail::solve_monotone(lhs, alpha, beta, -1));
    }
    report.per_condition.push_back({k, bk, alpha});
    if (bk > report.beta_min) report.beta_min = bk;
  }
  return report;
}

/// Closed-form (beta_max, beta_min) for a qubit target with gap E.
inline std::pair<ExtendedBeta, ExtendedBeta> qubit_beta_bounds(const AthermalityState& resource,
                                                               double gap, double beta) {
  if (!(gap > 0.0)) throw Error(ErrorCode::NonPositiveGap, "energy gap must be > 0");
  if (!(beta > 0.0)) throw Error(ErrorCode::NonPositiveBeta, "beta must be > 0");
  const std::vector<double> levels{0.0, gap};
  const ProbabilityVector g = gibbs_vector(levels, beta);
  const TestingBoundary boundary = compute_elbows(resource);

  ExtendedBeta cool;
  const double a1 = alpha_at(boundary, g[0]);
  if (a1 <= g[0]) {
    cool = ExtendedBeta(beta);
  } else if (a1 >= 1.0 - kLimitSlack) {
    cool = ExtendedBeta::plus_infinity();
  } else {
    cool = ExtendedBeta(std::log(a1 / (1.0 - a1)) / gap);
  }

  ExtendedBeta heat;
  const double a2 = alpha_at(boundary, g[1]);
  if (a2 <= g[1]) {
    heat = ExtendedBeta(beta);
  } else if (a2 >= 1.0 - kLimitSlack) {
    heat = ExtendedBeta::minus_infinity();
  } else {
    heat = ExtendedBeta(std::log((1.0 - a2) / a2) / gap);
  }
  return {cool, heat};
}

/// Largest overlap with the d-fold degenerate target ground space.
inline double max_ground_overlap(const AthermalityState& resource, const GibbsContext& target,
                                 std::size_t ground_degeneracy) {
  if (ground_degeneracy < 1 || ground_degeneracy != target.ground_degeneracy()) {
    throw Error(ErrorCode::WrongDegeneracy,
                "ground degeneracy " + std::to_string(ground_degeneracy) +
                    " does not match the target's " + std::to_string(target.ground_degeneracy()));
  }
  const ProbabilityVector g = gibbs_vector(target);
  const double equilibrium = static_cast<double>(ground_degeneracy) * g[0];
  return std::max(alpha_at(compute_elbows(resource), std::min(equilibrium, 1.0)), equilibrium);
}

/// Change of mean energy when a qubit with gap E goes from beta to beta_tilde.
inline double qubit_energy_change(double gap, double beta, double beta_tilde) {
  if (!(gap > 0.0)) throw Error(ErrorCode::NonPositiveGap, "energy gap must be > 0");
  return (qubit_excited_population(beta_tilde, gap) - qubit_excited_population(beta, gap)) * gap;
}

/// Qubit state (g(beta_tilde), g(beta)) for levels {0, E}.
inline AthermalityState qubit_target(double gap, double beta, double beta_tilde) {
  const std::vector<double> levels{0.0, gap};
  return {gibbs_vector(levels, beta_tilde), gibbs_vector(levels, beta)};
}

/// Target state (g(beta_tilde), g(beta)) for a general Hamiltonian.
inline AthermalityState thermal_target(const GibbsContext& target, double beta_tilde) {
  return {gibbs_vector(target, beta_tilde), gibbs_vector(target)};
}

}  // namespace athermal
