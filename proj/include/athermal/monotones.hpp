#pragma once

// Cooling and heating monotones C and H, the finite set of critical gaps
// attached to a target, and convertibility decided from those monotones.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "athermal/core.hpp"
#include "athermal/majorization.hpp"
#include "athermal/tempbounds.hpp"

namespace athermal {

inline constexpr double kDegenerateElbowPerturbation = 1e-9;
inline constexpr double kDegenerateElbowTolerance = 1e-12;
inline constexpr double kMonotoneSlack = 1e-10;

enum class GapKind { Cooling, Heating };

inline const char* to_string(GapKind kind) {
  return kind == GapKind::Cooling ? "cooling" : "heating";
}

namespace detail {

inline void require_positive(double beta, double gap) {
  if (!(gap > 0.0)) throw Error(ErrorCode::NonPositiveGap, "energy gap must be > 0");
  if (!(beta > 0.0)) throw Error(ErrorCode::NonPositiveBeta, "beta must be > 0");
}

}  // namespace detail

/// C = beta_max(state; beta, E) - beta.
inline ExtendedReal cooling_monotone(const AthermalityState& state, double beta, double gap) {
  detail::require_positive(beta, gap);
  return qubit_beta_bounds(state, gap, beta).first - beta;
}

/// H = beta - beta_min(state; beta, E).
inline ExtendedReal heating_monotone(const AthermalityState& state, double beta, double gap) {
  detail::require_positive(beta, gap);
  return beta - qubit_beta_bounds(state, gap, beta).second;
}

struct CriticalEnergy {
  std::size_t k = 0;  // elbow index along the target boundary, 1-based
  double energy = 0.0;
  GapKind kind = GapKind::Cooling;
};

struct CriticalEnergySet {
  std::vector<CriticalEnergy> entries;
  /// Elbow indices whose ordinate is 1/2 (no finite gap probes them).
  std::vector<std::size_t> degenerate;
};

/// Gap at which a qubit's equilibrium elbow sits at ordinate y: cooling
/// when y > 1/2, heating when y < 1/2.
inline CriticalEnergy critical_energy_for(double y, double beta, std::size_t k) {
  if (y > 0.5) return {k, std::log(y / (1.0 - y)) / beta, GapKind::Cooling};
  return {k, std::log((1.0 - y) / y) / beta, GapKind::Heating};
}

inline CriticalEnergySet critical_energies(const AthermalityState& target, double beta) {
  if (!(beta > 0.0)) throw Error(ErrorCode::NonPositiveBeta, "beta must be > 0");
  CriticalEnergySet out;
  const auto elbows = compute_elbows(target).interior_elbows();
  for (std::size_t i = 0; i < elbows.size(); ++i) {
    const double y = elbows[i].y;
    if (std::abs(y - 0.5) <= kDegenerateElbowTolerance) {
      out.degenerate.push_back(i + 1);
      continue;
    }
    out.entries.push_back(critical_energy_for(y, beta, i + 1));
  }
  return out;
}

/// First monotone inequality that fails.
struct MonotoneWitness {
  double energy = 0.0;
  GapKind kind = GapKind::Cooling;
  ExtendedReal lhs;  // monotone of `from`
  ExtendedReal rhs;  // monotone of `to`
};

struct MonotoneVerdict {
  bool convertible = true;
  std::optional<MonotoneWitness> witness;
};

/// Compares the relevant monotone of both states at one gap.
inline std::optional<MonotoneWitness> monotone_violation(const AthermalityState& from,
                                                         const AthermalityState& to, double beta,
                                                         double gap, GapKind kind) {
  const ExtendedReal lhs = kind == GapKind::Cooling ? cooling_monotone(from, beta, gap)
                                                    : heating_monotone(from, beta, gap);
  const ExtendedReal rhs = kind == GapKind::Cooling ? cooling_monotone(to, beta, gap)
                                                    : heating_monotone(to, beta, gap);
  if (at_least(lhs, rhs, kMonotoneSlack)) return std::nullopt;
  return MonotoneWitness{gap, kind, lhs, rhs};
}

/// Convertibility checked only at the critical gaps of `to`. Elbows at
/// ordinate 1/2 are probed at ordinates 1/2 +- 1e-9 and both must pass.
inline MonotoneVerdict check_via_monotones(const AthermalityState& from, const AthermalityState& to,
                                           double beta) {
  const CriticalEnergySet set = critical_energies(to, beta);
  for (const CriticalEnergy& c : set.entries) {
    if (auto w = monotone_violation(from, to, beta, c.energy, c.kind)) return {false, w};
  }
  for (std::size_t k : set.degenerate) {
    for (double y : {0.5 + kDegenerateElbowPerturbation, 0.5 - kDegenerateElbowPerturbation}) {
      const CriticalEnergy c = critical_energy_for(y, beta, k);
      if (auto w = monotone_violation(from, to, beta, c.energy, c.kind)) return {false, w};
    }
  }
  return {};
}

inline bool convertible_via_monotones(const AthermalityState& from, const AthermalityState& to,
                                      double beta) {
  return check_via_monotones(from, to, beta).convertible;
}

/// Both monotone inequalities at every gap of a supplied grid.
inline bool convertible_on_gap_grid(const AthermalityState& from, const AthermalityState& to,
                                    double beta, std::span<const double> gaps) {
  for (double e : gaps) {
    if (monotone_violation(from, to, beta, e, GapKind::Cooling)) return false;
    if (monotone_violation(from, to, beta, e, GapKind::Heating)) return false;
  }
  return true;
}

/// Gap beyond which a qubit Gibbs vector at beta is pure to 1e-12.
inline double default_max_gap(double beta) { return -std::log(1e-12) / beta; }

}  // namespace athermal
