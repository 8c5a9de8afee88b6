#pragma once

// Sets of qubit energy gaps a resource can drive from beta to a chosen
// beta_tilde, the parametric elbow curve F_a(w) traced by the qubit target,
// and an explicit resource whose gap set is not an interval.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "athermal/core.hpp"
#include "athermal/majorization.hpp"
#include "athermal/tempbounds.hpp"
#include "athermal/thermo.hpp"

namespace athermal {

/// a = beta_tilde / beta and w = exp(-beta E) in (0, 1].
struct CurveParams {
  double a = 0.0;
  double w = 1.0;

  static CurveParams from_gap(double beta, double beta_tilde, double gap) {
    return {beta_tilde / beta, std::exp(-beta * gap)};
  }
};

/// Elbow of the qubit target (g(beta_tilde), g(beta)) as a function of w:
/// the cooling branch for a > 1, the heating branch for a < 1.
inline Point fa_point(double a, double w) {
  if (a == 1.0) throw Error(ErrorCode::TrivialRatio, "a = 1 leaves the qubit unchanged");
  if (!(w > 0.0 && w <= 1.0)) throw Error(ErrorCode::WOutOfRange, "w must lie in (0, 1]");
  const double wa = std::pow(w, a);
  if (a > 1.0) return {1.0 / (1.0 + wa), 1.0 / (1.0 + w)};
  // w^a / (1 + w^a) without overflow when a < 0.
  const double x = std::isinf(wa) ? 1.0 : wa / (1.0 + wa);
  return {x, w / (1.0 + w)};
}

inline Point fa_point(const CurveParams& c) { return fa_point(c.a, c.w); }

/// The curve as y over x: x^(1/a) / ((1-x)^(1/a) + x^(1/a)).
inline double curve_y_of_x(double a, double x) {
  const double p = 1.0 / a;
  const double u = std::pow(x, p);
  return u / (std::pow(1.0 - x, p) + u);
}

/// Analytic derivative of curve_y_of_x.
inline double curve_slope(double a, double x) {
  const double p = 1.0 / a;
  const double d = std::pow(1.0 - x, p) + std::pow(x, p);
  const double inner =
      std::pow(x, p - 1.0) - std::pow(x, p) * (std::pow(x, p - 1.0) - std::pow(1.0 - x, p - 1.0)) / d;
  return inner / (a * d);
}

namespace detail {

/// Non-trivial elbow of the qubit target at gap E, or nullopt-equivalent
/// (the diagonal) when beta_tilde == beta.
inline Point qubit_target_elbow(double beta, double beta_tilde, double gap) {
  const AthermalityState t = qubit_target(gap, beta, beta_tilde);
  if (beta_tilde > beta) return {t.r()[0], t.g()[0]};
  return {t.r()[1], t.g()[1]};
}

inline void require_gap_args(double beta, double gap) {
  if (!(gap > 0.0)) throw Error(ErrorCode::NonPositiveGap, "energy gap must be > 0");
  if (!(beta > 0.0)) throw Error(ErrorCode::NonPositiveBeta, "beta must be > 0");
}

/// Bisection for a sign change of f on [lo, hi]; f(lo) and f(hi) differ in sign.
inline double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const bool lo_negative = f(lo) < 0.0;
  for (int iter = 0; iter < 400 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// alpha_y(resource) - x at the qubit target elbow; >= -1e-12 means the gap
/// is reachable.
inline double gap_margin(const TestingBoundary& boundary, double beta, double beta_tilde, double gap) {
  detail::require_gap_args(beta, gap);
  if (beta_tilde == beta) return 0.0;
  const Point e = detail::qubit_target_elbow(beta, beta_tilde, gap);
  return alpha_at(boundary, e.y) - e.x;
}

inline bool gap_membership(const TestingBoundary& boundary, double beta, double beta_tilde,
                           double gap) {
  return gap_margin(boundary, beta, beta_tilde, gap) >= -kMajorizationSlack;
}

inline bool gap_membership(const AthermalityState& resource, double beta, double beta_tilde,
                           double gap) {
  return gap_membership(compute_elbows(resource), beta, beta_tilde, gap);
}

struct GapInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;
};

struct EnergyGapSet {
  std::vector<GapInterval> intervals;
  /// Step of the uniform w grid used for the scan.
  double resolution = 0.0;

  bool empty() const { return intervals.empty(); }
  bool is_interval() const { return intervals.size() <= 1; }

  bool contains(double gap) const {
    for (const auto& iv : intervals) {
      const bool above = iv.lo_closed ? gap >= iv.lo : gap > iv.lo;
      const bool below = iv.hi_closed ? gap <= iv.hi : gap < iv.hi;
      if (above && below) return true;
    }
    return false;
  }
};

/// Largest gap scanned by default: w = exp(-beta E) stays >= 1e-10, where
/// the qubit target elbow still moves by more than the membership slack.
inline double default_scan_limit(double beta) { return -std::log(1e-10) / beta; }

struct GapSample {
  double energy = 0.0;
  double phi = 0.0;
  bool member = false;
};

/// phi on the uniform w grid over [exp(-beta e_max), 1), in increasing E.
inline std::vector<GapSample> gap_scan(const TestingBoundary& boundary, double beta,
                                       double beta_tilde, double e_max, std::size_t n_grid) {
  if (!(e_max > 0.0)) throw Error(ErrorCode::InvalidInput, "e_max must be > 0");
  if (n_grid < 100) throw Error(ErrorCode::InvalidInput, "grid needs at least 100 points");
  if (!(beta > 0.0)) throw Error(ErrorCode::NonPositiveBeta, "beta must be > 0");
  const double w_min = std::exp(-beta * e_max);
  const double step = (1.0 - w_min) / static_cast<double>(n_grid);
  std::vector<GapSample> out;
  out.reserve(n_grid);
  for (std::size_t i = n_grid; i-- > 0;) {
    const double w = i == 0 ? w_min : w_min + step * static_cast<double>(i);
    const double gap = i == 0 ? e_max : -std::log(w) / beta;
    if (!(gap > 0.0)) continue;
    const double phi = gap_margin(boundary, beta, beta_tilde, gap);
    out.push_back({gap, phi, phi >= -kMajorizationSlack});
  }
  return out;
}

/// Membership set over (0, e_max], with every grid sign change refined by
/// bisection in E to 1e-10. The interval touching e_max is truncated there.
inline EnergyGapSet gap_set(const AthermalityState& resource, double beta, double beta_tilde,
                            double e_max, std::size_t n_grid = 10000) {
  const TestingBoundary boundary = compute_elbows(resource);
  const auto samples = gap_scan(boundary, beta, beta_tilde, e_max, n_grid);
  EnergyGapSet result;
  result.resolution = (1.0 - std::exp(-beta * e_max)) / static_cast<double>(n_grid);
  if (samples.empty()) return result;

  auto member = [&](double gap) { return gap_membership(boundary, beta, beta_tilde, gap); };
  // Member-side endpoint of the transition between a and b.
  auto refine = [&](double a, double b) {
    const bool a_member = member(a);
    while (b - a > 1e-10) {
      const double mid = 0.5 * (a + b);
      if (member(mid) == a_member) {
        a = mid;
      } else {
        b = mid;
      }
    }
    return a_member ? a : b;
  };
  auto closed_at = [&](double gap) { return gap_margin(boundary, beta, beta_tilde, gap) >= -kMajorizationSlack; };

  bool inside = samples.front().member;
  GapInterval current{0.0, 0.0, false, false};
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const bool m = samples[i].member;
    if (m == inside) continue;
    const double root = refine(samples[i - 1].energy, samples[i].energy);
    if (m) {
      current = {root, 0.0, closed_at(root), false};
    } else {
      current.hi = root;
      current.hi_closed = closed_at(root);
      result.intervals.push_back(current);
    }
    inside = m;
  }
  if (inside) {
    current.hi = samples.back().energy;
    current.hi_closed = true;
    result.intervals.push_back(current);
  }
  return result;
}

/// Dimension-two resource whose gap set at ratio a = beta_tilde / beta is
/// not an interval. For 0 < a < 1: take the line through (1,1) tangent to
/// the heating curve, halve its intercept at x = 0, and put the elbow on the
/// halved line midway between its x-axis crossing and its first crossing
/// with the curve. For a > 1 the same steps run from (0,0) on the cooling
/// curve, with the elbow midway between the last crossing and x = 1.
inline AthermalityState construct_gap_example(double a) {
  if (a == 1.0) throw Error(ErrorCode::TrivialRatio, "a = 1 leaves the qubit unchanged");
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw Error(ErrorCode::InvalidInput, "construction needs a finite a > 0");
  }
  constexpr double eps = 1e-9;
  constexpr double tol = 1e-15;
  auto curve = [a](double x) { return curve_y_of_x(a, x); };
  double x1 = 0.0;
  double y1 = 0.0;
  if (a < 1.0) {
    auto tangency = [&](double x) { return curve_slope(a, x) - (1.0 - curve(x)) / (1.0 - x); };
    const double x0 = detail::bisect_root(tangency, eps, 0.5 - eps, tol);
    const double slope = 0.5 * (1.0 + curve_slope(a, x0));
    auto line = [slope](double x) { return 1.0 + slope * (x - 1.0); };
    const double x4 = 1.0 - 1.0 / slope;
    auto gap = [&](double x) { return line(x) - curve(x); };
    const double x2 = detail::bisect_root(gap, x4, x0, tol);
    x1 = 0.5 * (x2 + x4);
    y1 = line(x1);
  } else {
    auto tangency = [&](double x) { return curve_slope(a, x) - curve(x) / x; };
    const double x0 = detail::bisect_root(tangency, 0.5 + eps, 1.0 - eps, tol);
    const double slope = 0.5 * (1.0 + curve_slope(a, x0));
    auto gap = [&](double x) { return slope * x - curve(x); };
    const double x3 = detail::bisect_root(gap, x0, 1.0 - eps, tol);
    x1 = 0.5 * (x3 + 1.0);
    y1 = slope * x1;
  }
  if (!(y1 > 0.0 && y1 < x1 && x1 < 1.0)) {
    throw Error(ErrorCode::NumericFailure, "gap-example elbow left the unit square");
  }
  return validate_state({x1, 1.0 - x1}, {y1, 1.0 - y1});
}

/// Sampled check that every (beta_tilde, E) reachable from `to` is also
/// reachable from `from`.
inline bool eset_superset_check(const AthermalityState& from, const AthermalityState& to,
                                double beta, std::span<const double> beta_tilde_grid,
                                std::span<const double> e_grid) {
  const TestingBoundary bf = compute_elbows(from);
  const TestingBoundary bt = compute_elbows(to);
  for (double bt_val : beta_tilde_grid) {
    for (double e : e_grid) {
      if (gap_membership(bt, beta, bt_val, e) && !gap_membership(bf, beta, bt_val, e)) return false;
    }
  }
  return true;
}

}  // namespace athermal
