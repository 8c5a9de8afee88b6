#pragma once

// Testing-region geometry: elbows of the lower boundary, the boundary
// function y -> alpha_y and the relative-majorization decision.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "athermal/core.hpp"

namespace athermal {

inline constexpr double kCollinearTolerance = 1e-14;
inline constexpr double kMajorizationSlack = 1e-12;

/// Lower boundary of a testing region, as its elbows from (0,0) to (1,1).
/// Consecutive collinear elbows are merged, so two states with the same
/// boundary compare equal.
class TestingBoundary {
 public:
  /// Builds a boundary from elbow points, merging collinear runs.
  static TestingBoundary from_elbows(std::vector<Point> pts) {
    std::vector<Point> out;
    out.reserve(pts.size());
    for (const Point& p : pts) {
      while (out.size() >= 2) {
        const Point& a = out[out.size() - 2];
        const Point& b = out.back();
        const double cross = (b.x - a.x) * (p.y - b.y) - (b.y - a.y) * (p.x - b.x);
        if (std::abs(cross) >= kCollinearTolerance) break;
        out.pop_back();
      }
      if (!out.empty() && out.back() == p) continue;
      out.push_back(p);
    }
    return TestingBoundary(std::move(out));
  }

  const std::vector<Point>& elbows() const noexcept { return elbows_; }

  /// Elbows other than the fixed endpoints (0,0) and (1,1).
  std::vector<Point> interior_elbows() const {
    if (elbows_.size() <= 2) return {};
    return {elbows_.begin() + 1, elbows_.end() - 1};
  }

  bool is_diagonal() const { return elbows_.size() == 2; }

  friend bool operator==(const TestingBoundary&, const TestingBoundary&) = default;

 private:
  explicit TestingBoundary(std::vector<Point> elbows) : elbows_(std::move(elbows)) {}

  std::vector<Point> elbows_;
};

/// Elbows of (r, g): indices sorted by r_i / g_i descending (ties by index),
/// then prefix sums, with (0,0) prepended.
inline TestingBoundary compute_elbows(const AthermalityState& state) {
  const auto& r = state.r();
  const auto& g = state.g();
  std::vector<std::size_t> idx(state.dim());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // r_i/g_i > r_j/g_j  <=>  r_i g_j > r_j g_i  (g > 0).
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t i, std::size_t j) { return r[i] * g[j] > r[j] * g[i]; });
  std::vector<Point> pts;
  pts.reserve(state.dim() + 1);
  pts.push_back({0.0, 0.0});
  double x = 0.0;
  double y = 0.0;
  for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
    x += r[idx[k]];
    y += g[idx[k]];
    pts.push_back({std::min(x, 1.0), std::min(y, 1.0)});
  }
  pts.push_back({1.0, 1.0});
  return TestingBoundary::from_elbows(std::move(pts));
}

/// Boundary value alpha_y: x on the boundary at ordinate y.
inline double alpha_at(const TestingBoundary& boundary, double y) {
  if (!(y >= -1e-12 && y <= 1.0 + 1e-12)) {
    throw Error(ErrorCode::YOutOfRange, "alpha_at needs 0 <= y <= 1, got " + std::to_string(y));
  }
  y = std::clamp(y, 0.0, 1.0);
  const auto& e = boundary.elbows();
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  // First elbow with ordinate strictly above y; y lies in [e[k-1].y, e[k].y).
  auto it = std::upper_bound(e.begin(), e.end(), y,
                             [](double v, const Point& p) { return v < p.y; });
  const Point& hi = *it;
  const Point& lo = *(it - 1);
  if (y == lo.y) return lo.x;
  const double x = lo.x + (hi.x - lo.x) / (hi.y - lo.y) * (y - lo.y);
  return std::clamp(x, lo.x, hi.x);
}

inline double alpha_at(const AthermalityState& state, double y) {
  return alpha_at(compute_elbows(state), y);
}

/// (from) majorizes (to) relatively: alpha_y(from) >= alpha_y(to) for all y,
/// checked at the interior elbows of `to`.
inline bool relatively_majorizes(const TestingBoundary& from, const TestingBoundary& to) {
  for (const Point& p : to.interior_elbows()) {
    if (alpha_at(from, p.y) < p.x - kMajorizationSlack) return false;
  }
  return true;
}

inline bool relatively_majorizes(const AthermalityState& from, const AthermalityState& to) {
  return relatively_majorizes(compute_elbows(from), compute_elbows(to));
}

/// Smallest alpha_y(from) - x over the interior elbows of `to` (+1 when `to`
/// is free). Negative values mean `to` is not reachable.
inline double majorization_margin(const TestingBoundary& from, const TestingBoundary& to) {
  double margin = 1.0;
  for (const Point& p : to.interior_elbows()) margin = std::min(margin, alpha_at(from, p.y) - p.x);
  return margin;
}

/// One "x,y" row per elbow, 17 significant digits.
inline std::string boundary_csv(const TestingBoundary& boundary) {
  std::string out;
  char buf[64];
  for (const Point& p : boundary.elbows()) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x, p.y);
    out += buf;
  }
  return out;
}

}  // namespace athermal
