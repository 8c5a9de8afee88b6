#pragma once

// Validated domain types shared by every athermal module: probability
// vectors, quasi-classical athermality states (r, g), Gibbs contexts and the
// extended-real inverse temperature.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace athermal {

enum class ErrorCode {
  NegativeEntry,
  NormalizationOutOfTolerance,
  RankDeficientGibbs,
  DimensionMismatch,
  EmptyInput,
  YOutOfRange,
  NonFiniteBeta,
  NonPositiveBeta,
  NonPositiveGap,
  DegenerateTarget,
  WrongDegeneracy,
  TrivialRatio,
  WOutOfRange,
  InvalidDensityMatrix,
  InvalidInput,
  NumericFailure,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NormalizationOutOfTolerance: return "NormalizationOutOfTolerance";
    case ErrorCode::RankDeficientGibbs: return "RankDeficientGibbs";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::YOutOfRange: return "YOutOfRange";
    case ErrorCode::NonFiniteBeta: return "NonFiniteBeta";
    case ErrorCode::NonPositiveBeta: return "NonPositiveBeta";
    case ErrorCode::NonPositiveGap: return "NonPositiveGap";
    case ErrorCode::DegenerateTarget: return "DegenerateTarget";
    case ErrorCode::WrongDegeneracy: return "WrongDegeneracy";
    case ErrorCode::TrivialRatio: return "TrivialRatio";
    case ErrorCode::WOutOfRange: return "WOutOfRange";
    case ErrorCode::InvalidDensityMatrix: return "InvalidDensityMatrix";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NumericFailure: return "NumericFailure";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline constexpr double kNormalizationTolerance = 1e-9;

namespace detail {

// Neumaier-compensated sum; the rounding of the plain sum matters for the
// exact-renormalization contract below.
inline double compensated_sum(std::span<const double> xs) {
  double sum = 0.0;
  double carry = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

}  // namespace detail

/// Non-negative vector whose entries sum to one. Construction renormalizes
/// so that the compensated sum of the stored entries is exactly 1.0; an
/// already-normalized vector is stored unchanged, which makes validation
/// idempotent.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> entries) : p_(std::move(entries)) {
    if (p_.empty()) {
      throw Error(ErrorCode::EmptyInput, "probability vector must be non-empty");
    }
    for (double x : p_) {
      if (!std::isfinite(x)) {
        throw Error(ErrorCode::InvalidInput, "probability entries must be finite");
      }
      if (x < 0.0) {
        throw Error(ErrorCode::NegativeEntry,
                    "probability entry " + std::to_string(x) + " is negative");
      }
    }
    const double total = detail::compensated_sum(p_);
    if (std::abs(total - 1.0) > kNormalizationTolerance) {
      throw Error(ErrorCode::NormalizationOutOfTolerance,
                  "entries sum to " + std::to_string(total) + ", not 1");
    }
    renormalize(total);
  }

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> entries() const noexcept { return p_; }
  auto begin() const noexcept { return p_.begin(); }
  auto end() const noexcept { return p_.end(); }

  friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

 private:
  void renormalize(double total) {
    if (total == 1.0) return;
    for (double& x : p_) x /= total;
    // Division leaves an ulp-level residue; fold it into the largest entry.
    for (int pass = 0; pass < 4; ++pass) {
      const double s = detail::compensated_sum(p_);
      if (s == 1.0) return;
      auto largest = std::max_element(p_.begin(), p_.end());
      *largest = std::max(0.0, *largest + (1.0 - s));
    }
  }

  std::vector<double> p_;
};

/// Quasi-classical athermality state: populations r relative to a full-rank
/// Gibbs vector g, both expressed in the same (energy) basis.
class AthermalityState {
 public:
  AthermalityState(ProbabilityVector r, ProbabilityVector g) : r_(std::move(r)), g_(std::move(g)) {
    if (r_.size() != g_.size()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "state populations and Gibbs vector have different dimensions");
    }
    for (double x : g_) {
      if (!(x > 0.0)) {
        throw Error(ErrorCode::RankDeficientGibbs, "Gibbs vector must be strictly positive");
      }
    }
  }

  const ProbabilityVector& r() const noexcept { return r_; }
  const ProbabilityVector& g() const noexcept { return g_; }
  std::size_t dim() const noexcept { return r_.size(); }

  /// True when the populations coincide with the Gibbs vector entrywise.
  bool is_free() const { return r_ == g_; }

  friend bool operator==(const AthermalityState&, const AthermalityState&) = default;

 private:
  ProbabilityVector r_;
  ProbabilityVector g_;
};

/// Free state (g, g).
inline AthermalityState free_state(const ProbabilityVector& g) { return {g, g}; }

inline AthermalityState validate_state(std::vector<double> r, std::vector<double> g) {
  if (r.empty() || g.empty()) {
    throw Error(ErrorCode::EmptyInput, "state vectors must be non-empty");
  }
  if (r.size() != g.size()) {
    throw Error(ErrorCode::DimensionMismatch, "r and g must have equal length");
  }
  for (double x : g) {
    if (x <= 0.0) {
      throw Error(ErrorCode::RankDeficientGibbs, "every Gibbs entry must be > 0");
    }
  }
  return {ProbabilityVector(std::move(r)), ProbabilityVector(std::move(g))};
}

/// Energy levels (sorted non-decreasing) and a positive inverse temperature.
/// Levels given in any order are stably sorted; `order()[i]` is the input
/// index of sorted level i, and `permute` applies the same reordering to any
/// paired per-level list.
class GibbsContext {
 public:
  GibbsContext(std::vector<double> energies, double beta) : beta_(beta) {
    if (energies.empty()) {
      throw Error(ErrorCode::EmptyInput, "energy list must be non-empty");
    }
    if (!std::isfinite(beta)) {
      throw Error(ErrorCode::NonFiniteBeta, "beta must be finite");
    }
    if (!(beta > 0.0)) {
      throw Error(ErrorCode::NonPositiveBeta, "background beta must be > 0");
    }
    for (double h : energies) {
      if (!std::isfinite(h)) {
        throw Error(ErrorCode::InvalidInput, "energies must be finite");
      }
    }
    order_.resize(energies.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return energies[a] < energies[b]; });
    energies_.reserve(energies.size());
    for (std::size_t i : order_) energies_.push_back(energies[i]);
  }

  std::span<const double> energies() const noexcept { return energies_; }
  double beta() const noexcept { return beta_; }
  std::size_t dim() const noexcept { return energies_.size(); }
  std::span<const std::size_t> order() const noexcept { return order_; }

  bool completely_degenerate() const { return energies_.front() == energies_.back(); }

  /// Multiplicity of the lowest level under exact equality.
  std::size_t ground_degeneracy() const {
    return static_cast<std::size_t>(
        std::count(energies_.begin(), energies_.end(), energies_.front()));
  }

  /// Multiplicity of the highest level under exact equality.
  std::size_t top_degeneracy() const {
    return static_cast<std::size_t>(
        std::count(energies_.begin(), energies_.end(), energies_.back()));
  }

  template <class T>
  std::vector<T> permute(std::span<const T> values) const {
    if (values.size() != order_.size()) {
      throw Error(ErrorCode::DimensionMismatch, "list length differs from number of levels");
    }
    std::vector<T> out;
    out.reserve(values.size());
    for (std::size_t i : order_) out.push_back(values[i]);
    return out;
  }

 private:
  std::vector<double> energies_;
  std::vector<std::size_t> order_;
  double beta_;
};

/// Inverse temperature on the extended real line. The infinities are tags;
/// no IEEE infinity ever enters arithmetic.
class ExtendedReal {
 public:
  enum class Kind { MinusInfinity, Finite, PlusInfinity };

  constexpr ExtendedReal() = default;
  constexpr explicit ExtendedReal(double value) : kind_(Kind::Finite), value_(value) {}

  static constexpr ExtendedReal finite(double value) { return ExtendedReal(value); }
  static constexpr ExtendedReal plus_infinity() { return ExtendedReal(Kind::PlusInfinity); }
  static constexpr ExtendedReal minus_infinity() { return ExtendedReal(Kind::MinusInfinity); }

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  constexpr bool is_plus_infinity() const noexcept { return kind_ == Kind::PlusInfinity; }
  constexpr bool is_minus_infinity() const noexcept { return kind_ == Kind::MinusInfinity; }

  double value() const {
    if (!is_finite()) throw std::logic_error("value() on an infinite ExtendedReal");
    return value_;
  }

  // Infinities compare equal to each other and beyond every finite value.
  friend constexpr std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (a.kind_ != Kind::Finite) return std::partial_ordering::equivalent;
    return a.value_ <=> b.value_;
  }
  friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return (a <=> b) == 0;
  }

  /// a - c for finite c.
  friend ExtendedReal operator-(const ExtendedReal& a, double c) {
    return a.is_finite() ? ExtendedReal(a.value_ - c) : a;
  }
  /// c - a for finite c.
  friend ExtendedReal operator-(double c, const ExtendedReal& a) {
    switch (a.kind_) {
      case Kind::Finite: return ExtendedReal(c - a.value_);
      case Kind::PlusInfinity: return minus_infinity();
      case Kind::MinusInfinity: return plus_infinity();
    }
    return a;
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::PlusInfinity: return "+inf";
      case Kind::MinusInfinity: return "-inf";
      case Kind::Finite: break;
    }
    return std::to_string(value_);
  }

 private:
  constexpr explicit ExtendedReal(Kind kind) : kind_(kind) {}

  Kind kind_ = Kind::Finite;
  double value_ = 0.0;
};

using ExtendedBeta = ExtendedReal;

/// `lhs >= rhs` up to a relative slack on finite values.
inline bool at_least(const ExtendedReal& lhs, const ExtendedReal& rhs, double rel_slack) {
  if (lhs.is_finite() && rhs.is_finite()) {
    const double scale = std::max({1.0, std::abs(lhs.value()), std::abs(rhs.value())});
    return lhs.value() >= rhs.value() - rel_slack * scale;
  }
  return lhs >= rhs;
}

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

}  // namespace athermal
