#pragma once

// Gibbs vectors, partition functions and the pinching reduction from
// density matrices to quasi-classical states.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <span>
#include <vector>

#include "athermal/core.hpp"

namespace athermal {

namespace detail {

inline void require_finite_beta(double beta) {
  if (!std::isfinite(beta)) throw Error(ErrorCode::NonFiniteBeta, "beta must be finite");
}

inline void require_energies(std::span<const double> energies) {
  if (energies.empty()) throw Error(ErrorCode::EmptyInput, "energy list must be non-empty");
}

}  // namespace detail

/// ln Z(beta) = ln sum_i exp(-beta h_i), evaluated with a max-shift.
inline double log_partition(std::span<const double> energies, double beta) {
  detail::require_energies(energies);
  detail::require_finite_beta(beta);
  double shift = -beta * energies[0];
  for (double h : energies) shift = std::max(shift, -beta * h);
  double acc = 0.0;
  for (double h : energies) acc += std::exp(-beta * h - shift);
  return shift + std::log(acc);
}

/// exp(-beta h_i) / Z(beta). Negative beta gives a population inversion.
inline ProbabilityVector gibbs_vector(std::span<const double> energies, double beta) {
  detail::require_energies(energies);
  detail::require_finite_beta(beta);
  double shift = -beta * energies[0];
  for (double h : energies) shift = std::max(shift, -beta * h);
  std::vector<double> w;
  w.reserve(energies.size());
  double acc = 0.0;
  for (double h : energies) {
    w.push_back(std::exp(-beta * h - shift));
    acc += w.back();
  }
  for (double& x : w) x /= acc;
  return ProbabilityVector(std::move(w));
}

inline ProbabilityVector gibbs_vector(const GibbsContext& ctx) {
  return gibbs_vector(ctx.energies(), ctx.beta());
}

/// Same context levels at a different (possibly negative) inverse temperature.
inline ProbabilityVector gibbs_vector(const GibbsContext& ctx, double beta) {
  return gibbs_vector(ctx.energies(), beta);
}

/// Population of the lower level of a qubit with gap E at inverse
/// temperature beta: 1 / (1 + exp(-beta E)), stable for either sign.
inline double qubit_ground_population(double beta, double gap) {
  const double t = beta * gap;
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

/// Population of the upper level, exp(-beta E) / (1 + exp(-beta E)).
inline double qubit_excited_population(double beta, double gap) {
  return qubit_ground_population(-beta, gap);
}

/// Hermitian, unit-trace, positive semidefinite complex matrix.
class DensityMatrix {
 public:
  static constexpr double kHermitianTolerance = 1e-12;
  static constexpr double kTraceTolerance = 1e-9;
  static constexpr double kEigenvalueFloor = -1e-10;

  explicit DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
      throw Error(ErrorCode::InvalidDensityMatrix, "density matrix must be square and non-empty");
    }
    if (!m_.allFinite()) {
      throw Error(ErrorCode::InvalidDensityMatrix, "density matrix entries must be finite");
    }
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
      throw Error(ErrorCode::InvalidDensityMatrix, "density matrix is not Hermitian");
    }
    const std::complex<double> tr = m_.trace();
    if (std::abs(tr.real() - 1.0) > kTraceTolerance || std::abs(tr.imag()) > kTraceTolerance) {
      throw Error(ErrorCode::InvalidDensityMatrix, "density matrix trace is not 1");
    }
    const Eigen::MatrixXcd h = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kEigenvalueFloor) {
      throw Error(ErrorCode::InvalidDensityMatrix, "density matrix is not positive semidefinite");
    }
  }

  /// Diagonal matrix diag(p).
  static DensityMatrix diagonal(const ProbabilityVector& p) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(p.size()),
                                                static_cast<Eigen::Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p[i];
    }
    return DensityMatrix(std::move(m));
  }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
  std::complex<double> operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  std::vector<double> diagonal_real() const {
    std::vector<double> d(dim());
    for (std::size_t i = 0; i < dim(); ++i) d[i] = (*this)(i, i).real();
    return d;
  }

 private:
  Eigen::MatrixXcd m_;
};

/// Block label per index: indices whose Gibbs weights agree within the
/// relative tolerance share a label.
inline std::vector<std::size_t> degeneracy_blocks(const ProbabilityVector& g, double rel_tol) {
  std::vector<std::size_t> idx(g.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return g[a] < g[b]; });
  std::vector<std::size_t> block(g.size(), 0);
  std::size_t label = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k > 0) {
      const double prev = g[idx[k - 1]];
      const double cur = g[idx[k]];
      if (cur - prev > rel_tol * std::max(prev, cur)) ++label;
    }
    block[idx[k]] = label;
  }
  return block;
}

/// Dephasing onto the eigenspaces of diag(g): entries coupling different
/// Gibbs weights are zeroed, block-internal entries are kept.
inline DensityMatrix pinch(const DensityMatrix& rho, const ProbabilityVector& g,
                           double degeneracy_tol = 1e-12) {
  if (rho.dim() != g.size()) {
    throw Error(ErrorCode::DimensionMismatch, "density matrix and Gibbs vector dimensions differ");
  }
  const auto block = degeneracy_blocks(g, degeneracy_tol);
  Eigen::MatrixXcd out = rho.matrix();
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      if (block[i] != block[j]) {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0.0;
      }
    }
  }
  return DensityMatrix(std::move(out));
}

/// Quasi-classical reduction of (rho, gamma). `rho` is expressed in the
/// basis in which the context's energies were originally listed; the result
/// is ordered by increasing energy.
inline AthermalityState to_quasiclassical(const DensityMatrix& rho, const GibbsContext& gibbs,
                                          double degeneracy_tol = 1e-12) {
  if (rho.dim() != gibbs.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "density matrix and Hamiltonian dimensions differ");
  }
  // Undo the sort so the Gibbs weights line up with rho's basis.
  std::vector<double> unsorted(gibbs.dim());
  for (std::size_t i = 0; i < gibbs.dim(); ++i) unsorted[gibbs.order()[i]] = gibbs.energies()[i];
  const ProbabilityVector g_input_order = gibbs_vector(unsorted, gibbs.beta());
  const DensityMatrix pinched = pinch(rho, g_input_order, degeneracy_tol);
  std::vector<double> diag = pinched.diagonal_real();
  for (double& x : diag) x = std::max(0.0, x);  // clip eigenvalue-floor noise
  std::vector<double> r = gibbs.permute<double>(diag);
  return {ProbabilityVector(std::move(r)), gibbs_vector(gibbs)};
}

}  // namespace athermal
