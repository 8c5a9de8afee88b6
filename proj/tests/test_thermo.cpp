#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "athermal/thermo.hpp"
#include "support/random.hpp"

using namespace athermal;

TEST(Gibbs, QubitExample) {
  const std::vector<double> h{0.0, std::log(4.0)};
  const auto g = gibbs_vector(h, 1.0);
  EXPECT_NEAR(g[0], 0.8, 1e-15);
  EXPECT_NEAR(g[1], 0.2, 1e-15);
  EXPECT_NEAR(log_partition(h, 1.0), std::log(1.25), 1e-15);
}

TEST(Gibbs, HugeGapsStayFinite) {
  const std::vector<double> h{0.0, 1e4, 2e4};
  const auto g = gibbs_vector(h, 1.0);
  EXPECT_EQ(g[0], 1.0);
  EXPECT_EQ(g[1], 0.0);
  EXPECT_NEAR(log_partition(h, 1.0), 0.0, 1e-300);
  const auto inv = gibbs_vector(h, -1.0);
  EXPECT_EQ(inv[2], 1.0);
  EXPECT_NEAR(log_partition(h, -1.0), 2e4, 1e-9);
}

TEST(Gibbs, MatchesDirectFormula) {
  testkit::Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = testkit::uniform_index(rng, 1, 6);
    std::vector<double> h(n);
    for (double& x : h) x = testkit::uniform(rng, -2.0, 4.0);
    const double b = testkit::uniform(rng, -3.0, 3.0);
    double z = 0.0;
    for (double x : h) z += std::exp(-b * x);
    const auto g = gibbs_vector(h, b);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(g[i], std::exp(-b * h[i]) / z, 1e-13);
    EXPECT_NEAR(log_partition(h, b), std::log(z), 1e-12);
  }
}

TEST(Gibbs, QubitPopulations) {
  EXPECT_NEAR(qubit_ground_population(1.0, std::log(4.0)), 0.8, 1e-15);
  EXPECT_NEAR(qubit_excited_population(1.0, std::log(4.0)), 0.2, 1e-15);
  EXPECT_EQ(qubit_ground_population(-1000.0, 1.0), 0.0);
  EXPECT_EQ(qubit_ground_population(1000.0, 1.0), 1.0);
}

TEST(Gibbs, RejectsNonFiniteBeta) {
  const std::vector<double> h{0.0, 1.0};
  EXPECT_THROW(gibbs_vector(h, NAN), Error);
  EXPECT_THROW(log_partition(h, INFINITY), Error);
  EXPECT_THROW(gibbs_vector(std::vector<double>{}, 1.0), Error);
}

namespace {

Eigen::MatrixXcd random_density(testkit::Rng& rng, std::size_t n) {
  Eigen::MatrixXcd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = {testkit::uniform(rng, -1.0, 1.0), testkit::uniform(rng, -1.0, 1.0)};
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

}  // namespace

TEST(DensityMatrix, Validation) {
  Eigen::MatrixXcd m(2, 2);
  m << 0.5, 0.1, 0.2, 0.5;
  EXPECT_THROW(DensityMatrix{m}, Error);  // not Hermitian
  m << 0.6, 0.0, 0.0, 0.6;
  EXPECT_THROW(DensityMatrix{m}, Error);  // trace
  m << 1.5, 0.0, 0.0, -0.5;
  EXPECT_THROW(DensityMatrix{m}, Error);  // negative eigenvalue
  m << 0.5, 0.5, 0.5, 0.5;
  EXPECT_NO_THROW(DensityMatrix{m});
}

TEST(Pinch, KillsCoherenceBetweenDistinctLevels) {
  Eigen::MatrixXcd m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  const auto p = pinch(DensityMatrix(m), ProbabilityVector({0.8, 0.2}));
  EXPECT_EQ(p(0, 1), std::complex<double>(0.0, 0.0));
  EXPECT_EQ(p(0, 0), std::complex<double>(0.5, 0.0));
}

TEST(Pinch, KeepsCoherenceInsideDegenerateBlock) {
  Eigen::MatrixXcd m(3, 3);
  m << 0.4, 0.1, 0.1, 0.1, 0.4, 0.1, 0.1, 0.1, 0.2;
  const auto p = pinch(DensityMatrix(m), ProbabilityVector({0.4, 0.4, 0.2}));
  EXPECT_EQ(p(0, 1), std::complex<double>(0.1, 0.0));
  EXPECT_EQ(p(0, 2), std::complex<double>(0.0, 0.0));
}

TEST(Pinch, IdempotentAndTracePreserving) {
  testkit::Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = testkit::uniform_index(rng, 2, 5);
    auto gv = testkit::random_gibbs(rng, n);
    if (n > 2 && trial % 3 == 0) gv[1] = gv[0];
    const ProbabilityVector g(testkit::normalized(gv));
    const DensityMatrix rho(random_density(rng, n));
    const DensityMatrix once = pinch(rho, g);
    const DensityMatrix twice = pinch(once, g);
    EXPECT_TRUE(once.matrix().isApprox(twice.matrix(), 0.0) || once.matrix() == twice.matrix());
    EXPECT_NEAR(once.matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(ToQuasiclassical, DiagonalInSortedOrder) {
  // Levels listed out of order: input index 0 has the higher energy.
  const GibbsContext ctx({std::log(4.0), 0.0}, 1.0);
  Eigen::MatrixXcd m(2, 2);
  m << 0.3, 0.2, 0.2, 0.7;
  const auto s = to_quasiclassical(DensityMatrix(m), ctx);
  EXPECT_NEAR(s.r()[0], 0.7, 1e-15);
  EXPECT_NEAR(s.r()[1], 0.3, 1e-15);
  EXPECT_NEAR(s.g()[0], 0.8, 1e-15);
}

TEST(ToQuasiclassical, DiagonalStateRoundTrip) {
  testkit::Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = testkit::uniform_index(rng, 2, 5);
    std::vector<double> h(n);
    for (double& x : h) x = testkit::uniform(rng, 0.0, 3.0);
    const GibbsContext ctx(h, 1.0);
    const ProbabilityVector r(testkit::random_probabilities(rng, n));
    const auto s = to_quasiclassical(DensityMatrix::diagonal(r), ctx);
    const auto expected = ctx.permute<double>(r.entries());
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(s.r()[i], expected[i], 1e-15);
  }
}
