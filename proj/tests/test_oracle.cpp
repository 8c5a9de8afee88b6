#include <gtest/gtest.h>

#include "athermal/majorization.hpp"
#include "athermal/oracle.hpp"
#include "support/random.hpp"

using namespace athermal;
using testkit::Rng;

TEST(Oracle, Examples) {
  const auto qubit = validate_state({0.9, 0.1}, {0.8, 0.2});
  const auto far = validate_state({0.5, 0.5}, {0.045, 0.955});
  const auto lp = lp_feasible(qubit, far);
  EXPECT_FALSE(lp.feasible);
  EXPECT_GT(lp.max_violation, 1e-7);
  const auto self = lp_feasible(qubit, qubit);
  EXPECT_TRUE(self.feasible);
  EXPECT_LE(self.max_violation, 1e-9);
  EXPECT_TRUE(lp_feasible(qubit, validate_state({0.8, 0.2}, {0.8, 0.2})).feasible);
}

TEST(Oracle, DimensionChangingMaps) {
  const auto a = validate_state({0.7, 0.2, 0.1}, {0.2, 0.3, 0.5});
  EXPECT_TRUE(lp_feasible(a, validate_state({1.0}, {1.0})).feasible);
  EXPECT_TRUE(lp_feasible(a, validate_state({0.9, 0.1}, {0.5, 0.5})).feasible);
  EXPECT_FALSE(lp_feasible(a, validate_state({1.0, 0.0}, {0.1, 0.9})).feasible);
}

TEST(Oracle, AgreesWithBoundaryDecision) {
  Rng rng(31);
  int compared = 0;
  for (int trial = 0; trial < 800 && compared < 500; ++trial) {
    const auto a = testkit::random_state(rng, testkit::uniform_index(rng, 1, 5));
    const std::size_t m = testkit::uniform_index(rng, 1, 5);
    AthermalityState b = testkit::random_state(rng, m);
    if (trial % 3 == 1) b = testkit::processed(rng, a, m);
    if (trial % 3 == 2) b = testkit::perturbed(rng, testkit::processed(rng, a, m), 0.05);
    const double margin = majorization_margin(compute_elbows(a), compute_elbows(b));
    if (std::abs(margin) < 1e-6) continue;
    ++compared;
    EXPECT_EQ(relatively_majorizes(a, b), lp_feasible(a, b).feasible) << "margin " << margin;
  }
  EXPECT_EQ(compared, 500);
}

TEST(Oracle, WitnessResidualSmallWhenFeasible) {
  Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = testkit::random_state(rng, testkit::uniform_index(rng, 2, 5));
    const auto b = testkit::processed(rng, a, testkit::uniform_index(rng, 2, 5));
    const auto res = lp_feasible(a, b);
    EXPECT_TRUE(res.feasible);
    EXPECT_LE(res.max_violation, 1e-7);
  }
}

TEST(Oracle, RejectsDimensionMismatch) {
  const ProbabilityVector p({0.5, 0.5});
  const ProbabilityVector q({1.0});
  EXPECT_THROW(lp_feasible(p, q, p, p), Error);
}
