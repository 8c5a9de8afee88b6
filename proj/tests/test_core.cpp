#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "athermal/core.hpp"
#include "support/random.hpp"

using namespace athermal;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST(ValidateState, AcceptsNormalisedInput) {
  const auto s = validate_state({0.7, 0.2, 0.1}, {0.2, 0.3, 0.5});
  EXPECT_EQ(s.dim(), 3u);
  EXPECT_DOUBLE_EQ(s.r()[0], 0.7);
  EXPECT_DOUBLE_EQ(s.g()[2], 0.5);
  EXPECT_FALSE(s.is_free());
}

TEST(ValidateState, RejectsBadInput) {
  EXPECT_EQ(code_of([] { validate_state({0.5, 0.6}, {0.5, 0.5}); }), ErrorCode::NormalizationOutOfTolerance);
  EXPECT_EQ(code_of([] { validate_state({1.1, -0.1}, {0.5, 0.5}); }), ErrorCode::NegativeEntry);
  EXPECT_EQ(code_of([] { validate_state({0.5, 0.5}, {1.0, 0.0}); }), ErrorCode::RankDeficientGibbs);
  EXPECT_EQ(code_of([] { validate_state({1.0}, {0.5, 0.5}); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { validate_state({}, {}); }), ErrorCode::EmptyInput);
  EXPECT_EQ(code_of([] { validate_state({NAN, 1.0}, {0.5, 0.5}); }), ErrorCode::InvalidInput);
}

TEST(ValidateState, SmallDriftIsRenormalised) {
  const auto s = validate_state({0.5 + 4e-10, 0.5}, {0.25, 0.75});
  EXPECT_EQ(detail::compensated_sum(s.r().entries()), 1.0);
}

TEST(ValidateState, IdempotentOnRandomInputs) {
  testkit::Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = testkit::uniform_index(rng, 1, 8);
    auto r = testkit::random_probabilities(rng, n, 0.3);
    // Push the sum off 1 by up to 5e-10.
    r[0] += testkit::uniform(rng, 0.0, 5e-10);
    const auto s1 = validate_state(r, testkit::random_gibbs(rng, n));
    const auto s2 = validate_state(std::vector<double>(s1.r().begin(), s1.r().end()),
                                   std::vector<double>(s1.g().begin(), s1.g().end()));
    EXPECT_EQ(s1, s2);
    EXPECT_EQ(detail::compensated_sum(s1.r().entries()), 1.0);
    for (double x : s1.r()) EXPECT_GE(x, 0.0);
  }
}

TEST(ValidateState, FreeState) {
  const auto g = ProbabilityVector({0.8, 0.2});
  EXPECT_TRUE(free_state(g).is_free());
}

TEST(GibbsContext, SortsLevelsStably) {
  const GibbsContext ctx({2.0, 0.0, 1.0, 0.0}, 1.5);
  EXPECT_EQ(std::vector<double>(ctx.energies().begin(), ctx.energies().end()),
            (std::vector<double>{0.0, 0.0, 1.0, 2.0}));
  EXPECT_EQ(std::vector<std::size_t>(ctx.order().begin(), ctx.order().end()),
            (std::vector<std::size_t>{1, 3, 2, 0}));
  const std::vector<double> pops{0.1, 0.2, 0.3, 0.4};
  EXPECT_EQ(ctx.permute<double>(pops), (std::vector<double>{0.2, 0.4, 0.3, 0.1}));
  EXPECT_EQ(ctx.ground_degeneracy(), 2u);
  EXPECT_EQ(ctx.top_degeneracy(), 1u);
  EXPECT_FALSE(ctx.completely_degenerate());
  EXPECT_TRUE(GibbsContext({1.0, 1.0}, 1.0).completely_degenerate());
}

TEST(GibbsContext, RejectsBadBeta) {
  EXPECT_EQ(code_of([] { GibbsContext({0.0, 1.0}, 0.0); }), ErrorCode::NonPositiveBeta);
  EXPECT_EQ(code_of([] { GibbsContext({0.0, 1.0}, -1.0); }), ErrorCode::NonPositiveBeta);
  EXPECT_EQ(code_of([] { GibbsContext({0.0, 1.0}, INFINITY); }), ErrorCode::NonFiniteBeta);
  EXPECT_EQ(code_of([] { GibbsContext({}, 1.0); }), ErrorCode::EmptyInput);
  EXPECT_EQ(code_of([] { GibbsContext({0.0, 1.0}, 1.0).permute<double>(std::vector<double>{1.0}); }),
            ErrorCode::DimensionMismatch);
}

TEST(ExtendedReal, OrderingAndArithmetic) {
  const auto inf = ExtendedReal::plus_infinity();
  const auto ninf = ExtendedReal::minus_infinity();
  const auto one = ExtendedReal::finite(1.0);
  EXPECT_LT(ninf, one);
  EXPECT_LT(one, inf);
  EXPECT_EQ(inf, ExtendedReal::plus_infinity());
  EXPECT_NE(inf, ninf);
  EXPECT_EQ(inf - 3.0, inf);
  EXPECT_EQ(2.0 - inf, ninf);
  EXPECT_EQ(2.0 - ninf, inf);
  EXPECT_DOUBLE_EQ((2.0 - one).value(), 1.0);
  EXPECT_THROW((void)inf.value(), std::logic_error);
  EXPECT_EQ(inf.to_string(), "+inf");
  EXPECT_EQ(ninf.to_string(), "-inf");
}

TEST(ExtendedReal, AtLeastUsesRelativeSlack) {
  EXPECT_TRUE(at_least(ExtendedReal(1.0), ExtendedReal(1.0 + 1e-11), 1e-10));
  EXPECT_FALSE(at_least(ExtendedReal(1.0), ExtendedReal(1.0 + 1e-9), 1e-10));
  EXPECT_TRUE(at_least(ExtendedReal::plus_infinity(), ExtendedReal(1e300), 1e-10));
  EXPECT_FALSE(at_least(ExtendedReal(1e300), ExtendedReal::plus_infinity(), 1e-10));
  EXPECT_TRUE(at_least(ExtendedReal::plus_infinity(), ExtendedReal::plus_infinity(), 0.0));
}

TEST(ErrorCode, NamesAreStable) {
  EXPECT_STREQ(to_string(ErrorCode::DegenerateTarget), "DegenerateTarget");
  EXPECT_STREQ(to_string(ErrorCode::NumericFailure), "NumericFailure");
}
