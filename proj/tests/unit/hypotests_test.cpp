#include <gtest/gtest.h>

#include <vector>

#include "polchange/error.hpp"
#include "polchange/hypotests.hpp"
#include "testing.hpp"

using namespace polchange;

namespace {

const Method kAll[] = {Method::LR, Method::KL, Method::Shannon, Method::Renyi};

TestOptions known_options() {
  TestOptions o;
  o.looks = LooksMode::known(4.0);
  return o;
}

}  // namespace

TEST(MethodNames, RoundTrip) {
  for (Method m : kAll) EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_EQ(parse_method("Renyi"), Method::Renyi);
  EXPECT_FALSE(parse_method("wald").has_value());
}

TEST(Statistics, IdenticalSamplesGiveZero) {
  const MatrixSample s = sample(testutil::b1(), 25, RngSeed{3});
  for (LooksMode mode : {LooksMode::known(4.0), LooksMode::estimated()}) {
    TestOptions o;
    o.looks = mode;
    for (Method m : kAll) {
      const TestResult r = run_test(m, s, s, o);
      EXPECT_EQ(r.statistic, 0.0) << to_string(m);
      EXPECT_EQ(r.p_value, 1.0) << to_string(m);
    }
  }
}

TEST(Statistics, DegreesOfFreedom) {
  const MatrixSample a = sample(testutil::b1(), 25, RngSeed{3});
  const MatrixSample b = sample(testutil::b1(), 30, RngSeed{4});
  TestOptions o = known_options();
  EXPECT_EQ(run_test(Method::LR, a, b, o).df, 9.0);
  EXPECT_EQ(run_test(Method::KL, a, b, o).df, 9.0);
  EXPECT_EQ(run_test(Method::Shannon, a, b, o).df, 1.0);
  o.looks = LooksMode::estimated();
  EXPECT_EQ(run_test(Method::LR, a, b, o).df, 10.0);
  EXPECT_EQ(run_test(Method::KL, a, b, o).df, 10.0);
  EXPECT_EQ(run_test(Method::Renyi, a, b, o).df, 1.0);
  EXPECT_EQ(run_test(Method::Renyi, a, b, o).renyi_beta, kDefaultRenyiOrder);
}

TEST(LrStatistic, KnownLooksClosedFormMatchesLikelihoodSum) {
  const MatrixSample a = sample(testutil::b1(), 20, RngSeed{5});
  const MatrixSample b = sample(WishartParams(flevoland_b1().scaled(1.3), 4.0), 35, RngSeed{6});
  const TestResult r = lr_statistic(a, b, LooksMode::known(4.0));
  const WishartParams t1(estimate_sigma(a), 4.0);
  const WishartParams t2(estimate_sigma(b), 4.0);
  const MLEstimate pooled = pooled_estimate(a, b, LooksMode::known(4.0));
  const double direct = -2.0 * lr_log_lambda(a, b, t1, t2, pooled.params);
  EXPECT_NEAR(r.statistic, direct, 1e-8 * std::max(1.0, direct));
  EXPECT_GT(r.statistic, 0.0);
}

TEST(LrStatistic, EstimatedLooksSufficientStatisticsMatchLikelihoodSum) {
  const MatrixSample a = sample(testutil::b1(), 40, RngSeed{7});
  const MatrixSample b = sample(testutil::b1(5.0), 60, RngSeed{8});
  const TestResult r = lr_statistic(a, b, LooksMode::estimated());
  const MLEstimate e1 = estimate(a, LooksMode::estimated());
  const MLEstimate e2 = estimate(b, LooksMode::estimated());
  const MLEstimate ec = pooled_estimate(a, b, LooksMode::estimated());
  const double direct = -2.0 * lr_log_lambda(a, b, e1.params, e2.params, ec.params);
  EXPECT_NEAR(r.statistic, direct, 1e-6 * std::max(1.0, direct));
}

TEST(KlStatistic, EqualSizesScaleDistanceByN) {
  const MatrixSample a = sample(testutil::b1(), 50, RngSeed{9});
  const MatrixSample b = sample(testutil::b1(), 50, RngSeed{10});
  const TestResult r = kl_statistic(a, b, LooksMode::known(4.0));
  const double d = kl_distance(WishartParams(estimate_sigma(a), 4.0),
                               WishartParams(estimate_sigma(b), 4.0));
  EXPECT_NEAR(r.statistic, 50.0 * d, 1e-10 * std::max(1.0, r.statistic));
  const TestResult half = kl_statistic(a, b, LooksMode::known(4.0), 2.0);
  EXPECT_NEAR(half.statistic, 0.5 * r.statistic, 1e-12 * r.statistic);
  EXPECT_THROW(kl_statistic(a, b, LooksMode::known(4.0), 0.0), Error);
}

TEST(EntropyStatistic, TwoSampleReduction) {
  const MatrixSample a = sample(testutil::b1(), 30, RngSeed{11});
  const MatrixSample b = sample(WishartParams(flevoland_b1().scaled(1.5), 4.0), 45, RngSeed{12});
  const MatrixSample pair[] = {a, b};
  for (EntropyKind kind : {EntropyKind::shannon(), EntropyKind::renyi(0.1)}) {
    const TestResult r = entropy_statistic(pair, kind, LooksMode::known(4.0));
    const WishartParams t1(estimate_sigma(a), 4.0);
    const WishartParams t2(estimate_sigma(b), 4.0);
    const double diff = entropy(t1, kind) - entropy(t2, kind);
    const double expected =
        diff * diff / (entropy_variance(t1, kind) / 30.0 + entropy_variance(t2, kind) / 45.0);
    EXPECT_NEAR(r.statistic, expected, 1e-10 * expected);
  }
}

TEST(EntropyStatistic, ThreeSamples) {
  std::vector<MatrixSample> samples;
  for (std::uint64_t k = 0; k < 3; ++k) samples.push_back(sample(testutil::b1(), 40, RngSeed{k}));
  const TestResult r = entropy_statistic(samples, EntropyKind::shannon(), LooksMode::known(4.0));
  EXPECT_EQ(r.df, 2.0);
  EXPECT_GE(r.statistic, 0.0);
  EXPECT_THROW(entropy_statistic(std::span(samples).first(1), EntropyKind::shannon(),
                                 LooksMode::known(4.0)),
               Error);
}

TEST(Statistics, DetectLargeContrast) {
  const MatrixSample a = sample(testutil::b1(), 50, RngSeed{13});
  const MatrixSample b = sample(WishartParams(flevoland_b1().scaled(3.0), 4.0), 50, RngSeed{14});
  for (Method m : kAll) EXPECT_LT(run_test(m, a, b, known_options()).p_value, 1e-6) << to_string(m);
}

TEST(Statistics, DimensionMismatch) {
  const MatrixSample a = sample(testutil::b1(), 10, RngSeed{1});
  const MatrixSample b = sample(WishartParams(HermitianMatrix::identity(2), 4.0), 10, RngSeed{2});
  for (Method m : kAll) EXPECT_THROW(run_test(m, a, b, known_options()), Error);
}

TEST(Decide, BoundaryRejects) {
  TestResult r;
  r.p_value = 0.05;
  EXPECT_TRUE(decide(r, 0.05));
  r.p_value = 0.0500001;
  EXPECT_FALSE(decide(r, 0.05));
  EXPECT_THROW(decide(r, 0.0), Error);
  EXPECT_THROW(decide(r, 1.0), Error);
}

TEST(FitLevel, MatchesSampleLevel) {
  const MatrixSample a = sample(testutil::b1(), 30, RngSeed{15});
  const MatrixSample b = sample(testutil::b1(), 30, RngSeed{16});
  const TestOptions o = known_options();
  const SampleFit fa = fit_sample(a, o.looks);
  const SampleFit fb = fit_sample(b, o.looks);
  for (Method m : kAll) {
    EXPECT_EQ(run_test_on_fits(m, fa, fb, o).statistic, run_test(m, a, b, o).statistic);
  }
}
