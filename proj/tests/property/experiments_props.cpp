#include <gtest/gtest.h>

#include <boost/math/distributions/binomial.hpp>
#include <cmath>

#include "polchange/experiments.hpp"
#include "testing.hpp"

using namespace polchange;

namespace {

HarnessOptions known_options(std::size_t t, unsigned threads) {
  HarnessOptions o;
  o.test.looks = LooksMode::known(4.0);
  o.replications = t;
  o.threads = threads;
  return o;
}

}  // namespace

TEST(ExperimentsProps, ReportsIndependentOfWorkerCount) {
  const SizeExperimentConfig size{testutil::b1(), {8, 15}, {0.01, 0.05, 0.1}, known_options(60, 1)};
  PowerExperimentConfig power{testutil::b1(), {0.0, 0.3}, {12}, 0.05, known_options(60, 1)};
  std::vector<MatrixSample> regions;
  for (std::uint64_t r = 0; r < 2; ++r) regions.push_back(sample(testutil::b1(), 50, RngSeed{r}));
  SameTargetConfig same{{9}, {0.05}, false, known_options(60, 1)};

  const std::string s1 = to_csv(run_size_experiment(size));
  const std::string p1 = to_csv(run_power_experiment(power));
  const std::string t1 = to_csv(run_same_target_experiment(regions, same));
  for (unsigned threads : {2u, 3u, 8u}) {
    auto s = size;
    s.options.threads = threads;
    auto p = power;
    p.options.threads = threads;
    auto t = same;
    t.options.threads = threads;
    EXPECT_EQ(to_csv(run_size_experiment(s)), s1) << threads;
    EXPECT_EQ(to_csv(run_power_experiment(p)), p1) << threads;
    EXPECT_EQ(to_csv(run_same_target_experiment(regions, t)), t1) << threads;
  }
}

TEST(ExperimentsProps, RatesInsideBinomialEnvelope) {
  // 40 meta-trials of T = 500. The reference size is the pooled rate of all
  // meta-trials, since the finite-N size of the test is not exactly alpha.
  const std::size_t t = 500;
  const int meta = 40;
  std::vector<std::size_t> counts;
  std::size_t total = 0;
  for (int m = 0; m < meta; ++m) {
    SizeExperimentConfig cfg{testutil::b1(), {10}, {0.05}, known_options(t, 0)};
    cfg.options.methods = {Method::LR};
    cfg.options.seed = derive(RngSeed{601}, static_cast<std::uint64_t>(m));
    const ReportRow row = run_size_experiment(cfg).at(Method::LR, 10, 0.05);
    EXPECT_GE(row.rate, 0.0);
    EXPECT_LE(row.rate, 1.0);
    EXPECT_LE(row.ci_low, row.rate);
    EXPECT_GE(row.ci_high, row.rate);
    counts.push_back(row.rejections);
    total += row.rejections;
  }
  const double size = static_cast<double>(total) / static_cast<double>(t * meta);
  const boost::math::binomial_distribution<double> law(static_cast<double>(t), size);
  const double lo = boost::math::quantile(law, 0.0005);
  const double hi = boost::math::quantile(boost::math::complement(law, 0.0005));
  int inside = 0;
  for (std::size_t c : counts) inside += (c >= lo && c <= hi);
  EXPECT_GE(inside, meta - 1);
}

TEST(ExperimentsProps, MeanStatisticsApproachDegreesOfFreedom) {
  SizeExperimentConfig cfg{testutil::b1(), {10, 50, 200}, {0.05}, known_options(3000, 0)};
  // Entropy statistics under known looks are checked against the chi-square law by acceptance.
  cfg.options.methods = {Method::LR, Method::KL};
  const ExperimentReport r = run_size_experiment(cfg);
  auto gap = [&](Method m, std::size_t n, double df) {
    return std::abs(r.at(m, n, 0.05).mean_statistic - df);
  };
  for (Method m : {Method::LR, Method::KL}) {
    EXPECT_GT(gap(m, 10, 9.0), gap(m, 50, 9.0)) << to_string(m);
    EXPECT_GT(gap(m, 50, 9.0), gap(m, 200, 9.0)) << to_string(m);
  }
}
