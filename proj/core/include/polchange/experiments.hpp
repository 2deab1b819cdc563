#pragma once

// Monte Carlo harnesses for empirical test size, power, and the same-target
// resampling design on observed regions.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polchange/hypotests.hpp"

namespace polchange {

inline constexpr std::size_t kDefaultReplications = 5500;

// Settings shared by all harnesses.
struct HarnessOptions {
  std::vector<Method> methods{Method::LR, Method::KL, Method::Shannon, Method::Renyi};
  TestOptions test;
  std::size_t replications = kDefaultReplications;
  RngSeed seed{42};
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct SizeExperimentConfig {
  WishartParams theta;
  std::vector<std::size_t> sample_sizes;
  std::vector<double> levels{0.01, 0.05, 0.10};
  HarnessOptions options;
};

// Y-samples come from (Sigma (1 + k), L).
struct PowerExperimentConfig {
  WishartParams theta;
  std::vector<double> contrasts;
  std::vector<std::size_t> sample_sizes;
  double level = 0.01;
  HarnessOptions options;
};

struct SameTargetConfig {
  std::vector<std::size_t> sample_sizes;
  std::vector<double> levels{0.01, 0.05, 0.10};
  // Second subset from the next region instead of the same one.
  bool cross_region = false;
  HarnessOptions options;
};

struct ReportRow {
  Method method = Method::LR;
  std::size_t sample_size = 0;
  double level = 0.0;
  std::optional<double> contrast;  // power rows only
  std::size_t replications = 0;
  std::size_t rejections = 0;
  double rate = 0.0;
  double mean_statistic = 0.0;
  double ci_low = 0.0;   // Wilson 95%
  double ci_high = 0.0;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;

  // Rows for one method, in table order.
  std::vector<ReportRow> select(Method method) const;
  // Row for (method, N, level[, contrast]); throws InvalidArgument if absent.
  const ReportRow& at(Method method, std::size_t n, double level,
                      std::optional<double> contrast = std::nullopt) const;
};

struct WilsonInterval {
  double low;
  double high;
};

// Wilson score interval for `successes` out of `trials` at normal quantile z.
WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

ExperimentReport run_size_experiment(const SizeExperimentConfig& cfg);

// With k = 0 the rows coincide with run_size_experiment at the same seed.
ExperimentReport run_power_experiment(const PowerExperimentConfig& cfg);

// Replication j draws two disjoint subsets of N observations from region
// j mod R (or one from region j mod R and one from the next region when
// cross_region is set). RegionTooSmall if any region cannot supply them.
ExperimentReport run_same_target_experiment(const std::vector<MatrixSample>& regions,
                                            const SameTargetConfig& cfg);

// Columns: method,N,level_or_k,rate,mean_stat,ci_lo,ci_hi. Power rows put the
// contrast k in level_or_k.
void write_csv(const ExperimentReport& report, std::ostream& out);
std::string to_csv(const ExperimentReport& report);

}  // namespace polchange
