#include "polchange/experiments.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <utility>

#include "parallel.hpp"
#include "polchange/error.hpp"

namespace polchange {

namespace {

struct PairFits {
  SampleFit first;
  SampleFit second;
};

// Statistics and p-values of each method for every replication, indexed
// [method][replication].
struct ReplicationTable {
  std::vector<std::vector<double>> statistic;
  std::vector<std::vector<double>> p_value;
};

void validate(const HarnessOptions& options) {
  if (options.replications < 1) fail(ErrorCode::InvalidArgument, "replications must be >= 1");
  if (options.methods.empty()) fail(ErrorCode::InvalidArgument, "no test methods selected");
}

void validate_sizes(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) fail(ErrorCode::InvalidArgument, "no sample sizes given");
  for (std::size_t n : sizes) {
    if (n < 2) fail(ErrorCode::InvalidArgument, "sample sizes must be >= 2");
  }
}

void validate_levels(const std::vector<double>& levels) {
  if (levels.empty()) fail(ErrorCode::InvalidArgument, "no levels given");
  for (double a : levels) {
    if (!(a > 0.0 && a < 1.0)) fail(ErrorCode::InvalidArgument, "levels must lie in (0, 1)");
  }
}

// Seed of the sample pair of replication j at sample size n.
RngSeed unit_seed(RngSeed base, std::size_t j, std::size_t n) {
  return derive(derive(base, j), n);
}

ReplicationTable run_replications(const HarnessOptions& options,
                                  const std::function<PairFits(std::size_t)>& draw) {
  const std::size_t t = options.replications;
  const std::size_t m = options.methods.size();
  ReplicationTable table;
  table.statistic.assign(m, std::vector<double>(t));
  table.p_value.assign(m, std::vector<double>(t));
  detail::parallel_for(t, options.threads, [&](std::size_t j) {
    const PairFits fits = draw(j);
    for (std::size_t k = 0; k < m; ++k) {
      const TestResult r =
          run_test_on_fits(options.methods[k], fits.first, fits.second, options.test);
      table.statistic[k][j] = r.statistic;
      table.p_value[k][j] = r.p_value;
    }
  });
  return table;
}

ReportRow summarize(const ReplicationTable& table, std::size_t method_index, Method method,
                    std::size_t n, double level, std::optional<double> contrast) {
  const auto& stats = table.statistic[method_index];
  const auto& pvals = table.p_value[method_index];
  ReportRow row;
  row.method = method;
  row.sample_size = n;
  row.level = level;
  row.contrast = contrast;
  row.replications = stats.size();
  for (double pv : pvals) {
    if (pv <= level) ++row.rejections;
  }
  // Summed in replication order so the result does not depend on scheduling.
  double sum = 0.0;
  for (double s : stats) sum += s;
  row.mean_statistic = sum / static_cast<double>(stats.size());
  row.rate = static_cast<double>(row.rejections) / static_cast<double>(row.replications);
  const WilsonInterval ci = wilson_interval(row.rejections, row.replications);
  row.ci_low = ci.low;
  row.ci_high = ci.high;
  return row;
}

// Indices of the first `count` elements of a seeded Fisher-Yates shuffle of
// [0, size).
std::vector<std::size_t> partial_shuffle(std::size_t size, std::size_t count, Rng& rng) {
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(size - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  return idx;
}

MatrixSample subset(const MatrixSample& region, const std::size_t* begin, std::size_t count) {
  std::vector<HermitianMatrix> obs;
  obs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) obs.push_back(region[begin[i]]);
  return MatrixSample(std::move(obs));
}

}  // namespace

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) fail(ErrorCode::InvalidArgument, "Wilson interval needs trials > 0");
  if (successes > trials) fail(ErrorCode::InvalidArgument, "successes exceed trials");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, std::min(centre - half, phat)), std::min(1.0, std::max(centre + half, phat))};
}

std::vector<ReportRow> ExperimentReport::select(Method method) const {
  std::vector<ReportRow> out;
  for (const auto& r : rows) {
    if (r.method == method) out.push_back(r);
  }
  return out;
}

const ReportRow& ExperimentReport::at(Method method, std::size_t n, double level,
                                      std::optional<double> contrast) const {
  for (const auto& r : rows) {
    if (r.method == method && r.sample_size == n && r.level == level && r.contrast == contrast) {
      return r;
    }
  }
  fail(ErrorCode::InvalidArgument, "no report row for " + std::string(to_string(method)) +
                                       " N=" + std::to_string(n));
}

ExperimentReport run_size_experiment(const SizeExperimentConfig& cfg) {
  validate(cfg.options);
  validate_sizes(cfg.sample_sizes);
  validate_levels(cfg.levels);
  ExperimentReport report;
  for (std::size_t n : cfg.sample_sizes) {
    const auto table = run_replications(cfg.options, [&](std::size_t j) {
      const RngSeed unit = unit_seed(cfg.options.seed, j, n);
      return PairFits{fit_sample(sample(cfg.theta, n, derive(unit, 0)), cfg.options.test.looks),
                      fit_sample(sample(cfg.theta, n, derive(unit, 1)), cfg.options.test.looks)};
    });
    for (std::size_t k = 0; k < cfg.options.methods.size(); ++k) {
      for (double level : cfg.levels) {
        report.rows.push_back(summarize(table, k, cfg.options.methods[k], n, level, std::nullopt));
      }
    }
  }
  return report;
}

ExperimentReport run_power_experiment(const PowerExperimentConfig& cfg) {
  validate(cfg.options);
  validate_sizes(cfg.sample_sizes);
  validate_levels({cfg.level});
  if (cfg.contrasts.empty()) fail(ErrorCode::InvalidArgument, "no contrast factors given");
  for (double k : cfg.contrasts) {
    if (!(k > -1.0)) fail(ErrorCode::InvalidArgument, "contrast factors must exceed -1");
  }
  ExperimentReport report;
  for (std::size_t n : cfg.sample_sizes) {
    for (double contrast : cfg.contrasts) {
      const WishartParams shifted = cfg.theta.scaled(1.0 + contrast);
      // Same seeds as the size experiment: k = 0 reproduces it exactly.
      const auto table = run_replications(cfg.options, [&](std::size_t j) {
        const RngSeed unit = unit_seed(cfg.options.seed, j, n);
        return PairFits{fit_sample(sample(cfg.theta, n, derive(unit, 0)), cfg.options.test.looks),
                        fit_sample(sample(shifted, n, derive(unit, 1)), cfg.options.test.looks)};
      });
      for (std::size_t k = 0; k < cfg.options.methods.size(); ++k) {
        report.rows.push_back(
            summarize(table, k, cfg.options.methods[k], n, cfg.level, contrast));
      }
    }
  }
  return report;
}

ExperimentReport run_same_target_experiment(const std::vector<MatrixSample>& regions,
                                            const SameTargetConfig& cfg) {
  validate(cfg.options);
  validate_sizes(cfg.sample_sizes);
  validate_levels(cfg.levels);
  if (regions.empty()) fail(ErrorCode::InvalidArgument, "no regions given");
  if (cfg.cross_region && regions.size() < 2) {
    fail(ErrorCode::InvalidArgument, "cross-region pairing needs at least two regions");
  }
  for (const auto& r : regions) {
    if (r.dim() != regions.front().dim()) {
      fail(ErrorCode::DimensionMismatch, "regions differ in dimension");
    }
  }
  ExperimentReport report;
  for (std::size_t n : cfg.sample_sizes) {
    for (std::size_t r = 0; r < regions.size(); ++r) {
      const std::size_t need = cfg.cross_region ? n : 2 * n;
      if (regions[r].size() < need) {
        fail(ErrorCode::RegionTooSmall,
             "region " + std::to_string(r) + " has " + std::to_string(regions[r].size()) +
                 " observations, needs " + std::to_string(need));
      }
    }
    const auto table = run_replications(cfg.options, [&](std::size_t j) {
      const RngSeed unit = unit_seed(cfg.options.seed, j, n);
      const std::size_t r = j % regions.size();
      const auto& looks = cfg.options.test.looks;
      if (!cfg.cross_region) {
        Rng rng(derive(unit, 0));
        const auto idx = partial_shuffle(regions[r].size(), 2 * n, rng);
        return PairFits{fit_sample(subset(regions[r], idx.data(), n), looks),
                        fit_sample(subset(regions[r], idx.data() + n, n), looks)};
      }
      const std::size_t r2 = (r + 1) % regions.size();
      Rng rng_a(derive(unit, 0));
      Rng rng_b(derive(unit, 1));
      const auto ia = partial_shuffle(regions[r].size(), n, rng_a);
      const auto ib = partial_shuffle(regions[r2].size(), n, rng_b);
      return PairFits{fit_sample(subset(regions[r], ia.data(), n), looks),
                      fit_sample(subset(regions[r2], ib.data(), n), looks)};
    });
    for (std::size_t k = 0; k < cfg.options.methods.size(); ++k) {
      for (double level : cfg.levels) {
        report.rows.push_back(summarize(table, k, cfg.options.methods[k], n, level, std::nullopt));
      }
    }
  }
  return report;
}

void write_csv(const ExperimentReport& report, std::ostream& out) {
  out << "method,N,level_or_k,rate,mean_stat,ci_lo,ci_hi\n";
  const auto old_precision = out.precision(10);
  for (const auto& r : report.rows) {
    out << to_string(r.method) << ',' << r.sample_size << ','
        << (r.contrast ? *r.contrast : r.level) << ',' << r.rate << ',' << r.mean_statistic << ','
        << r.ci_low << ',' << r.ci_high << '\n';
  }
  out.precision(old_precision);
}

std::string to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  write_csv(report, out);
  return out.str();
}

}  // namespace polchange
