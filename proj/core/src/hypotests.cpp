#include "polchange/hypotests.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "polchange/error.hpp"
#include "polchange/special.hpp"

namespace polchange {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::LR: return "lr";
    case Method::KL: return "kl";
    case Method::Shannon: return "shannon";
    case Method::Renyi: return "renyi";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Method m : {Method::LR, Method::KL, Method::Shannon, Method::Renyi}) {
    if (lower == to_string(m)) return m;
  }
  return std::nullopt;
}

namespace {

// Statistics that should be zero but come out as tiny negatives after
// cancellation are floored; anything more negative is a numerical failure.
double floor_roundoff(double value, double scale) {
  if (value >= 0.0) return value;
  if (value >= -1e-9 * std::max(1.0, scale)) return 0.0;
  fail(ErrorCode::DomainError,
       "test statistic is negative beyond round-off: " + std::to_string(value));
}

TestResult make_result(double statistic, double df, Method method, LooksMode mode,
                       double beta = 0.0) {
  TestResult r;
  r.statistic = statistic;
  r.df = df;
  r.p_value = std::clamp(chi2_sf(statistic, df), 0.0, 1.0);
  r.method = method;
  r.renyi_beta = beta;
  r.looks_mode = mode;
  return r;
}

double parameter_df(std::size_t p, LooksMode mode) {
  const auto pp = static_cast<double>(p * p);
  return mode.is_known() ? pp : pp + 1.0;
}

bool same_parameters(const SampleFit& a, const SampleFit& b) {
  return a.estimate.params.looks() == b.estimate.params.looks() &&
         a.estimate.params.sigma() == b.estimate.params.sigma();
}

void check_pair(const SampleFit& a, const SampleFit& b) {
  if (a.estimate.params.dim() != b.estimate.params.dim()) {
    fail(ErrorCode::DimensionMismatch, "samples differ in dimension");
  }
}

HermitianMatrix pooled_sigma(const SampleFit& a, const SampleFit& b) {
  const auto n1 = static_cast<double>(a.estimate.sample_size);
  const auto n2 = static_cast<double>(b.estimate.sample_size);
  const double n = n1 + n2;
  return a.estimate.params.sigma().scaled(n1 / n) + b.estimate.params.sigma().scaled(n2 / n);
}

}  // namespace

SampleFit fit_sample(const MatrixSample& sample, LooksMode mode) {
  MLEstimate est = estimate(sample, mode);
  const double ld = logdet(est.params.sigma());
  return SampleFit{std::move(est), ld};
}

// ---------------------------------------------------------------------------

double lr_log_lambda(const MatrixSample& a, const MatrixSample& b, const WishartParams& first,
                     const WishartParams& second, const WishartParams& pooled) {
  const int p = first.dim();
  const auto n1 = static_cast<double>(a.size());
  const auto n2 = static_cast<double>(b.size());
  const double l1 = first.looks();
  const double l2 = second.looks();
  const double lc = pooled.looks();

  const double a_p = p * (lc * (n1 + n2) * std::log(lc) - l1 * n1 * std::log(l1) -
                          l2 * n2 * std::log(l2)) +
                     n1 * log_multivariate_gamma(p, l1) + n2 * log_multivariate_gamma(p, l2) -
                     (n1 + n2) * log_multivariate_gamma(p, lc);
  const double dets = n1 * l1 * logdet(first.sigma()) + n2 * l2 * logdet(second.sigma()) -
                      (n1 + n2) * lc * logdet(pooled.sigma());

  const HermitianMatrix inv1 = inverse(first.sigma());
  const HermitianMatrix inv2 = inverse(second.sigma());
  const HermitianMatrix invc = inverse(pooled.sigma());
  double sum = a_p + dets;
  for (const auto& x : a.observations()) {
    if (lc != l1) sum += (lc - l1) * logdet(x);
    sum += l1 * trace_product(inv1, x) - lc * trace_product(invc, x);
  }
  for (const auto& y : b.observations()) {
    if (lc != l2) sum += (lc - l2) * logdet(y);
    sum += l2 * trace_product(inv2, y) - lc * trace_product(invc, y);
  }
  return sum;
}

TestResult lr_from_fits(const SampleFit& a, const SampleFit& b, LooksMode mode) {
  check_pair(a, b);
  const int p = a.estimate.params.dim();
  const double df = parameter_df(static_cast<std::size_t>(p), mode);
  if (same_parameters(a, b)) return make_result(0.0, df, Method::LR, mode);

  const auto n1 = static_cast<double>(a.estimate.sample_size);
  const auto n2 = static_cast<double>(b.estimate.sample_size);
  const double n = n1 + n2;
  const HermitianMatrix sigma_c = pooled_sigma(a, b);
  const double ld_c = logdet(sigma_c);

  if (mode.is_known()) {
    const double looks = mode.value();
    const double bracket = n1 * a.logdet_sigma + n2 * b.logdet_sigma - n * ld_c;
    const double scale = looks * (n1 * std::abs(a.logdet_sigma) + n2 * std::abs(b.logdet_sigma));
    return make_result(floor_roundoff(-2.0 * looks * bracket, scale), df, Method::LR, mode);
  }

  // Estimated looks: log lambda from sufficient statistics, where
  // sum_i log|X_i| = N1 * mean_logdet and sum_i tr(A X_i) = N1 tr(A Sigma_1).
  const double mld1 = a.estimate.mean_logdet.value();
  const double mld2 = b.estimate.mean_logdet.value();
  const double l1 = a.estimate.params.looks();
  const double l2 = b.estimate.params.looks();
  const double mld_c = (n1 * mld1 + n2 * mld2) / n;
  const double lc = solve_looks(p, mld_c, ld_c, 0.5 * (l1 + l2));

  const double a_p = p * (lc * n * std::log(lc) - l1 * n1 * std::log(l1) -
                          l2 * n2 * std::log(l2)) +
                     n1 * log_multivariate_gamma(p, l1) + n2 * log_multivariate_gamma(p, l2) -
                     n * log_multivariate_gamma(p, lc);
  const double dets = n1 * l1 * a.logdet_sigma + n2 * l2 * b.logdet_sigma - n * lc * ld_c;
  const double logs = (lc - l1) * n1 * mld1 + (lc - l2) * n2 * mld2;
  const HermitianMatrix invc = inverse(sigma_c);
  // tr(L1 S1^{-1} S1) = p L1.
  const double traces = n1 * (p * l1 - lc * trace_product(invc, a.estimate.params.sigma())) +
                        n2 * (p * l2 - lc * trace_product(invc, b.estimate.params.sigma()));
  const double log_lambda = a_p + dets + logs + traces;
  const double scale = std::abs(dets) + std::abs(a_p) + std::abs(logs);
  return make_result(floor_roundoff(-2.0 * log_lambda, scale), df, Method::LR, mode);
}

TestResult kl_from_fits(const SampleFit& a, const SampleFit& b, LooksMode mode,
                        double normalization) {
  check_pair(a, b);
  if (!(normalization > 0.0)) fail(ErrorCode::DomainError, "KL normalization must be positive");
  const int p = a.estimate.params.dim();
  const double df = parameter_df(static_cast<std::size_t>(p), mode);
  if (same_parameters(a, b)) return make_result(0.0, df, Method::KL, mode);
  const auto n1 = static_cast<double>(a.estimate.sample_size);
  const auto n2 = static_cast<double>(b.estimate.sample_size);
  const double distance = kl_distance(a.estimate.params, b.estimate.params);
  const double weight = 2.0 * n1 * n2 / (n1 + n2);
  const double scale =
      weight * p * (a.estimate.params.looks() + b.estimate.params.looks());
  return make_result(floor_roundoff(weight * distance / normalization, scale), df, Method::KL,
                     mode);
}

TestResult entropy_from_fits(std::span<const SampleFit> fits, EntropyKind kind, LooksMode mode,
                             KroneckerConvention convention) {
  if (fits.size() < 2) fail(ErrorCode::DomainError, "entropy test needs at least two samples");
  const Method method = kind.is_shannon() ? Method::Shannon : Method::Renyi;
  const double beta = kind.is_shannon() ? 0.0 : kind.beta();
  const double df = static_cast<double>(fits.size() - 1);

  std::vector<double> h(fits.size());
  std::vector<double> w(fits.size());
  bool all_same = true;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    check_pair(fits[0], fits[i]);
    const WishartParams& theta = fits[i].estimate.params;
    h[i] = entropy(theta, kind);
    w[i] = static_cast<double>(fits[i].estimate.sample_size) /
           entropy_variance(theta, kind, convention);
    all_same = all_same && same_parameters(fits[0], fits[i]);
  }
  if (all_same) return make_result(0.0, df, method, mode, beta);

  double wsum = 0.0;
  double whsum = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    wsum += w[i];
    whsum += w[i] * h[i];
  }
  const double vbar = whsum / wsum;
  double stat = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) stat += w[i] * (h[i] - vbar) * (h[i] - vbar);
  return make_result(stat, df, method, mode, beta);
}

TestResult run_test_on_fits(Method method, const SampleFit& a, const SampleFit& b,
                            const TestOptions& options) {
  switch (method) {
    case Method::LR: return lr_from_fits(a, b, options.looks);
    case Method::KL: return kl_from_fits(a, b, options.looks, options.kl_normalization);
    case Method::Shannon: {
      const SampleFit pair[] = {a, b};
      return entropy_from_fits(pair, EntropyKind::shannon(), options.looks, options.convention);
    }
    case Method::Renyi: {
      const SampleFit pair[] = {a, b};
      return entropy_from_fits(pair, EntropyKind::renyi(options.renyi_beta), options.looks,
                               options.convention);
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown test method");
}

// ---------------------------------------------------------------------------

TestResult lr_statistic(const MatrixSample& a, const MatrixSample& b, LooksMode mode) {
  if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "samples differ in dimension");
  return lr_from_fits(fit_sample(a, mode), fit_sample(b, mode), mode);
}

TestResult kl_statistic(const MatrixSample& a, const MatrixSample& b, LooksMode mode,
                        double normalization) {
  if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "samples differ in dimension");
  return kl_from_fits(fit_sample(a, mode), fit_sample(b, mode), mode, normalization);
}

TestResult entropy_statistic(std::span<const MatrixSample> samples, EntropyKind kind,
                             LooksMode mode, KroneckerConvention convention) {
  if (samples.size() < 2) fail(ErrorCode::DomainError, "entropy test needs at least two samples");
  std::vector<SampleFit> fits;
  fits.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.dim() != samples.front().dim()) {
      fail(ErrorCode::DimensionMismatch, "samples differ in dimension");
    }
    fits.push_back(fit_sample(s, mode));
  }
  return entropy_from_fits(fits, kind, mode, convention);
}

TestResult run_test(Method method, const MatrixSample& a, const MatrixSample& b,
                    const TestOptions& options) {
  if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "samples differ in dimension");
  return run_test_on_fits(method, fit_sample(a, options.looks), fit_sample(b, options.looks),
                          options);
}

bool decide(const TestResult& result, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::DomainError, "alpha must lie in (0, 1)");
  return result.p_value <= alpha;
}

}  // namespace polchange
