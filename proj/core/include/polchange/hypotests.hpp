#pragma once

// Two- and r-sample tests of equal Wishart parameters: likelihood ratio,
// symmetrized Kullback-Leibler, Shannon and Renyi entropy statistics. All
// statistics are referred to chi-square laws; see each function for df.

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "polchange/estimation.hpp"
#include "polchange/infotheory.hpp"

namespace polchange {

enum class Method { LR, KL, Shannon, Renyi };

std::string_view to_string(Method m) noexcept;
// Accepts "lr", "kl", "shannon", "renyi" (case-insensitive).
std::optional<Method> parse_method(std::string_view name);

struct TestResult {
  double statistic = 0.0;
  double df = 1.0;
  double p_value = 1.0;
  Method method = Method::LR;
  double renyi_beta = 0.0;  // order of the Renyi test, 0 otherwise
  LooksMode looks_mode = LooksMode::estimated();
};

struct TestOptions {
  LooksMode looks = LooksMode::estimated();
  double renyi_beta = kDefaultRenyiOrder;
  // h'(0) phi''(1) in the divergence statistic.
  double kl_normalization = 1.0;
  KroneckerConvention convention = KroneckerConvention::Transposed;
};

// -2 log lambda. Known mode: df = p^2 and the statistic reduces to
// -2L [N1 log|S1| + N2 log|S2| - (N1+N2) log|Sc|]. Estimated mode: df = p^2+1,
// full likelihood ratio with per-sample and pooled looks estimates.
TestResult lr_statistic(const MatrixSample& a, const MatrixSample& b, LooksMode mode);

// log lambda summed observation by observation from the given estimates
// (Sigma_1, L_1), (Sigma_2, L_2), (Sigma_c, L_c).
double lr_log_lambda(const MatrixSample& a, const MatrixSample& b, const WishartParams& first,
                     const WishartParams& second, const WishartParams& pooled);

// 2 N1 N2 / (N1 + N2) * d_KL(theta_1, theta_2) / normalization; df as for LR.
TestResult kl_statistic(const MatrixSample& a, const MatrixSample& b, LooksMode mode,
                        double normalization = 1.0);

// sum_i N_i (H(theta_i) - vbar)^2 / sigma^2(theta_i) with vbar the
// precision-weighted mean entropy; df = r - 1. Requires r >= 2.
TestResult entropy_statistic(std::span<const MatrixSample> samples, EntropyKind kind,
                             LooksMode mode,
                             KroneckerConvention convention = KroneckerConvention::Transposed);

// Dispatch on method for a pair of samples.
TestResult run_test(Method method, const MatrixSample& a, const MatrixSample& b,
                    const TestOptions& options);

// Reject iff p_value <= alpha. alpha must lie in (0, 1).
bool decide(const TestResult& result, double alpha);

// ---------------------------------------------------------------------------
// Estimate-level entry points. The Monte Carlo harness and the detector
// estimate each sample once and evaluate every method from the estimates.

struct SampleFit {
  MLEstimate estimate;
  double logdet_sigma = 0.0;
};

SampleFit fit_sample(const MatrixSample& sample, LooksMode mode);

TestResult lr_from_fits(const SampleFit& a, const SampleFit& b, LooksMode mode);
TestResult kl_from_fits(const SampleFit& a, const SampleFit& b, LooksMode mode,
                        double normalization = 1.0);
TestResult entropy_from_fits(std::span<const SampleFit> fits, EntropyKind kind, LooksMode mode,
                             KroneckerConvention convention = KroneckerConvention::Transposed);
TestResult run_test_on_fits(Method method, const SampleFit& a, const SampleFit& b,
                            const TestOptions& options);

}  // namespace polchange
