#include "polchange/estimation.hpp"

#include <cmath>
#include <string>

#include "polchange/error.hpp"
#include "polchange/special.hpp"

namespace polchange {

namespace {

constexpr double kResidualTol = 1e-10;
constexpr double kStepTol = 1e-12;
constexpr int kMaxIterations = 100;
constexpr double kUpperLooks = 1e6;

}  // namespace

HermitianMatrix estimate_sigma(const MatrixSample& sample) { return mean(sample.observations()); }

double mean_logdet(const MatrixSample& sample) {
  double acc = 0.0;
  for (const auto& z : sample.observations()) acc += logdet(z);
  return acc / static_cast<double>(sample.size());
}

double looks_score(double looks, int p, double mean_logdet, double logdet_sigma_hat) {
  return p * std::log(looks) + mean_logdet - logdet_sigma_hat -
         multivariate_polygamma(0, p, looks);
}

double looks_score_derivative(double looks, int p) {
  return p / looks - multivariate_polygamma(1, p, looks);
}

double solve_looks(int p, double mean_logdet, double logdet_sigma_hat, double init) {
  const double floor_looks = p - 1.0;
  const double gap = mean_logdet - logdet_sigma_hat;
  // The score decreases from +inf at L = p-1 towards `gap` as L grows, so a
  // root exists iff gap < 0. gap == 0 means all observations are equal.
  if (!(gap < 0.0)) {
    fail(ErrorCode::NoConvergence,
         "looks score has no finite root: observations carry no speckle variance");
  }
  auto score = [&](double l) { return looks_score(l, p, mean_logdet, logdet_sigma_hat); };

  double lo = floor_looks + 1e-2;
  while (score(lo) <= 0.0) {
    const double next = floor_looks + 0.1 * (lo - floor_looks);
    if (next - floor_looks < 1e-12) {
      fail(ErrorCode::DomainError, "looks root lies below p - 1 + 1e-12");
    }
    lo = next;
  }
  double hi = 100.0;
  while (score(hi) > 0.0) {
    if (hi >= kUpperLooks) {
      fail(ErrorCode::NoConvergence,
           "looks root lies above " + std::to_string(kUpperLooks) + " (near-degenerate sample)");
    }
    hi = std::min(hi * 10.0, kUpperLooks);
  }

  double l = (init > lo && init < hi) ? init : 0.5 * (lo + hi);
  if (init == 0.0) {
    // Large-L expansion p log L - psi_p(L) ~ p^2 / (2L).
    const double guess = p * p / (-2.0 * gap);
    if (guess > lo && guess < hi) l = guess;
  }
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const double g = score(l);
    if (std::abs(g) < kResidualTol) return l;
    if (g > 0.0) lo = l; else hi = l;
    double next = l - g / looks_score_derivative(l, p);
    // Newton leaving the bracket falls back to bisection.
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - l) < kStepTol * std::max(1.0, l)) return next;
    l = next;
  }
  fail(ErrorCode::NoConvergence, "looks estimation hit the iteration cap");
}

double estimate_looks(const MatrixSample& sample, const HermitianMatrix& sigma_hat,
                      double init) {
  const int p = static_cast<int>(sample.dim());
  if (sample.size() < 2) {
    fail(ErrorCode::DomainError, "looks estimation needs at least two observations");
  }
  if (init != 0.0 && !(init > p - 1.0)) {
    fail(ErrorCode::DomainError, "looks initial value must exceed p - 1");
  }
  return solve_looks(p, mean_logdet(sample), logdet(sigma_hat), init);
}

MLEstimate estimate(const MatrixSample& sample, LooksMode mode) {
  HermitianMatrix sigma_hat = estimate_sigma(sample);
  if (mode.is_known()) {
    return MLEstimate{WishartParams(std::move(sigma_hat), mode.value()), sample.size(),
                      std::nullopt};
  }
  const int p = static_cast<int>(sample.dim());
  if (sample.size() < 2) {
    fail(ErrorCode::DomainError, "looks estimation needs at least two observations");
  }
  if (mode.value() != 0.0 && !(mode.value() > p - 1.0)) {
    fail(ErrorCode::DomainError, "looks initial value must exceed p - 1");
  }
  const double mld = mean_logdet(sample);
  const double looks = solve_looks(p, mld, logdet(sigma_hat), mode.value());
  return MLEstimate{WishartParams(std::move(sigma_hat), looks), sample.size(), mld};
}

MLEstimate pooled_estimate(const MatrixSample& a, const MatrixSample& b, LooksMode mode) {
  if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "pooled samples differ in p");
  return estimate(MatrixSample::concat(a, b), mode);
}

}  // namespace polchange
