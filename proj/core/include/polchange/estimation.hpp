#pragma once

// Maximum-likelihood estimation of (Sigma, L) under the relaxed Wishart model.

#include <cstddef>
#include <optional>

#include "polchange/model.hpp"

namespace polchange {

// How the number of looks enters an estimate or a test.
class LooksMode {
 public:
  static LooksMode known(double looks) { return LooksMode(true, looks); }
  // `init` seeds the Newton iteration; 0 picks a default start.
  static LooksMode estimated(double init = 0.0) { return LooksMode(false, init); }

  bool is_known() const noexcept { return known_; }
  // Fixed L in known mode, Newton start (0 = default) when estimated.
  double value() const noexcept { return value_; }

 private:
  LooksMode(bool known, double value) : known_(known), value_(value) {}
  bool known_;
  double value_;
};

struct MLEstimate {
  WishartParams params;
  std::size_t sample_size = 0;
  // N^{-1} sum log|Z_k|; present when the looks were estimated.
  std::optional<double> mean_logdet;
};

// Sample mean of the observations.
HermitianMatrix estimate_sigma(const MatrixSample& sample);

// N^{-1} sum log|Z_k|. Throws NotPositiveDefinite on a singular observation.
double mean_logdet(const MatrixSample& sample);

// Score for L: p log L + mean_logdet - log|sigma_hat| - psi_p(L).
double looks_score(double looks, int p, double mean_logdet, double logdet_sigma_hat);

// Derivative of looks_score: p/L - psi_p'(L).
double looks_score_derivative(double looks, int p);

// Root of looks_score by Newton-Raphson with a bisection fallback.
//  - NoConvergence when the sample is degenerate (mean log-determinant not
//    below the log-determinant of the mean, so no finite root exists) or the
//    iteration cap of 100 is reached.
//  - DomainError when fewer than two observations are given or init <= p-1.
double estimate_looks(const MatrixSample& sample, const HermitianMatrix& sigma_hat,
                      double init);

// Same root from precomputed sufficient statistics.
double solve_looks(int p, double mean_logdet, double logdet_sigma_hat, double init);

// Joint estimate. Known mode returns the sample mean and the fixed L.
MLEstimate estimate(const MatrixSample& sample, LooksMode mode);

// Estimate under the null of equal parameters: Sigma_c is the mean of the
// concatenation and L_c is solved on the concatenation (or fixed).
MLEstimate pooled_estimate(const MatrixSample& a, const MatrixSample& b, LooksMode mode);

}  // namespace polchange
