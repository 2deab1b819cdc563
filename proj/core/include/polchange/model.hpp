#pragma once

// Scaled complex Wishart law W(Sigma, L): density, exact sampler for integer
// looks, single-channel Gamma marginals and the trace-transform fit check.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "polchange/linalg.hpp"
#include "polchange/random.hpp"

namespace polchange {

// (Sigma, L). Sigma positive-definite, L > p - 1.
class WishartParams {
 public:
  WishartParams(HermitianMatrix sigma, double looks);

  const HermitianMatrix& sigma() const noexcept { return sigma_; }
  double looks() const noexcept { return looks_; }
  int dim() const noexcept { return static_cast<int>(sigma_.dim()); }

  // Sigma scaled by c > 0, same looks.
  WishartParams scaled(double c) const { return {sigma_.scaled(c), looks_}; }

 private:
  HermitianMatrix sigma_;
  double looks_;
};

// Observations of one region, all p x p.
class MatrixSample {
 public:
  explicit MatrixSample(std::vector<HermitianMatrix> observations);

  std::size_t dim() const noexcept { return observations_.front().dim(); }
  std::size_t size() const noexcept { return observations_.size(); }
  std::span<const HermitianMatrix> observations() const noexcept { return observations_; }
  const HermitianMatrix& operator[](std::size_t k) const { return observations_[k]; }

  MatrixSample scaled(double c) const;
  static MatrixSample concat(const MatrixSample& a, const MatrixSample& b);

 private:
  std::vector<HermitianMatrix> observations_;
};

// The 3x3 covariance of region B1 (Flevoland, AIRSAR) used throughout the
// simulation studies.
HermitianMatrix flevoland_b1();

// log f(z; Sigma, L). Throws DomainError (L <= p-1) or NotPositiveDefinite.
double log_density(const HermitianMatrix& z, const WishartParams& theta);

// Draws n matrices by averaging L outer products of circular complex Gaussian
// vectors. Requires integer L >= max(3, p).
MatrixSample sample(const WishartParams& theta, std::size_t n, RngSeed seed);

// Log of the single-channel Gamma density with mean `mean` and shape L.
double gamma_marginal_log_density(double z, double mean, double looks);

// t_i = tr(sigma_hat^{-1} Z_i).
std::vector<double> trace_transform(const MatrixSample& sample, const HermitianMatrix& sigma_hat);

struct KsResult {
  double statistic = 0.0;  // sup |F_emp - F|
  double p_value = 1.0;    // Kolmogorov limiting tail at sqrt(n) D
  std::size_t n = 0;
};

// One-sample Kolmogorov-Smirnov test against an arbitrary continuous cdf.
KsResult ks_test(std::span<const double> values, const std::function<double(double)>& cdf);

// One-sample Kolmogorov-Smirnov test against Gamma(shape, scale).
KsResult ks_test_gamma(std::span<const double> values, double shape, double scale);

}  // namespace polchange
