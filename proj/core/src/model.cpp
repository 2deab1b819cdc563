#include "polchange/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polchange/error.hpp"
#include "polchange/special.hpp"

namespace polchange {

WishartParams::WishartParams(HermitianMatrix sigma, double looks)
    : sigma_(std::move(sigma)), looks_(looks) {
  const auto p = static_cast<double>(sigma_.dim());
  if (sigma_.dim() == 0) fail(ErrorCode::DomainError, "covariance matrix is empty");
  if (!(looks_ > p - 1.0) || !std::isfinite(looks_)) {
    fail(ErrorCode::DomainError, "number of looks must exceed p - 1, got L = " +
                                     std::to_string(looks_) + " for p = " +
                                     std::to_string(sigma_.dim()));
  }
  (void)cholesky(sigma_);
}

MatrixSample::MatrixSample(std::vector<HermitianMatrix> observations)
    : observations_(std::move(observations)) {
  if (observations_.empty()) fail(ErrorCode::EmptySample, "sample has no observations");
  const std::size_t p = observations_.front().dim();
  if (p == 0) fail(ErrorCode::DimensionMismatch, "observations must be at least 1 x 1");
  for (const auto& z : observations_) {
    if (z.dim() != p) fail(ErrorCode::DimensionMismatch, "observations differ in dimension");
  }
}

MatrixSample MatrixSample::scaled(double c) const {
  std::vector<HermitianMatrix> out;
  out.reserve(observations_.size());
  for (const auto& z : observations_) out.push_back(z.scaled(c));
  return MatrixSample(std::move(out));
}

MatrixSample MatrixSample::concat(const MatrixSample& a, const MatrixSample& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "cannot pool samples of different p");
  std::vector<HermitianMatrix> out(a.observations_);
  out.insert(out.end(), b.observations_.begin(), b.observations_.end());
  return MatrixSample(std::move(out));
}

HermitianMatrix flevoland_b1() {
  using C = Complex;
  const C s01(-3.469e-4, 1.048e-4);
  const C s02(1.439e-3, 1.164e-3);
  const C s12(8.551e-5, -1.608e-5);
  return HermitianMatrix{
      {C(9.528e-3), s01, s02},
      {std::conj(s01), C(1.794e-3), s12},
      {std::conj(s02), std::conj(s12), C(4.955e-3)},
  };
}

double log_density(const HermitianMatrix& z, const WishartParams& theta) {
  const int p = theta.dim();
  if (static_cast<int>(z.dim()) != p) {
    fail(ErrorCode::DimensionMismatch, "observation and covariance differ in dimension");
  }
  const double looks = theta.looks();
  const double pd = static_cast<double>(p);
  return pd * looks * std::log(looks) + (looks - pd) * logdet(z) -
         looks * logdet(theta.sigma()) - log_multivariate_gamma(p, looks) -
         looks * trace_product(inverse(theta.sigma()), z);
}

MatrixSample sample(const WishartParams& theta, std::size_t n, RngSeed seed) {
  const double looks = theta.looks();
  const std::size_t p = theta.sigma().dim();
  if (looks != std::floor(looks) || looks < 3.0 || looks < static_cast<double>(p)) {
    fail(ErrorCode::DomainError,
         "exact sampling needs an integer number of looks >= max(3, p), got L = " +
             std::to_string(looks));
  }
  if (n == 0) fail(ErrorCode::EmptySample, "requested an empty sample");
  const auto n_looks = static_cast<std::size_t>(looks);

  // Real 2p-variate covariance (1/2)[[R, -I], [I, R]] of (Re y, Im y).
  const std::size_t q = 2 * p;
  std::vector<double> block(q * q);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const Complex s = theta.sigma()(i, j);
      block[i * q + j] = 0.5 * s.real();
      block[(i + p) * q + (j + p)] = 0.5 * s.real();
      block[i * q + (j + p)] = -0.5 * s.imag();
      block[(i + p) * q + j] = 0.5 * s.imag();
    }
  }
  const std::vector<double> factor = cholesky_real(block, q);

  Rng rng(seed);
  std::vector<double> normals(q);
  std::vector<double> x(q);
  std::vector<HermitianMatrix> draws;
  draws.reserve(n);
  const double inv_looks = 1.0 / looks;
  for (std::size_t d = 0; d < n; ++d) {
    ComplexMatrix acc(p, p);
    for (std::size_t look = 0; look < n_looks; ++look) {
      for (auto& v : normals) v = rng.normal();
      for (std::size_t i = 0; i < q; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k <= i; ++k) s += factor[i * q + k] * normals[k];
        x[i] = s;
      }
      for (std::size_t i = 0; i < p; ++i) {
        const Complex yi(x[i], x[i + p]);
        for (std::size_t j = i; j < p; ++j) {
          acc(i, j) += yi * Complex(x[j], -x[j + p]);
        }
      }
    }
    for (auto& v : acc.data()) v *= inv_looks;
    draws.push_back(HermitianMatrix::from_upper(std::move(acc)));
  }
  return MatrixSample(std::move(draws));
}

double gamma_marginal_log_density(double z, double mean, double looks) {
  if (!(z > 0.0) || !(mean > 0.0) || !(looks > 0.0)) {
    fail(ErrorCode::DomainError, "Gamma marginal needs z, mean and looks all positive");
  }
  return looks * std::log(looks) + (looks - 1.0) * std::log(z) - lngamma(looks) -
         looks * std::log(mean) - looks * z / mean;
}

std::vector<double> trace_transform(const MatrixSample& sample,
                                    const HermitianMatrix& sigma_hat) {
  if (sample.dim() != sigma_hat.dim()) {
    fail(ErrorCode::DimensionMismatch, "trace_transform dimension mismatch");
  }
  const HermitianMatrix precision = inverse(sigma_hat);
  std::vector<double> out;
  out.reserve(sample.size());
  for (const auto& z : sample.observations()) out.push_back(trace_product(precision, z));
  return out;
}

KsResult ks_test(std::span<const double> values, const std::function<double(double)>& cdf) {
  if (values.empty()) fail(ErrorCode::EmptySample, "KS test on an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return KsResult{d, kolmogorov_sf(std::sqrt(n) * d), sorted.size()};
}

KsResult ks_test_gamma(std::span<const double> values, double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    fail(ErrorCode::DomainError, "KS test needs positive Gamma shape and scale");
  }
  return ks_test(values, [&](double x) { return gamma_cdf(x, shape, scale); });
}

}  // namespace polchange
