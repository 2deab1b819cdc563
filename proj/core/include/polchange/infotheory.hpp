#pragma once

// Closed-form information measures of the scaled complex Wishart law.

#include "polchange/model.hpp"

namespace polchange {

class EntropyKind {
 public:
  static EntropyKind shannon() { return EntropyKind(0.0); }
  // Order beta > 0, beta != 1.
  static EntropyKind renyi(double beta);

  bool is_shannon() const noexcept { return beta_ == 0.0; }
  double beta() const noexcept { return beta_; }

 private:
  explicit EntropyKind(double beta) : beta_(beta) {}
  double beta_;  // 0 encodes Shannon
};

// Order used by the Renyi tests unless configured otherwise.
inline constexpr double kDefaultRenyiOrder = 0.1;

// Convention for the quadratic form vec(S^{-1})* K vec(S^{-1}) in the
// entropy variances. Transposed uses K = S^T (x) S, which equals
// tr(S^{-1} S S^{-1} S) = p. Literal uses K = S (x) S as printed.
enum class KroneckerConvention { Transposed, Literal };

// Symmetrized Kullback-Leibler distance
// d = (D(1||2) + D(2||1)) / 2 between two Wishart laws of equal p.
double kl_distance(const WishartParams& a, const WishartParams& b);

double shannon_entropy(const WishartParams& theta);

// Requires q = L + (1 - beta)(p - L) > p - 1.
double renyi_entropy(const WishartParams& theta, double beta);

double entropy(const WishartParams& theta, EntropyKind kind);

// vec(S^{-1})* K vec(S^{-1}) under the given convention.
double covariance_quadratic_form(const HermitianMatrix& sigma,
                                 KroneckerConvention convention = KroneckerConvention::Transposed);

// Asymptotic variance of sqrt(N) [H(theta_hat) - H(theta)] for the joint
// (Sigma, L) estimator.
double entropy_variance(const WishartParams& theta, EntropyKind kind,
                        KroneckerConvention convention = KroneckerConvention::Transposed);

}  // namespace polchange
