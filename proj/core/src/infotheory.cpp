#include "polchange/infotheory.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "polchange/error.hpp"
#include "polchange/special.hpp"

namespace polchange {

namespace {

double renyi_shape(double looks, int p, double beta) {
  return looks + (1.0 - beta) * (p - looks);
}

void check_renyi(const WishartParams& theta, double beta) {
  if (!(beta > 0.0) || beta == 1.0 || !std::isfinite(beta)) {
    fail(ErrorCode::DomainError, "Renyi order must be positive and different from 1");
  }
  const int p = theta.dim();
  const double q = renyi_shape(theta.looks(), p, beta);
  if (!(q > p - 1.0)) {
    fail(ErrorCode::DomainError, "Renyi order " + std::to_string(beta) + " gives q = " +
                                     std::to_string(q) + " <= p - 1 for L = " +
                                     std::to_string(theta.looks()));
  }
}

// Terms shared by both entropies: p(p-1)/2 log pi - p^2 log L + p log|Sigma|.
double entropy_common(const WishartParams& theta) {
  const double p = theta.dim();
  return 0.5 * p * (p - 1.0) * std::log(std::numbers::pi) - p * p * std::log(theta.looks()) +
         p * logdet(theta.sigma());
}

}  // namespace

EntropyKind EntropyKind::renyi(double beta) {
  if (!(beta > 0.0) || beta == 1.0 || !std::isfinite(beta)) {
    fail(ErrorCode::DomainError, "Renyi order must be positive and different from 1");
  }
  return EntropyKind(beta);
}

double kl_distance(const WishartParams& a, const WishartParams& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "kl_distance dimension mismatch");
  const int p = a.dim();
  const double la = a.looks();
  const double lb = b.looks();
  double looks_part = 0.0;
  if (la != lb) {
    looks_part = 0.5 * (la - lb) *
                 (logdet(a.sigma()) - logdet(b.sigma()) - p * std::log(la / lb) +
                  multivariate_polygamma(0, p, la) - multivariate_polygamma(0, p, lb));
  }
  const double traces = lb * trace_product(inverse(b.sigma()), a.sigma()) +
                        la * trace_product(inverse(a.sigma()), b.sigma());
  return looks_part - 0.5 * p * (la + lb) + 0.5 * traces;
}

double shannon_entropy(const WishartParams& theta) {
  const int p = theta.dim();
  const double looks = theta.looks();
  double lg = 0.0;
  for (int k = 0; k < p; ++k) lg += lngamma(looks - k);
  return entropy_common(theta) + p * looks + (p - looks) * multivariate_polygamma(0, p, looks) +
         lg;
}

double renyi_entropy(const WishartParams& theta, double beta) {
  check_renyi(theta, beta);
  const int p = theta.dim();
  const double looks = theta.looks();
  const double q = renyi_shape(looks, p, beta);
  double lg = 0.0;
  for (int i = 0; i < p; ++i) lg += lngamma(q - i) - beta * lngamma(looks - i);
  return entropy_common(theta) - p * q * std::log(beta) / (1.0 - beta) + lg / (1.0 - beta);
}

double entropy(const WishartParams& theta, EntropyKind kind) {
  return kind.is_shannon() ? shannon_entropy(theta) : renyi_entropy(theta, kind.beta());
}

double covariance_quadratic_form(const HermitianMatrix& sigma, KroneckerConvention convention) {
  const ComplexVector v = vec(inverse(sigma).matrix());
  const ComplexMatrix left =
      convention == KroneckerConvention::Transposed ? sigma.matrix().transpose() : sigma.matrix();
  const ComplexVector kv = multiply(kron(left, sigma.matrix()), v);
  return dot(v, kv).real();
}

double entropy_variance(const WishartParams& theta, EntropyKind kind,
                        KroneckerConvention convention) {
  const int p = theta.dim();
  const double looks = theta.looks();
  const double trigamma_sum = multivariate_polygamma(1, p, looks);
  const double fisher_looks = trigamma_sum - p / looks;
  if (!(fisher_looks > 0.0)) {
    fail(ErrorCode::DomainError, "looks information psi_p'(L) - p/L is not positive");
  }
  double gradient = 0.0;
  if (kind.is_shannon()) {
    gradient = (p - looks) * trigamma_sum + p - p * p / looks;
  } else {
    const double beta = kind.beta();
    check_renyi(theta, beta);
    const double q = renyi_shape(looks, p, beta);
    gradient = beta / (1.0 - beta) *
                   (multivariate_polygamma(0, p, q) - multivariate_polygamma(0, p, looks)) -
               p * beta * std::log(beta) / (1.0 - beta) - p * p / looks;
  }
  return gradient * gradient / fisher_looks +
         p * p / looks * covariance_quadratic_form(theta.sigma(), convention);
}

}  // namespace polchange
