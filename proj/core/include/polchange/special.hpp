#pragma once

// Scalar special functions. All throw Error(DomainError) outside their
// domain and are pure, so they may be called from any thread.

namespace polchange {

// log Gamma(x) for x > 0.
double lngamma(double x);

// psi(x) = d/dx log Gamma(x), x > 0.
double digamma(double x);

// psi'(x), x > 0.
double trigamma(double x);

// sum_{i=0}^{p-1} psi^{(order)}(looks - i) for order 0 or 1.
// Requires looks > p - 1.
double multivariate_polygamma(int order, int p, double looks);

// log Gamma_p(looks) = p(p-1)/2 log(pi) + sum_{i=0}^{p-1} lngamma(looks - i).
double log_multivariate_gamma(int p, double looks);

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Chi-square tail Pr(chi2_df > x) and its complement.
double chi2_sf(double x, double df);
double chi2_cdf(double x, double df);

// Gamma(shape, scale) distribution function.
double gamma_cdf(double x, double shape, double scale);

// Standard normal distribution function.
double normal_cdf(double x);

// Kolmogorov limiting tail Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2),
// truncated at 100 terms and clamped to [0, 1].
double kolmogorov_sf(double lambda);

}  // namespace polchange
