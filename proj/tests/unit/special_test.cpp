#include <gtest/gtest.h>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <numbers>

#include "polchange/error.hpp"
#include "polchange/special.hpp"

using namespace polchange;

namespace bm = boost::math;

TEST(SpecialFunctions, TextbookValues) {
  EXPECT_NEAR(lngamma(1.0), 0.0, 4e-15);
  EXPECT_NEAR(digamma(1.0), -0.5772156649015329, 1e-13);
  EXPECT_NEAR(trigamma(1.0), std::numbers::pi * std::numbers::pi / 6.0, 1e-13);
}

TEST(SpecialFunctions, MatchBoostOnGrid) {
  for (double x = 0.5; x <= 100.0; x += 0.37) {
    EXPECT_NEAR(digamma(x), bm::digamma(x), 1e-12) << x;
    EXPECT_NEAR(trigamma(x), bm::trigamma(x), 1e-12) << x;
    EXPECT_NEAR(lngamma(x), bm::lgamma(x), 1e-12 * std::max(1.0, std::abs(bm::lgamma(x)))) << x;
  }
  for (double x : {1e-3, 0.01, 0.1, 0.25, 150.0, 1e4}) {
    EXPECT_NEAR(lngamma(x), bm::lgamma(x), 1e-11 * std::max(1.0, std::abs(bm::lgamma(x)))) << x;
    EXPECT_NEAR(digamma(x), bm::digamma(x), 1e-10 * std::max(1.0, std::abs(bm::digamma(x))))
        << x;
  }
}

TEST(SpecialFunctions, DomainErrors) {
  for (double bad : {0.0, -1.0, std::nan("")}) {
    EXPECT_THROW(lngamma(bad), Error);
    EXPECT_THROW(digamma(bad), Error);
    EXPECT_THROW(trigamma(bad), Error);
  }
}

TEST(MultivariatePolygamma, ReducesToScalarSums) {
  EXPECT_NEAR(multivariate_polygamma(0, 1, 1.0), -0.5772156649015329, 1e-13);
  EXPECT_NEAR(multivariate_polygamma(0, 3, 4.0),
              bm::digamma(4.0) + bm::digamma(3.0) + bm::digamma(2.0), 1e-12);
  EXPECT_NEAR(multivariate_polygamma(1, 2, 3.0), bm::trigamma(3.0) + bm::trigamma(2.0), 1e-12);
}

TEST(MultivariatePolygamma, RequiresLooksAboveDimensionMinusOne) {
  EXPECT_THROW(multivariate_polygamma(0, 3, 2.0), Error);
  EXPECT_THROW(multivariate_polygamma(2, 3, 5.0), Error);
}

TEST(LogMultivariateGamma, Definition) {
  const double expected = 3.0 * std::log(std::numbers::pi) + bm::lgamma(4.0) + bm::lgamma(3.0) +
                          bm::lgamma(2.0);
  EXPECT_NEAR(log_multivariate_gamma(3, 4.0), expected, 1e-12);
}

TEST(ChiSquare, TextbookQuantiles) {
  EXPECT_EQ(chi2_sf(0.0, 3.0), 1.0);
  EXPECT_NEAR(chi2_sf(3.841459, 1.0), 0.05, 1e-6);
  EXPECT_NEAR(chi2_sf(16.918978, 9.0), 0.05, 1e-6);
  EXPECT_THROW(chi2_sf(-1.0, 2.0), Error);
  EXPECT_THROW(chi2_sf(1.0, 0.0), Error);
}

TEST(ChiSquare, MatchesBoostIncompleteGammaAcrossTail) {
  for (double df : {1.0, 2.0, 9.0, 10.0, 25.0}) {
    for (double x = 0.05; x < 200.0; x *= 1.3) {
      const double oracle = bm::gamma_q(0.5 * df, 0.5 * x);
      if (oracle < 1e-12) break;
      EXPECT_NEAR(chi2_sf(x, df), oracle, 1e-10 * oracle) << "df=" << df << " x=" << x;
    }
  }
}

TEST(IncompleteGamma, MatchesBoost) {
  for (double a : {0.5, 1.0, 3.7, 12.0, 60.0}) {
    for (double x : {0.01, 0.5, 1.0, 4.0, 13.0, 50.0, 90.0}) {
      EXPECT_NEAR(gamma_p(a, x), bm::gamma_p(a, x), 1e-12) << a << ' ' << x;
      EXPECT_NEAR(gamma_q(a, x), bm::gamma_q(a, x), 1e-12) << a << ' ' << x;
    }
  }
}

TEST(GammaCdf, ScaleAndShape) {
  EXPECT_EQ(gamma_cdf(0.0, 2.0, 1.0), 0.0);
  EXPECT_NEAR(gamma_cdf(1.0, 1.0, 1.0), 1.0 - std::exp(-1.0), 1e-14);
  EXPECT_NEAR(gamma_cdf(3.0, 4.0, 0.5), bm::gamma_p(4.0, 6.0), 1e-13);
}

TEST(NormalCdf, Values) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-12);
}

TEST(KolmogorovTail, CriticalValues) {
  EXPECT_NEAR(kolmogorov_sf(1.3580986), 0.05, 1e-6);
  EXPECT_NEAR(kolmogorov_sf(1.6276236), 0.01, 1e-6);
  EXPECT_EQ(kolmogorov_sf(0.0), 1.0);
  EXPECT_LT(kolmogorov_sf(5.0), 1e-20);
}

TEST(KolmogorovTail, MatchesThetaFunctionForm) {
  // K(x) = sqrt(2 pi)/x sum_k exp(-(2k-1)^2 pi^2 / (8 x^2)) converges fast for small x.
  for (double x = 0.25; x < 1.2; x += 0.05) {
    double sum = 0.0;
    for (int k = 1; k < 50; ++k) {
      const double m = 2.0 * k - 1.0;
      sum += std::exp(-m * m * std::numbers::pi * std::numbers::pi / (8.0 * x * x));
    }
    const double cdf = std::sqrt(2.0 * std::numbers::pi) / x * sum;
    EXPECT_NEAR(kolmogorov_sf(x), 1.0 - cdf, 1e-9) << x;
  }
}
