#include <gtest/gtest.h>

#include <cmath>

#include "polchange/linalg.hpp"
#include "polchange/special.hpp"
#include "testing.hpp"

using namespace polchange;

TEST(MathcoreProps, LogdetOfInverseCancels) {
  Rng rng(RngSeed{101});
  for (std::size_t p = 1; p <= 5; ++p) {
    for (int trial = 0; trial < 50; ++trial) {
      const HermitianMatrix a = testutil::random_pd(p, rng, std::exp(4.0 * rng.normal()));
      EXPECT_NEAR(logdet(a) + logdet(inverse(a)), 0.0, 1e-9) << "p=" << p;
    }
  }
}

TEST(MathcoreProps, TraceOfInverseProductIsDimension) {
  Rng rng(RngSeed{102});
  for (std::size_t p = 1; p <= 5; ++p) {
    for (int trial = 0; trial < 50; ++trial) {
      const HermitianMatrix a = testutil::random_pd(p, rng);
      EXPECT_NEAR(trace_product(inverse(a), a), static_cast<double>(p), 1e-9);
    }
  }
}

TEST(MathcoreProps, VecInnerProductIsFrobeniusNorm) {
  Rng rng(RngSeed{103});
  for (std::size_t p = 1; p <= 5; ++p) {
    for (int trial = 0; trial < 50; ++trial) {
      const HermitianMatrix a = testutil::random_hermitian(p, rng);
      const ComplexVector v = vec(a.matrix());
      const Complex ip = dot(v, v);
      double frob = 0.0;
      for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) frob += std::norm(a(i, j));
      }
      EXPECT_NEAR(ip.imag(), 0.0, 1e-10);
      EXPECT_NEAR(ip.real(), frob, 1e-10 * std::max(1.0, frob));
    }
  }
}

TEST(MathcoreProps, ChiSquareTailMonotoneAndComplementary) {
  for (double df : {1.0, 2.0, 3.0, 9.0, 10.0, 30.0}) {
    double previous = 1.0;
    for (double x = 0.01; x < 150.0; x *= 1.1) {
      const double sf = chi2_sf(x, df);
      if (sf > 1e-300 && sf < 1.0) {
        EXPECT_LT(sf, previous) << df << ' ' << x;
      } else {
        EXPECT_LE(sf, previous) << df << ' ' << x;
      }
      previous = sf;
      EXPECT_NEAR(sf + chi2_cdf(x, df), 1.0, 1e-12) << df << ' ' << x;
    }
  }
}

TEST(MathcoreProps, DigammaRecurrence) {
  for (double x = 0.5; x <= 20.5; x += 1.0) {
    EXPECT_NEAR(digamma(x + 1.0), digamma(x) + 1.0 / x, 1e-12) << x;
  }
}

TEST(MathcoreProps, CholeskyReproducesRandomMatrices) {
  Rng rng(RngSeed{104});
  for (std::size_t p = 1; p <= 5; ++p) {
    for (int trial = 0; trial < 30; ++trial) {
      const HermitianMatrix a = testutil::random_pd(p, rng);
      const ComplexMatrix g = cholesky(a);
      EXPECT_LT(max_abs_diff(g * g.adjoint(), a.matrix()), 1e-12 * a.matrix().max_abs());
    }
  }
}
