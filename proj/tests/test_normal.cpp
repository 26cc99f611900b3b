#include "schur2/normal.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace schur2 {
namespace {

// Closed-form chi-square survival function: a finite Poisson sum for even k
// and an erfc term plus a finite series for odd k.
double chi2_sf_oracle(double x, int k) {
  if (k % 2 == 0) {
    double term = 1.0;
    double sum = 1.0;
    for (int j = 1; j < k / 2; ++j) {
      term *= 0.5 * x / j;
      sum += term;
    }
    return std::exp(-0.5 * x) * sum;
  }
  const double s = std::sqrt(x);
  double sum = std::erfc(s / std::sqrt(2.0));
  const double density = std::exp(-0.5 * x) / std::sqrt(2.0 * M_PI);
  double term = s;
  for (int j = 1; j <= (k - 1) / 2; ++j) {
    sum += 2.0 * density * term;
    term *= x / (2.0 * j + 1.0);
  }
  return sum;
}

double phi_oracle(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

TEST(Normal, MatchesErfc) {
  for (double x : {-8.0, -3.0, -1.0, 0.0, 0.5, 2.0, 6.0}) {
    EXPECT_NEAR(normal_cdf(x), phi_oracle(x), 1e-15);
    EXPECT_NEAR(normal_sf(x), phi_oracle(-x), 1e-15);
    EXPECT_NEAR(normal_pdf(x), std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI), 1e-16);
  }
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-14);
  EXPECT_NEAR(normal_cdf(normal_quantile(1e-10)), 1e-10, 1e-22);
}

TEST(Normal, IntervalKeepsTailAccuracy) {
  EXPECT_NEAR(normal_interval(-1.0, 1.0), 0.6826894921370859, 1e-15);
  const double far = 0.5 * std::erfc(10.0 / std::sqrt(2.0)) - 0.5 * std::erfc(11.0 / std::sqrt(2.0));
  EXPECT_NEAR(normal_interval(10.0, 11.0) / far, 1.0, 1e-12);
  EXPECT_NEAR(normal_interval(-11.0, -10.0) / far, 1.0, 1e-12);
  EXPECT_EQ(normal_interval(2.0, 1.0), 0.0);
  EXPECT_EQ(normal_interval(-INFINITY, INFINITY), 1.0);
}

TEST(ChiSquare, MatchesClosedForms) {
  for (int k = 1; k <= 8; ++k) {
    for (double x : {0.01, 0.5, 1.0, 3.0, 7.5, 20.0, 60.0}) {
      const double sf = chi2_sf_oracle(x, k);
      EXPECT_NEAR(chi2_sf(x, k) / sf, 1.0, 1e-12) << k << " " << x;
      EXPECT_NEAR(chi2_cdf(x, k), 1.0 - sf, 1e-14) << k << " " << x;
    }
  }
}

TEST(ChiSquare, UpperQuantileInvertsTheSurvivalFunction) {
  for (int k = 1; k <= 6; ++k) {
    for (double a : {0.1, 0.05, 0.01, 1e-6}) {
      EXPECT_NEAR(chi2_sf_oracle(chi2_upper_quantile(a, k), k) / a, 1.0, 1e-11);
    }
  }
  EXPECT_NEAR(chi2_upper_quantile(0.05, 2), 2.0 * std::log(20.0), 1e-13);
}

TEST(NoncentralChiSquare, OneDegreeOfFreedomIsAShiftedNormal) {
  for (double lambda : {0.0, 0.3, 4.0, 25.0}) {
    for (double x : {0.2, 1.0, 9.0, 40.0}) {
      const double m = std::sqrt(lambda);
      const double s = std::sqrt(x);
      const double cdf = phi_oracle(s - m) - phi_oracle(-s - m);
      EXPECT_NEAR(ncx2_cdf(x, 1, lambda), cdf, 1e-13);
      EXPECT_NEAR(ncx2_sf(x, 1, lambda), 1.0 - cdf, 1e-13);
    }
  }
}

TEST(NoncentralChiSquare, PoissonMixtureOfCentralLaws) {
  for (int k : {2, 3, 4}) {
    for (double lambda : {0.5, 6.0}) {
      for (double x : {1.0, 5.0, 15.0}) {
        double sf = 0.0;
        double weight = std::exp(-0.5 * lambda);
        for (int j = 0; j < 200; ++j) {
          sf += weight * chi2_sf_oracle(x, k + 2 * j);
          weight *= 0.5 * lambda / (j + 1);
        }
        EXPECT_NEAR(ncx2_sf(x, k, lambda), sf, 1e-12) << k << " " << lambda << " " << x;
      }
    }
  }
}

}  // namespace
}  // namespace schur2
