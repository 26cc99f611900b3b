#pragma once

namespace schur2 {

/// Standard normal distribution and the chi-square laws built on it.
double normal_pdf(double x);
double normal_cdf(double x);
double normal_sf(double x);
double normal_quantile(double p);

/// P(a <= Z <= b), evaluated on whichever tail keeps full relative accuracy.
double normal_interval(double a, double b);

double chi2_cdf(double x, double k);
double chi2_sf(double x, double k);
/// x with P(chi2_k > x) = alpha.
double chi2_upper_quantile(double alpha, double k);

/// Noncentral chi-square with k degrees of freedom and noncentrality lambda.
double ncx2_cdf(double x, double k, double lambda);
double ncx2_sf(double x, double k, double lambda);

}  // namespace schur2
