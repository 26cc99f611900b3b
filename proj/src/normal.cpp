#include "schur2/normal.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <limits>

namespace schur2 {

namespace bm = boost::math;

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) {
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  return 0.5 * bm::erfc(-x * kInvSqrt2);
}

double normal_sf(double x) {
  if (std::isinf(x)) return x > 0 ? 0.0 : 1.0;
  return 0.5 * bm::erfc(x * kInvSqrt2);
}

double normal_quantile(double p) {
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  return bm::quantile(bm::normal_distribution<double>(), p);
}

double normal_interval(double a, double b) {
  if (!(a < b)) return 0.0;
  if (a >= 0.0) return normal_sf(a) - normal_sf(b);
  if (b <= 0.0) return normal_cdf(b) - normal_cdf(a);
  return 1.0 - normal_cdf(a) - normal_sf(b);
}

double chi2_cdf(double x, double k) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return bm::cdf(bm::chi_squared_distribution<double>(k), x);
}

double chi2_sf(double x, double k) {
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return bm::cdf(bm::complement(bm::chi_squared_distribution<double>(k), x));
}

double chi2_upper_quantile(double alpha, double k) {
  return bm::quantile(bm::complement(bm::chi_squared_distribution<double>(k), alpha));
}

double ncx2_cdf(double x, double k, double lambda) {
  if (lambda <= 0.0) return chi2_cdf(x, k);
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return bm::cdf(bm::non_central_chi_squared_distribution<double>(k, lambda), x);
}

double ncx2_sf(double x, double k, double lambda) {
  if (lambda <= 0.0) return chi2_sf(x, k);
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return bm::cdf(bm::complement(bm::non_central_chi_squared_distribution<double>(k, lambda), x));
}

}  // namespace schur2
