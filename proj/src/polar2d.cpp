#include "ray_scan.hpp"
#include "schur2/gauss_measure.hpp"
#include "schur2/quadrature.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>

namespace schur2::detail {

namespace {

constexpr double kRhoMax = 40.0;
constexpr int kRadialGrid = 4096;
constexpr int kAngularPanels = 64;

// Integral of rho * exp(-rho^2 / 2) over [r1, r2], accurate for thin intervals.
double radial_mass(double r1, double r2) {
  const double head = std::exp(-0.5 * r1 * r1);
  if (std::isinf(r2)) return head;
  return head * -std::expm1(-0.5 * (r2 - r1) * (r2 + r1));
}

}  // namespace

LineSection ray_section(const SetSpec& set, const RealVector& shift, double sigma, const RealVector& dir,
                        double rho_max, int grid) {
  RealVector y(shift.size());
  auto member = [&](double rho) {
    y = shift + (sigma * rho) * dir;
    return set.contains(y);
  };

  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(grid) + 8);
  for (int i = 0; i <= grid; ++i) pts.push_back(rho_max * i / grid);
  auto seed = [&](double rho) {
    if (rho > 0.0 && rho < rho_max) pts.push_back(rho);
  };
  for (Index j = 0; j < shift.size(); ++j) {
    if (dir[j] != 0.0) seed(-shift[j] / (sigma * dir[j]));
  }
  seed(-shift.dot(dir) / sigma);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // A chord shorter than one grid step leaves no member on the grid; it shows
  // up instead as a local extremum of the margin, which is refined by golden
  // section and added as a probe when it changes sign.
  auto margin = [&](double rho) {
    y = shift + (sigma * rho) * dir;
    return set.margin(y);
  };
  std::vector<double> m(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) m[i] = margin(pts[i]);
  std::vector<double> extra;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double sgn = m[i] > 0.0 ? 1.0 : -1.0;
    if (sgn * m[i - 1] <= 0.0 || sgn * m[i + 1] <= 0.0) continue;
    if (!(sgn * m[i] <= sgn * m[i - 1] && sgn * m[i] <= sgn * m[i + 1])) continue;
    const auto [arg, val] = boost::math::tools::brent_find_minima(
        [&](double rho) { return sgn * margin(rho); }, pts[i - 1], pts[i + 1], 50);
    if (val <= 0.0) extra.push_back(arg);
  }
  if (!extra.empty()) {
    pts.insert(pts.end(), extra.begin(), extra.end());
    std::sort(pts.begin(), pts.end());
  }

  const double tol = 1e-13 * rho_max;
  auto polish = [&](double in, double out) {
    while (std::abs(in - out) > tol) {
      const double mid = 0.5 * (in + out);
      if (mid == in || mid == out) break;
      (member(mid) ? in : out) = mid;
    }
    return in;
  };

  LineSection out;
  bool prev = member(pts.front());
  double start = pts.front();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const bool cur = member(pts[i]);
    if (cur == prev) continue;
    if (prev) {
      out.push_back({start, polish(pts[i - 1], pts[i])});
    } else {
      start = polish(pts[i], pts[i - 1]);
    }
    prev = cur;
  }
  if (prev) out.push_back({start, kInf});
  return out;
}

MeasureEstimate polar_measure(const SetSpec& set, const RealVector& shift, double sigma, double target_rel) {
  long long probes = 0;
  auto angular = [&](double phi) {
    RealVector dir(2);
    dir << std::cos(phi), std::sin(phi);
    double v = 0.0;
    for (const Interval& iv : ray_section(set, shift, sigma, dir, kRhoMax, kRadialGrid)) {
      v += radial_mass(iv.lo, iv.hi);
    }
    ++probes;
    return v;
  };
  const QuadResult r = integrate_simpson(angular, 0.0, 2.0 * M_PI, kAngularPanels, 0.25 * target_rel, 0.0);
  MeasureEstimate e;
  e.value = r.value / (2.0 * M_PI);
  e.abs_error = r.error / (2.0 * M_PI);
  e.samples_or_nodes = probes;
  e.flagged = !r.converged;
  return e;
}

}  // namespace schur2::detail
