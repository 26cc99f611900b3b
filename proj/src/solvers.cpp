#include "schur2/solvers.hpp"

#include "schur2/means.hpp"
#include "schur2/normal.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <stdexcept>

namespace schur2 {

void TestDesign::validate() const {
  if (!(alpha > 0.0 && alpha < beta && beta < 1.0)) {
    throw std::invalid_argument("TestDesign: need 0 < alpha < beta < 1");
  }
  if (std::isnan(p)) throw std::invalid_argument("TestDesign: p is NaN");
  if (k < 1 || u.size() != k) throw DimensionError("TestDesign: direction must have k coordinates");
  if (std::abs(p_mean(u, 2.0) - 1.0) > 1e-12) throw std::invalid_argument("TestDesign: direction must have <u>_2 = 1");
}

RealVector normalize_direction(const RealVector& u) {
  const double m = p_mean(u, 2.0);
  if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument("normalize_direction: zero or non-finite direction");
  return u / m;
}

MeasureEstimate power(double p, double c, const RealVector& s, const SolverOptions& opt) {
  GaussianShiftQuery q{SetSpec::p_ball(p, c).complement(), s};
  q.seed = opt.seed;
  q.workers = opt.workers;
  q.method = choose_method(q.set, s, 1.0);
  if (is_monte_carlo(*q.method)) {
    // Plain sampling with a fixed sample set keeps every power curve monotone
    // in c and comparable across shifts.
    q.method = Method::McPlain;
    q.mc_samples = opt.mc_samples;
  } else {
    q.target_rel_error = opt.quadrature_target;
  }
  return measure(q);
}

namespace {

double c_max_ball(Index k, double alpha) {
  // (2 Phi(c) - 1)^k = 1 - alpha
  const double miss = -std::expm1(std::log1p(-alpha) / static_cast<double>(k));
  return -normal_quantile(0.5 * miss);
}

double c_min_ball(Index k, double alpha) {
  // P(|Z| > c)^k = alpha
  return -normal_quantile(0.5 * std::pow(alpha, 1.0 / static_cast<double>(k)));
}

std::optional<double> closed_form_critical(Index k, double p, double alpha) {
  if (k == 1) return normal_quantile(1.0 - 0.5 * alpha);
  if (p == 2.0) return std::sqrt(chi2_upper_quantile(alpha, static_cast<double>(k)) / static_cast<double>(k));
  if (p == kInf) return c_max_ball(k, alpha);
  if (p == -kInf) return c_min_ball(k, alpha);
  if (p == 1.0 && k == 2) return c_max_ball(k, alpha) / std::sqrt(2.0);
  return std::nullopt;
}

}  // namespace

CriticalValue critical_value_detailed(Index k, double p, double alpha, const SolverOptions& opt) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("critical_value: alpha must lie in (0, 1)");
  if (k < 1) throw DimensionError("critical_value: k must be positive");
  if (std::isnan(p)) throw std::invalid_argument("critical_value: p is NaN");
  const RealVector origin = RealVector::Zero(k);

  CriticalValue out;
  if (const auto c = closed_form_critical(k, p, alpha)) {
    out.c = *c;
    out.closed_form = true;
  } else {
    // <z>_{-inf} <= <z>_p <= <z>_inf brackets the root.
    double lo = c_min_ball(k, alpha);
    double hi = c_max_ball(k, alpha);
    auto excess = [&](double c) { return power(p, c, origin, opt).value - alpha; };
    const Method m = choose_method(SetSpec::p_ball(p, 1.0).complement(), origin, 1.0);
    if (is_monte_carlo(m)) {
      while (hi - lo > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? lo : hi) = mid;
      }
      out.c = 0.5 * (lo + hi);
    } else {
      double f_lo = excess(lo);
      double f_hi = excess(hi);
      if (f_lo <= 0.0) {
        out.c = lo;
      } else if (f_hi >= 0.0) {
        out.c = hi;
      } else {
        std::uintmax_t iters = 200;
        const auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-13 * std::max(std::abs(a), 1.0); };
        const auto [a, b] = boost::math::tools::toms748_solve(excess, lo, hi, f_lo, f_hi, tol, iters);
        out.c = 0.5 * (a + b);
      }
    }
  }
  const MeasureEstimate at = power(p, out.c, origin, opt);
  out.achieved_alpha = at.value;
  out.alpha_error = at.abs_error;
  out.method = at.method;
  return out;
}

double critical_value(Index k, double p, double alpha, const SolverOptions& opt) {
  return critical_value_detailed(k, p, alpha, opt).c;
}

ShiftSolution shift_solution(const TestDesign& d, const SolverOptions& opt) {
  d.validate();
  ShiftSolution out;
  out.critical = critical_value(d.k, d.p, d.alpha, opt);
  auto curve = [&](double t) { return power(d.p, out.critical, t * d.u, opt); };
  auto excess = [&](double t) { return curve(t).value - d.beta; };

  double lo = 0.0;
  double hi = 1.0;
  double f_lo = curve(lo).value - d.beta;
  MeasureEstimate at_hi = curve(hi);
  out.method = at_hi.method;
  while (at_hi.value < d.beta && hi < kShiftCap) {
    lo = hi;
    f_lo = at_hi.value - d.beta;
    hi = std::min(2.0 * hi, kShiftCap);
    at_hi = curve(hi);
  }
  if (at_hi.value < d.beta) {
    const double half = curve(0.5 * kShiftCap).value;
    const double slope = (at_hi.value - half) / (0.5 * kShiftCap);
    // Plateaus for p < 0 are approached like 1/t, so the slope at the cap is
    // far from zero; extrapolating that rate gives the limit 2 P(T) - P(T/2).
    const double limit = 2.0 * at_hi.value - half;
    out.exists = false;
    out.inconclusive = slope >= 1e-12 && limit >= d.beta;
    out.achieved_power = at_hi.value;
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    return out;
  }
  const double f_hi = at_hi.value - d.beta;

  auto width_ok = [](double a, double b) { return std::abs(b - a) <= 1e-7 * std::max(1.0, std::min(a, b)); };
  if (is_monte_carlo(out.method)) {
    while (!width_ok(lo, hi)) {
      const double mid = 0.5 * (lo + hi);
      (excess(mid) < 0.0 ? lo : hi) = mid;
    }
  } else if (f_hi == 0.0) {
    lo = hi;
  } else {
    std::uintmax_t iters = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(excess, lo, hi, f_lo, f_hi, width_ok, iters);
    lo = a;
    hi = b;
  }
  out.exists = true;
  out.t = 0.5 * (lo + hi);
  if (!(lo < out.t && out.t < hi)) {
    // An exact zero collapses the bracket; report the tolerance around it.
    const double r = 0.25e-7 * std::max(1.0, out.t);
    lo = out.t - r;
    hi = out.t + r;
  }
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.norm = out.t * d.u.norm();

  const MeasureEstimate at_t = curve(out.t);
  out.achieved_power = at_t.value;
  const double h = 1e-4 * std::max(1.0, out.t);
  const double slope = (curve(out.t + h).value - curve(std::max(out.t - h, 0.0)).value) /
                       (out.t + h - std::max(out.t - h, 0.0));
  out.solver_error = 0.5 * (hi - lo) + (slope > 0.0 ? at_t.abs_error / slope : kInf);
  return out;
}

}  // namespace schur2
