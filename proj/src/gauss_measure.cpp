#include "schur2/gauss_measure.hpp"

#include "schur2/normal.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace schur2 {

const char* to_string(Method m) {
  switch (m) {
    case Method::Product1D: return "PRODUCT_1D";
    case Method::ChiSquare: return "CHI_SQUARE";
    case Method::SliceQuad: return "SLICE_QUAD";
    case Method::Polar2D: return "POLAR2D";
    case Method::McPlain: return "MC_PLAIN";
    case Method::McImportance: return "MC_IMPORTANCE";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  for (Method m : {Method::Product1D, Method::ChiSquare, Method::SliceQuad, Method::Polar2D, Method::McPlain,
                   Method::McImportance}) {
    if (text == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(text) + "'");
}

RealVector rotate2(const RealVector& x, double t) {
  if (x.size() != 2) throw DimensionError("rotate2: requires k = 2");
  const double c = std::cos(t);
  const double s = std::sin(t);
  RealVector y(2);
  y << x[0] * c - x[1] * s, x[0] * s + x[1] * c;
  return y;
}

bool method_supports(Method m, const SetSpec& set, Index k) {
  const auto* ball = std::get_if<PBall>(&set.shape());
  switch (m) {
    case Method::Product1D:
      return k == 1 || std::holds_alternative<Cube>(set.shape()) ||
             (ball && (std::isinf(ball->p) || (ball->p == 1.0 && k == 2)));
    case Method::ChiSquare:
      return ball && ball->p == 2.0;
    case Method::SliceQuad:
      // Balls with p < 1 have cusps or unbounded arms; nested quadrature
      // stays affordable for them only up to k = 3.
      return k >= 2 && ball && std::isfinite(ball->p) && (k <= 3 || ball->p >= 1.0);
    case Method::Polar2D:
      return k == 2;
    case Method::McPlain:
    case Method::McImportance:
      return true;
  }
  return false;
}

namespace {

constexpr double kImportanceThreshold = 1e-6;

}  // namespace

Method choose_method(const SetSpec& set, const RealVector& shift, double sigma) {
  const Index k = shift.size();
  for (Method m : {Method::Product1D, Method::ChiSquare, Method::SliceQuad, Method::Polar2D}) {
    if (method_supports(m, set, k)) return m;
  }
  const auto near = detail::nearest_point(set, shift, sigma);
  const double bound = chi2_sf(near.distance * near.distance, static_cast<double>(k));
  return bound < kImportanceThreshold ? Method::McImportance : Method::McPlain;
}

MeasureEstimate measure(const GaussianShiftQuery& query) {
  const auto start = std::chrono::steady_clock::now();
  const Index k = query.shift.size();
  if (k < 1) throw DimensionError("measure: empty shift");
  if (!query.shift.allFinite()) throw std::invalid_argument("measure: shift must be finite");
  if (!(query.sigma > 0.0) || std::isinf(query.sigma)) throw std::invalid_argument("measure: sigma must be positive");
  if (query.target_rel_error < 0.0) throw std::invalid_argument("measure: negative target");

  const Method method = query.method ? *query.method : choose_method(query.set, query.shift, query.sigma);
  if (!method_supports(method, query.set, k)) {
    throw std::invalid_argument(std::string("measure: method ") + to_string(method) + " cannot evaluate " +
                                to_string(query.set) + " in dimension " + std::to_string(k));
  }
  const double target = query.target_rel_error > 0.0
                            ? query.target_rel_error
                            : (is_monte_carlo(method) ? kDefaultMonteCarloTarget : kDefaultQuadratureTarget);

  MeasureEstimate est;
  switch (method) {
    case Method::Product1D: est = detail::product_measure(query.set, query.shift, query.sigma); break;
    case Method::ChiSquare: est = detail::chi_square_measure(query.set, query.shift, query.sigma); break;
    case Method::SliceQuad: est = detail::slice_measure(query.set, query.shift, query.sigma, target); break;
    case Method::Polar2D: est = detail::polar_measure(query.set, query.shift, query.sigma, target); break;
    case Method::McPlain: est = detail::monte_carlo_measure(query, false, target); break;
    case Method::McImportance: est = detail::monte_carlo_measure(query, true, target); break;
  }
  est.method = method;
  est.value = std::clamp(est.value, 0.0, 1.0);
  est.abs_error = std::max(est.abs_error, 0.0);
  est.rel_error = est.abs_error / std::max(est.value, 1e-300);
  if (!is_monte_carlo(method) && est.rel_error > target) est.flagged = true;
  est.seed = query.seed;
  est.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return est;
}

namespace detail {

namespace {

// Relative accuracy credited to closed-form evaluations.
constexpr double kClosedFormRel = 1e-13;

MeasureEstimate closed_form(double value) {
  MeasureEstimate e;
  e.value = value;
  e.abs_error = kClosedFormRel * value;
  return e;
}

double interval_mass(const LineSection& section, double center, double sigma) {
  double v = 0.0;
  for (const Interval& iv : section) v += normal_interval((iv.lo - center) / sigma, (iv.hi - center) / sigma);
  return v;
}

// Probability that one coordinate falls in [-a, a] and its complement, each
// computed without cancellation.
struct Slab {
  double in;
  double out;
};

Slab slab(double a, double center, double sigma) {
  const double lo = (-a - center) / sigma;
  const double hi = (a - center) / sigma;
  return {normal_interval(lo, hi), normal_cdf(lo) + normal_sf(hi)};
}

// inside = prod(in_j), outside = 1 - prod(1 - out_j).
std::pair<double, double> box_probabilities(const RealVector& centers, double a, double sigma) {
  double inside = 1.0;
  double log_inside = 0.0;
  for (Index j = 0; j < centers.size(); ++j) {
    const Slab s = slab(a, centers[j], sigma);
    inside *= s.in;
    log_inside += std::log1p(-std::min(s.out, 1.0));
  }
  return {inside, -std::expm1(log_inside)};
}

}  // namespace

MeasureEstimate product_measure(const SetSpec& set, const RealVector& shift, double sigma) {
  const Index k = shift.size();
  if (k == 1) {
    return closed_form(interval_mass(line_interval(set, RealVector::Zero(1), 0), shift[0], sigma));
  }
  double a = 0.0;
  RealVector centers = shift;
  bool min_ball = false;
  if (const auto* cube = std::get_if<Cube>(&set.shape())) {
    a = cube->a;
  } else {
    const auto& ball = std::get<PBall>(set.shape());
    a = ball.eps;
    if (ball.p == -kInf) {
      min_ball = true;
    } else if (ball.p == 1.0) {
      // |y1| + |y2| <= 2 eps is a square of half-width sqrt(2) eps after rotating
      // by pi/4; the standard Gaussian is rotation invariant.
      centers = rotate2(shift, M_PI / 4.0);
      a = std::sqrt(2.0) * ball.eps;
    }
  }
  if (min_ball) {
    // min_j |y_j| <= eps fails only if every coordinate is outside the slab.
    double all_out = 1.0;
    double log_all_out = 0.0;
    for (Index j = 0; j < k; ++j) {
      const Slab s = slab(a, centers[j], sigma);
      all_out *= s.out;
      log_all_out += std::log(s.out);
    }
    const double in = -std::expm1(log_all_out);
    return closed_form(set.is_complement() ? all_out : in);
  }
  const auto [inside, outside] = box_probabilities(centers, a, sigma);
  return closed_form(set.is_complement() ? outside : inside);
}

MeasureEstimate chi_square_measure(const SetSpec& set, const RealVector& shift, double sigma) {
  const auto& ball = std::get<PBall>(set.shape());
  const double k = static_cast<double>(shift.size());
  const double x = k * ball.eps * ball.eps / (sigma * sigma);
  const double lambda = shift.squaredNorm() / (sigma * sigma);
  MeasureEstimate e = closed_form(set.is_complement() ? ncx2_sf(x, k, lambda) : ncx2_cdf(x, k, lambda));
  e.abs_error = 1e-12 * e.value;
  return e;
}

}  // namespace detail

}  // namespace schur2
