#include "schur2/gauss_measure.hpp"
#include "schur2/normal.hpp"
#include "schur2/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace schur2::detail {

namespace {

// Integration half-span around each shift coordinate, in standard deviations.
constexpr double kSpan = 40.0;
constexpr long long kHermiteBudget = 4'000'000;
constexpr Index kNestedMaxDim = 4;

struct Slicer {
  SetSpec ball;
  double p;
  double eps;
  Index k;
  const RealVector& shift;
  double sigma;
  double outer_rel;
  double inner_rel;
  RealVector y;
  long long evaluations = 0;

  // Mass of the last coordinate over the section through y.
  double last_axis_mass() {
    ++evaluations;
    const Index last = k - 1;
    double v = 0.0;
    for (const Interval& iv : line_interval(ball, y, last)) {
      v += normal_interval((iv.lo - shift[last]) / sigma, (iv.hi - shift[last]) / sigma);
    }
    return v;
  }

  // Largest |y_d| compatible with the coordinates fixed so far; negative if
  // none is, infinite for the unbounded balls.
  double support(Index d) const {
    if (p <= 0.0) return kInf;
    double sum = 0.0;
    for (Index j = 0; j < d; ++j) sum += std::pow(std::abs(y[j]) / eps, p);
    const double budget = static_cast<double>(k) - sum;
    return budget < 0.0 ? -1.0 : eps * std::pow(budget, 1.0 / p);
  }

  QuadResult level(Index d) {
    if (d == k - 1) return {last_axis_mass(), 0.0, 1, true};
    const double c = shift[d];
    const double w = support(d);
    const double lo = std::max(c - kSpan * sigma, -w);
    const double hi = std::min(c + kSpan * sigma, w);
    if (!(lo < hi)) return {0.0, 0.0, 0, true};
    const double rel = d == 0 ? outer_rel : inner_rel;
    auto f = [&](double t) {
      y[d] = t;
      return normal_pdf((t - c) / sigma) / sigma * level(d + 1).value;
    };
    if (!std::isfinite(w)) return integrate_adaptive(f, lo, hi, rel, 0.0, {0.0, c});
    // Sections shrink like a root of the distance to +-w; t = w sin(u)
    // flattens that edge.
    auto g = [&](double u) { return w * std::cos(u) * f(w * std::sin(u)); };
    const auto angle = [w](double t) { return std::asin(std::clamp(t / w, -1.0, 1.0)); };
    return integrate_adaptive(g, angle(lo), angle(hi), rel, 0.0, {0.0, angle(c)});
  }

  // Tensor Gauss–Hermite over the first k - 1 coordinates with n nodes per axis.
  double hermite(int n) {
    const HermiteRule& rule = gauss_hermite(n);
    std::vector<int> idx(static_cast<std::size_t>(k - 1), 0);
    double total = 0.0;
    for (;;) {
      double w = 1.0;
      for (Index j = 0; j < k - 1; ++j) {
        y[j] = shift[j] + sigma * rule.nodes[idx[j]];
        w *= rule.weights[idx[j]];
      }
      if (w > 0.0) total += w * last_axis_mass();
      Index j = 0;
      while (j < k - 1 && ++idx[j] == n) idx[j++] = 0;
      if (j == k - 1) break;
    }
    return total;
  }
};

}  // namespace

MeasureEstimate slice_measure(const SetSpec& set, const RealVector& shift, double sigma, double target_rel) {
  const auto& b = std::get<PBall>(set.shape());
  const Index k = shift.size();
  Slicer s{set.base(), b.p, b.eps, k, shift, sigma, 0.5 * target_rel, 0.25 * target_rel, RealVector::Zero(k)};

  double inside = 0.0;
  double error = 0.0;
  bool converged = true;
  if (k <= kNestedMaxDim) {
    const QuadResult r = s.level(0);
    inside = r.value;
    error = r.error + (k > 2 ? s.inner_rel * r.value : 0.0);
    converged = r.converged;
  } else {
    double prev = -1.0;
    converged = false;
    for (int n = 4; std::pow(static_cast<double>(n), static_cast<double>(k - 1)) <= kHermiteBudget; n *= 2) {
      inside = s.hermite(n);
      if (prev >= 0.0) {
        error = std::abs(inside - prev);
        if (error <= target_rel * inside) {
          converged = true;
          break;
        }
      }
      prev = inside;
    }
    if (!converged && error == 0.0) error = inside;
  }

  MeasureEstimate e;
  e.value = set.is_complement() ? 1.0 - inside : inside;
  e.abs_error = error;
  e.samples_or_nodes = s.evaluations;
  e.flagged = !converged;
  return e;
}

}  // namespace schur2::detail
