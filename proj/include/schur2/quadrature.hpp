#pragma once

#include <functional>
#include <vector>

namespace schur2 {

/// Gauss–Hermite rule for the standard normal weight: E f(Z) ~ sum_i w_i f(x_i).
struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule (Golub–Welsch); rules are cached and shared across threads.
const HermiteRule& gauss_hermite(int n);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss–Kronrod integration of f over [a, b]
/// (finite). `breaks` are interior points where f may have kinks; the initial
/// partition splits there. Stops when the summed error estimate is below
/// max(abs_tol, rel_tol * |value|) or `max_segments` is reached.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_tol, std::vector<double> breaks = {},
                              int max_segments = 4000);

/// Adaptive Simpson on [a, b] starting from `panels` equal panels. Returns the
/// integral with a Richardson error estimate.
QuadResult integrate_simpson(const std::function<double(double)>& f, double a, double b,
                             int panels, double rel_tol, double abs_tol, int max_depth = 30);

}  // namespace schur2
