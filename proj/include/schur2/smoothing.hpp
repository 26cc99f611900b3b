#pragma once

#include "schur2/types.hpp"

#include <vector>

namespace schur2 {

/// Values of a function on a regular grid, multilinearly interpolated inside
/// the grid and extended by a constant outside it.
struct GridFunction {
  RealVector origin;
  RealVector spacing;
  std::vector<Index> dims;
  /// Row-major: the last coordinate varies fastest.
  std::vector<double> values;
  double outside = 0.0;

  Index dimension() const { return origin.size(); }
  /// Throws DimensionError if the description is inconsistent.
  void validate() const;
  double operator()(const RealVector& x) const;
  RealVector node(const std::vector<Index>& index) const;
};

struct SmoothResult {
  double value = 0.0;
  /// |I_n - I_{n/2}| for the final node count.
  double error = 0.0;
  int nodes_per_axis = 0;
  bool converged = false;
};

/// E f(sigma Z + x) by tensor Gauss–Hermite quadrature, doubling the nodes per
/// axis from 32 up to 512 (or until the tensor grid would exceed about 4e6
/// points) until successive estimates agree to max(target_rel |value|, abs_tol).
SmoothResult smooth(const GridFunction& f, double sigma, const RealVector& x, double target_rel = 1e-6,
                    double abs_tol = 0.0);

/// Tabulates g = smooth(f, sigma, .) on the grid of f, for chaining smoothings.
/// Each node is held to target_rel relative to the largest |f| on the grid.
GridFunction smooth_grid(const GridFunction& f, double sigma, double target_rel = 1e-6);

}  // namespace schur2
