#pragma once

#include "schur2/solvers.hpp"

#include <optional>
#include <vector>

namespace schur2 {

/// Pitman efficiency of the p-mean test relative to the 2-mean test.
struct AreResult {
  /// |s_2|^2 / |s_p|^2, or 0 when s_p does not exist.
  double are = 0.0;
  double s2_norm = 0.0;
  std::optional<double> sp_norm;
  TestDesign design;
  /// Propagated relative error of `are`.
  double error = 0.0;
  double abs_error() const { return error * are; }
};

AreResult are(const TestDesign& d, const SolverOptions& opt = {});

struct AreExtremes {
  AreResult diagonal;    // u = 1
  AreResult coordinate;  // u = sqrt(k) e_1
};

AreExtremes are_extremes(Index k, double p, double alpha, double beta, const SolverOptions& opt = {});

struct SweepPoint {
  double angle;
  AreResult result;
};

/// k = 2 directions u = sqrt(2) (cos t, sin t) for n_angles values of t
/// evenly spaced in [0, pi/4].
std::vector<SweepPoint> are_direction_sweep(double p, double alpha, double beta, int n_angles = 11,
                                            const SolverOptions& opt = {});

/// ARE at the paired grid points (alpha_grid[i], beta_grid[i]).
std::vector<AreResult> are_limit_trend(Index k, double p, const RealVector& u, const std::vector<double>& alpha_grid,
                                       const std::vector<double>& beta_grid, const SolverOptions& opt = {});

}  // namespace schur2
