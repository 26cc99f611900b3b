#pragma once

#include "schur2/solvers.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace schur2 {

/// A named table of figure data; cells are numbers, strings or booleans.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::ordered_json>> rows;
};

/// psi(x) = 2x / (2|x| + 3), mapping the extended real line onto [-1, 1].
double psi(double x);

struct FigureOptions {
  SolverOptions solver;
  /// Rays per panel for boundary clouds.
  int rays = 720;
  /// Radius at which unbounded sets are clipped in the boundary clouds.
  double clip = 3.0;
  /// Sweep resolution for the angle sectors.
  int angles = 46;
};

/// Boundary point clouds of nine planar balls: seven (p,q)-balls, one hat
/// ball and one check ball.
Table figure1(const FigureOptions& opt = {});
/// Gaussian measures of B_{2,-0.4}(1) shifted by r (cos t, sin t) for
/// r in {1, 11} and t in {pi/5, pi/20}.
Table figure2(const FigureOptions& opt = {});
/// ARE against p for the diagonal and coordinate directions at k = 2,
/// alpha = 0.05, beta = 0.95, with the plotting coordinates psi(p / 4) and
/// psi(ARE).
Table figure3(const FigureOptions& opt = {});
/// ARE over directions for p = 2.1 and p = 1.9 with the sectors where it
/// exceeds 1.
Table figure4(const FigureOptions& opt = {});

/// The nine panels of figure 1 in display order.
std::vector<SetSpec> figure1_sets();

}  // namespace schur2
