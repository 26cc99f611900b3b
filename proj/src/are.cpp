#include "schur2/are.hpp"

#include "schur2/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace schur2 {

namespace {

double relative(const ShiftSolution& s) { return s.t > 0.0 ? s.solver_error / s.t : kInf; }

}  // namespace

AreResult are(const TestDesign& d, const SolverOptions& opt) {
  d.validate();
  AreResult out;
  out.design = d;
  TestDesign lrt = d;
  lrt.p = 2.0;
  const ShiftSolution s2 = shift_solution(lrt, opt);
  out.s2_norm = s2.norm;
  if (d.p == 2.0) {
    out.are = 1.0;
    out.sp_norm = s2.norm;
    return out;
  }
  const ShiftSolution sp = shift_solution(d, opt);
  if (!sp.exists) return out;
  out.sp_norm = sp.norm;
  const double ratio = s2.t / sp.t;
  out.are = ratio * ratio;
  out.error = 2.0 * (relative(s2) + relative(sp));
  return out;
}

namespace {

TestDesign design(Index k, double p, double alpha, double beta, RealVector u) {
  return {k, p, alpha, beta, normalize_direction(u)};
}

}  // namespace

AreExtremes are_extremes(Index k, double p, double alpha, double beta, const SolverOptions& opt) {
  const AreResult diag = are(design(k, p, alpha, beta, RealVector::Ones(k)), opt);
  const AreResult coord = are(design(k, p, alpha, beta, RealVector::Unit(k, 0)), opt);
  return {diag, coord};
}

std::vector<SweepPoint> are_direction_sweep(double p, double alpha, double beta, int n_angles,
                                            const SolverOptions& opt) {
  if (n_angles < 2) throw std::invalid_argument("are_direction_sweep: need at least two angles");
  // Each point is an independent solve; the inner measures stay single-threaded.
  SolverOptions inner = opt;
  inner.workers = 1;
  const auto results = parallel_map(static_cast<std::size_t>(n_angles), resolve_workers(opt.workers),
                                    [&](std::size_t i) {
                                      const double t = 0.25 * M_PI * static_cast<double>(i) / (n_angles - 1);
                                      RealVector u(2);
                                      u << std::cos(t), std::sin(t);
                                      return SweepPoint{t, are(design(2, p, alpha, beta, u), inner)};
                                    });
  return results;
}

std::vector<AreResult> are_limit_trend(Index k, double p, const RealVector& u, const std::vector<double>& alpha_grid,
                                       const std::vector<double>& beta_grid, const SolverOptions& opt) {
  if (alpha_grid.size() != beta_grid.size()) throw std::invalid_argument("are_limit_trend: grids differ in length");
  std::vector<AreResult> out;
  out.reserve(alpha_grid.size());
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    out.push_back(are(design(k, p, alpha_grid[i], beta_grid[i], u), opt));
  }
  return out;
}

}  // namespace schur2
