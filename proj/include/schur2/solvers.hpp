#pragma once

#include "schur2/gauss_measure.hpp"
#include "schur2/types.hpp"

#include <cstdint>

namespace schur2 {

/// One p-mean test comparison: dimension, p, size alpha, target power beta and
/// direction u with <u>_2 = 1.
struct TestDesign {
  Index k = 2;
  double p = 2.0;
  double alpha = 0.05;
  double beta = 0.95;
  RealVector u;

  /// Throws std::invalid_argument unless 0 < alpha < beta < 1, u has k
  /// coordinates and <u>_2 = 1 within 1e-12.
  void validate() const;
};

/// u scaled so that its 2-mean is 1 (i.e. |u| = sqrt(k)).
RealVector normalize_direction(const RealVector& u);

struct SolverOptions {
  std::uint64_t seed = 0;
  int workers = 0;
  /// Relative accuracy requested from quadrature-backed measures.
  double quadrature_target = 1e-9;
  /// Samples per power evaluation on Monte Carlo paths (common random numbers).
  long long mc_samples = 1LL << 20;
};

/// Rejection probability P(<Z + s>_p > c).
MeasureEstimate power(double p, double c, const RealVector& s, const SolverOptions& opt = {});

struct CriticalValue {
  double c = 0.0;
  double achieved_alpha = 0.0;
  /// Bound on |achieved_alpha - alpha| implied by the measure error.
  double alpha_error = 0.0;
  bool closed_form = false;
  Method method = Method::Product1D;
};

/// The root c of P(<Z>_p > c) = alpha for Z ~ N(0, I_k).
CriticalValue critical_value_detailed(Index k, double p, double alpha, const SolverOptions& opt = {});
double critical_value(Index k, double p, double alpha, const SolverOptions& opt = {});

struct ShiftSolution {
  bool exists = false;
  /// s = t u.
  double t = 0.0;
  double norm = 0.0;
  double achieved_power = 0.0;
  /// Uncertainty in t from the bracket width and the power error.
  double solver_error = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double critical = 0.0;
  Method method = Method::Product1D;
  /// Power at the search cap was below beta, but the curve had neither
  /// flattened nor was it extrapolating to a limit below beta.
  bool inconclusive = false;
};

inline constexpr double kShiftCap = 1e3;

/// The t > 0 with P(<Z + t u>_p > c_{p,alpha}) = beta, when it exists within
/// the search cap.
ShiftSolution shift_solution(const TestDesign& d, const SolverOptions& opt = {});

}  // namespace schur2
