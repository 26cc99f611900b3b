#pragma once

#include "schur2/gauss_measure.hpp"
#include "schur2/sets.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace schur2 {

struct VerifyOptions {
  std::uint64_t seed = 0;
  int workers = 0;
  /// Relative accuracy for measure evaluations (0 = engine default).
  double target_rel = 0.0;
};

/// One measured comparison between two shifts.
struct ShiftComparison {
  RealVector theta1;
  RealVector theta2;
  MeasureEstimate m1;
  MeasureEstimate m2;
  bool violation = false;
  bool strict_gap = false;
};

struct Schur2Report {
  SetSpec set;
  SchurCharacter character;
  std::vector<ShiftComparison> pairs;
  int violations = 0;
  bool strict_gap_required = false;
  bool strict_gap_found = false;
  bool pass = false;
};

/// For each pair (theta1, theta2) with theta1^2 majorized by theta2^2 checks
/// that the measure is larger at theta1 for Schur^2-convex sets and smaller for
/// Schur^2-concave ones, with 3-error slack. Non-spherical sets must also show
/// a gap above 5 errors on at least one pair. Throws std::invalid_argument if
/// the set is unclassified or a pair is not ordered.
Schur2Report check_schur2_monotonicity(const SetSpec& set,
                                       const std::vector<std::pair<RealVector, RealVector>>& shift_pairs,
                                       const VerifyOptions& opt = {});

/// Consecutive shift pairs along the T-transform chain from hi^2 down to
/// lo^2, returned as (smaller, larger) in the squared-coordinate order.
/// Requires |hi| = |lo| and hi^2 to strictly majorize lo^2.
std::vector<std::pair<RealVector, RealVector>> schur2_chain_pairs(const RealVector& hi, const RealVector& lo);

struct RotationReport {
  SetSpec set;
  SchurCharacter character;
  double radius = 0.0;
  std::vector<double> angles;
  std::vector<MeasureEstimate> measures;
  int violations = 0;
  bool pass = false;
};

/// k = 2 sweep of the shift r (cos t, sin t) over t_grid in [0, pi/4]. The
/// measure must be nondecreasing in t for Schur^2-convex sets, nonincreasing
/// for Schur^2-concave sets and constant for spherical ones (3-error slack).
RotationReport check_rotation_monotonicity(const SetSpec& set, double radius, const std::vector<double>& t_grid,
                                           const VerifyOptions& opt = {});

struct CounterexampleConfig {
  int k = 2;
  double epsilon = 0.15;

  void validate() const;
  double big_radius() const { return (epsilon * epsilon + k - 1) / (2.0 * epsilon); }
  double small_radius() const { return big_radius() - 1.0 - epsilon; }
};

struct CounterexampleReport {
  CounterexampleConfig config;
  double R = 0.0;
  double r = 0.0;
  /// (1 + r)^2 + k - 1 - R^2: the far vertex of A + x0 sits on the sphere.
  double containment_residual = 0.0;
  /// sqrt(k) + r - R > 0: the far vertex of A + x1 lies outside the ball.
  double vertex_excess = 0.0;
  double p0 = 0.0;
  double p0_exact = 0.0;
  double p0_error = 0.0;
  double p1 = 0.0;
  double p1_error = 0.0;
  std::string p1_method;
  long long samples = 0;
  bool x_order_holds = false;
  bool containment_holds = false;
  bool gap_holds = false;
  bool pass = false;
};

/// X uniform on the Euclidean ball B(R), A = [-1, 1]^k; compares
/// P(X in A + r e_1) with P(X in A + (r / sqrt k) 1). Exact section integrals
/// at k = 2. Otherwise P(x0) is sampled on the ball and P(x1) from the share
/// of A + x1 inside it.
CounterexampleReport run_counterexample(const CounterexampleConfig& cfg, long long samples = 1 << 22,
                                        const VerifyOptions& opt = {});

enum class Population { Gaussian, UniformCube };

const char* to_string(Population p);

struct EmpiricalDesign {
  int n = 400;
  Index k = 2;
  double p = 2.0;
  double c = 1.0;
  Population population = Population::Gaussian;
  /// Population mean; the covariance at theta = 0 is the identity.
  RealVector theta;
  int replications = 10000;
  std::uint64_t seed = 0;
  int workers = 0;
};

struct EmpiricalPower {
  double rate = 0.0;
  double std_error = 0.0;
  int replications = 0;
};

/// Rejection frequency of sqrt(n) <mean of n draws>_p > c.
EmpiricalPower empirical_power(const EmpiricalDesign& d);

}  // namespace schur2
