#pragma once

#include "schur2/sets.hpp"
#include "schur2/types.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace schur2 {

enum class Method { Product1D, ChiSquare, SliceQuad, Polar2D, McPlain, McImportance };

const char* to_string(Method m);
Method parse_method(std::string_view text);

inline bool is_monte_carlo(Method m) { return m == Method::McPlain || m == Method::McImportance; }

/// A probability with its error and provenance.
struct MeasureEstimate {
  double value = 0.0;
  /// Error bound for quadrature paths; about two standard errors for Monte Carlo.
  double abs_error = 0.0;
  double rel_error = 0.0;
  Method method = Method::Product1D;
  long long samples_or_nodes = 0;
  /// The requested accuracy was not reached within the budget.
  bool flagged = false;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
};

/// P(Z in A + theta) for Z ~ N(0, sigma^2 I_k).
struct GaussianShiftQuery {
  SetSpec set;
  RealVector shift;
  double sigma = 1.0;
  /// 0 selects the default for the chosen method (1e-4 quadrature, 1e-2 Monte Carlo).
  double target_rel_error = 0.0;
  std::uint64_t seed = 0;
  /// Worker threads; 0 defers to resolve_workers.
  int workers = 0;
  /// Force a method instead of the automatic dispatch. Throws if the method
  /// cannot handle the set.
  std::optional<Method> method;
  /// Monte Carlo: fixed sample count (0 = run until the target is met).
  long long mc_samples = 0;
  long long mc_max_samples = 1LL << 24;
};

inline constexpr double kDefaultQuadratureTarget = 1e-4;
inline constexpr double kDefaultMonteCarloTarget = 1e-2;

MeasureEstimate measure(const GaussianShiftQuery& query);

/// Method the automatic dispatch would choose.
Method choose_method(const SetSpec& set, const RealVector& shift, double sigma);

/// Whether `m` can evaluate this set in dimension k.
bool method_supports(Method m, const SetSpec& set, Index k);

/// Rotation of a planar vector through angle t.
RealVector rotate2(const RealVector& x, double t);

namespace detail {

// Individual engines; each returns the measure of the set as given
// (complement handling included) in standardized coordinates
// y = shift + sigma * z.
MeasureEstimate product_measure(const SetSpec& set, const RealVector& shift, double sigma);
MeasureEstimate chi_square_measure(const SetSpec& set, const RealVector& shift, double sigma);
MeasureEstimate slice_measure(const SetSpec& set, const RealVector& shift, double sigma, double target_rel);
MeasureEstimate polar_measure(const SetSpec& set, const RealVector& shift, double sigma, double target_rel);
MeasureEstimate monte_carlo_measure(const GaussianShiftQuery& query, bool importance, double target_rel);

/// Approximate Euclidean distance, in units of sigma, from the shift to the
/// nearest point of the set, with that point (in z coordinates).
struct NearestPoint {
  double distance;
  RealVector z;
};
NearestPoint nearest_point(const SetSpec& set, const RealVector& shift, double sigma);

}  // namespace detail

}  // namespace schur2
