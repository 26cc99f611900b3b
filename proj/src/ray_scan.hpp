#pragma once

#include "schur2/sets.hpp"

namespace schur2::detail {

/// {rho in [0, inf) : shift + sigma * rho * dir in set}, as sorted closed
/// intervals. Membership is probed on `grid` equal steps up to rho_max plus
/// the crossings of the coordinate hyperplanes and the point of closest
/// approach to the origin, so components hugging the axes are not skipped.
/// Boundaries are polished by bisection. A member at rho_max is taken to
/// extend to infinity.
LineSection ray_section(const SetSpec& set, const RealVector& shift, double sigma, const RealVector& dir,
                        double rho_max, int grid);

}  // namespace schur2::detail
