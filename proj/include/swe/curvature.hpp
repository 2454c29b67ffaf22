#pragma once

#include "swe/grid.hpp"

namespace swe {

// L1 norm of the second-order differences of the axial displacement field:
// sum of |u(l, a-1) - 2 u(l, a) + u(l, a+1)| wherever the axial neighbors
// exist, plus the analogous lateral-direction term (switchable).
double curvature_penalty(GridView u, bool include_lateral_axis = true);

// Charbonnier-smoothed variant sum(sqrt(d^2 + eps^2) - eps) used inside the
// optimizer; fills grad (same shape as u) when non-null.
double charbonnier_curvature(GridView u, double eps, bool include_lateral_axis, Grid2d* grad);

}  // namespace swe
