#pragma once

#include "swe/grid.hpp"

namespace swe {

// Local normalized cross-correlation similarity.
//
// Returns -mean over all sliding-window positions of
// NCC(fixed window, warped window); a window whose fixed or warped variance
// falls below kLnccVarEps contributes 0. Identical non-degenerate images
// give -1.

constexpr double kLnccVarEps = 1e-12;

double lncc_similarity(GridView fixed, GridView warped, std::size_t win_lateral, std::size_t win_axial);

// Same value, and the analytic gradient with respect to the warped image.
double lncc_similarity_grad(GridView fixed, GridView warped, std::size_t win_lateral,
                            std::size_t win_axial, Grid2d& grad_wrt_warped);

// Sum of src over each win_r x win_c window position (output is
// (rows-win_r+1) x (cols-win_c+1)); shared with the LNCC internals,
// exposed for tests.
Grid2d box_sum(GridView src, std::size_t win_r, std::size_t win_c);

}  // namespace swe
