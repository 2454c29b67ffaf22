#pragma once

#include <string>
#include <vector>

#include "swe/grid.hpp"
#include "swe/stack.hpp"

namespace swe {

// Direct per-sequence minimization of
//   LNCC(fixed, moving o T) + alpha * sum |second differences of u_ax|
// over a pixel-grid displacement field, coarse-to-fine with Armijo
// backtracking gradient descent. Frame t warm-starts from frame t-1.
struct VariationalConfig {
    double alpha = 0.02;
    std::size_t lncc_window_lateral = 9;  // odd
    std::size_t lncc_window_axial = 9;    // odd
    std::size_t pyramid_levels = 3;       // clamped so the window fits at the coarsest level
    std::size_t iters_per_level = 100;    // upper bound per level
    double step_size = 1.0;               // Armijo backtracking start
    double charbonnier_eps = 1e-9;        // [m]
    bool warm_start = true;
    bool estimate_lateral = false;        // axial-only by default
    bool lateral_curvature_term = true;   // lateral second differences of the axial field
    double rel_improvement_tol = 1e-7;    // early stop when a step gains less than this

    void validate() const;
};

struct LossTraceRow {
    std::size_t frame = 0;
    std::size_t level = 0;   // 0 = finest
    std::size_t iter = 0;    // 0 = loss before the first step
    double similarity = 0.0; // LNCC term
    double penalty = 0.0;    // exact L1 curvature of the axial field [samples]
    double total = 0.0;      // similarity + alpha * penalty
};

struct VariationalResult {
    DisplacementStack disp;
    std::vector<LossTraceRow> trace;
    std::vector<std::string> warnings;  // e.g. step-size underflow notes
};

VariationalResult variational_track_sequence(const FrameStack& stack, const VariationalConfig& cfg);

// Smoothed objective (LNCC + alpha * Charbonnier curvature) of pixel-unit
// shift fields, with analytic gradients; the optimizer's inner function,
// exposed for gradient verification. charb_eps_px is the Charbonnier knee
// in axial-sample units. Outputs may be null; similarity/penalty_exact
// receive the LNCC term and the exact L1 penalty.
double variational_objective(GridView fixed, GridView moving, const VariationalConfig& cfg,
                             double charb_eps_px, GridView s_lat, GridView s_ax, Grid2d* grad_ax,
                             Grid2d* grad_lat, double* similarity, double* penalty_exact);

// Image pyramid helpers ([1 2 1]/4 smoothing then 2x decimation; shifts are
// resized bilinearly with values scaled by the resolution ratio).
Grid2d pyramid_downsample(GridView img);
Grid2d resize_shift_field(GridView shift, std::size_t rows, std::size_t cols, double value_scale);

}  // namespace swe
