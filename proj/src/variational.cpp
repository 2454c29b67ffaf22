#include "swe/variational.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swe/curvature.hpp"
#include "swe/error.hpp"
#include "swe/lncc.hpp"
#include "swe/warp.hpp"

namespace swe {

void VariationalConfig::validate() const {
    if (alpha < 0) throw ConfigError("variational: alpha must be >= 0");
    if (pyramid_levels < 1) throw ConfigError("variational: pyramid_levels must be >= 1");
    if (lncc_window_lateral % 2 == 0 || lncc_window_axial % 2 == 0)
        throw ConfigError("variational: lncc window must be odd in both dims");
    if (iters_per_level < 1) throw ConfigError("variational: iters_per_level must be >= 1");
    if (step_size <= 0) throw ConfigError("variational: step_size must be > 0");
    if (charbonnier_eps <= 0) throw ConfigError("variational: charbonnier_eps must be > 0");
}

namespace {

Grid2d smooth121(GridView src) {
    const std::size_t R = src.rows;
    const std::size_t C = src.cols;
    Grid2d tmp(R, C);
    for (std::size_t r = 0; r < R; ++r) {
        for (std::size_t c = 0; c < C; ++c) {
            const double a = src(r, c > 0 ? c - 1 : 0);
            const double b = src(r, c);
            const double d = src(r, c + 1 < C ? c + 1 : C - 1);
            tmp(r, c) = 0.25 * (a + 2.0 * b + d);
        }
    }
    Grid2d out(R, C);
    for (std::size_t r = 0; r < R; ++r) {
        for (std::size_t c = 0; c < C; ++c) {
            const double a = tmp(r > 0 ? r - 1 : 0, c);
            const double b = tmp(r, c);
            const double d = tmp(r + 1 < R ? r + 1 : R - 1, c);
            out(r, c) = 0.25 * (a + 2.0 * b + d);
        }
    }
    return out;
}

}  // namespace

Grid2d pyramid_downsample(GridView img) {
    const Grid2d s = smooth121(img);
    const std::size_t R = (img.rows + 1) / 2;
    const std::size_t C = (img.cols + 1) / 2;
    Grid2d out(R, C);
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t c = 0; c < C; ++c) out(r, c) = s(2 * r, 2 * c);
    return out;
}

Grid2d resize_shift_field(GridView shift, std::size_t rows, std::size_t cols, double value_scale) {
    Grid2d out(rows, cols);
    const double rs = rows > 1 ? static_cast<double>(shift.rows - 1) / static_cast<double>(rows - 1) : 0.0;
    const double cs = cols > 1 ? static_cast<double>(shift.cols - 1) / static_cast<double>(cols - 1) : 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        const double fr = static_cast<double>(r) * rs;
        const std::size_t r0 = static_cast<std::size_t>(fr);
        const std::size_t r1 = std::min(r0 + 1, shift.rows - 1);
        const double wr = fr - static_cast<double>(r0);
        for (std::size_t c = 0; c < cols; ++c) {
            const double fc = static_cast<double>(c) * cs;
            const std::size_t c0 = static_cast<std::size_t>(fc);
            const std::size_t c1 = std::min(c0 + 1, shift.cols - 1);
            const double wc = fc - static_cast<double>(c0);
            out(r, c) = value_scale * ((1.0 - wr) * ((1.0 - wc) * shift(r0, c0) + wc * shift(r0, c1)) +
                                       wr * ((1.0 - wc) * shift(r1, c0) + wc * shift(r1, c1)));
        }
    }
    return out;
}

double variational_objective(GridView fixed, GridView moving, const VariationalConfig& cfg,
                             double charb_eps_px, GridView s_lat, GridView s_ax, Grid2d* grad_ax,
                             Grid2d* grad_lat, double* similarity, double* penalty_exact) {
    const bool want_grad = grad_ax != nullptr;
    Grid2d warped(fixed.rows, fixed.cols);
    Grid2d d_dr, d_dc;
    if (want_grad) {
        d_dr = Grid2d(fixed.rows, fixed.cols);
        d_dc = Grid2d(fixed.rows, fixed.cols);
    }
    warp_pixels(moving, s_lat, s_ax, warped, want_grad ? &d_dr : nullptr,
                want_grad ? &d_dc : nullptr);

    double sim = 0.0;
    Grid2d g_img;
    if (want_grad)
        sim = lncc_similarity_grad(fixed, warped, cfg.lncc_window_lateral, cfg.lncc_window_axial, g_img);
    else
        sim = lncc_similarity(fixed, warped, cfg.lncc_window_lateral, cfg.lncc_window_axial);

    Grid2d g_pen;
    const double pen_smooth = charbonnier_curvature(s_ax, charb_eps_px, cfg.lateral_curvature_term,
                                                    want_grad ? &g_pen : nullptr);
    if (penalty_exact) *penalty_exact = curvature_penalty(s_ax, cfg.lateral_curvature_term);
    if (similarity) *similarity = sim;

    if (want_grad) {
        if (grad_ax->rows() != fixed.rows || grad_ax->cols() != fixed.cols)
            *grad_ax = Grid2d(fixed.rows, fixed.cols);
        for (std::size_t i = 0; i < grad_ax->size(); ++i)
            grad_ax->values()[i] = g_img.values()[i] * d_dc.values()[i] + cfg.alpha * g_pen.values()[i];
        if (grad_lat) {
            if (grad_lat->rows() != fixed.rows || grad_lat->cols() != fixed.cols)
                *grad_lat = Grid2d(fixed.rows, fixed.cols);
            for (std::size_t i = 0; i < grad_lat->size(); ++i)
                grad_lat->values()[i] = g_img.values()[i] * d_dr.values()[i];
        }
    }
    return sim + cfg.alpha * pen_smooth;
}

namespace {

struct LevelSpec {
    Grid2d fixed;
    Grid2d moving;
    double eps_px;  // Charbonnier knee in this level's sample units
};

// Gradient descent with Armijo backtracking on one pyramid level. The
// accepted/recorded loss uses the exact L1 penalty, so the trace is
// non-increasing by construction; search directions come from the smoothed
// objective.
void optimize_level(const LevelSpec& lv, const VariationalConfig& cfg, std::size_t frame,
                    std::size_t level, Grid2d& s_ax, Grid2d& s_lat,
                    std::vector<LossTraceRow>& trace, std::vector<std::string>& warnings) {
    const GridView fixed = lv.fixed.view();
    const GridView moving = lv.moving.view();

    Grid2d g_ax, g_lat;
    double sim = 0.0, pen = 0.0;
    variational_objective(fixed, moving, cfg, lv.eps_px, s_lat, s_ax, &g_ax,
                          cfg.estimate_lateral ? &g_lat : nullptr, &sim, &pen);
    double loss = sim + cfg.alpha * pen;
    if (!std::isfinite(loss))
        throw NumericError("variational: non-finite loss at frame " + std::to_string(frame));
    trace.push_back({frame, level, 0, sim, pen, loss});

    double step = cfg.step_size;
    const double min_step = cfg.step_size * 0x1.0p-44;
    Grid2d trial_ax(s_ax.rows(), s_ax.cols());
    Grid2d trial_lat(s_lat.rows(), s_lat.cols());

    for (std::size_t it = 1; it <= cfg.iters_per_level; ++it) {
        double gn2 = 0.0;
        for (double g : g_ax.values()) gn2 += g * g;
        if (cfg.estimate_lateral)
            for (double g : g_lat.values()) gn2 += g * g;
        if (gn2 < 1e-30) break;

        bool accepted = false;
        double sim_t = 0.0, pen_t = 0.0, loss_t = 0.0;
        while (step >= min_step) {
            for (std::size_t i = 0; i < s_ax.size(); ++i)
                trial_ax.values()[i] = s_ax.values()[i] - step * g_ax.values()[i];
            if (cfg.estimate_lateral)
                for (std::size_t i = 0; i < s_lat.size(); ++i)
                    trial_lat.values()[i] = s_lat.values()[i] - step * g_lat.values()[i];
            variational_objective(fixed, moving, cfg, lv.eps_px, trial_lat, trial_ax, nullptr,
                                  nullptr, &sim_t, &pen_t);
            loss_t = sim_t + cfg.alpha * pen_t;
            if (!std::isfinite(loss_t))
                throw NumericError("variational: non-finite loss at frame " + std::to_string(frame));
            if (loss_t <= loss - 1e-4 * step * gn2) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            warnings.push_back("frame " + std::to_string(frame) + " level " + std::to_string(level) +
                               ": step-size underflow at iter " + std::to_string(it) +
                               ", returning best iterate");
            break;
        }

        std::swap(s_ax, trial_ax);
        if (cfg.estimate_lateral) std::swap(s_lat, trial_lat);
        const double prev_loss = loss;
        loss = loss_t;
        trace.push_back({frame, level, it, sim_t, pen_t, loss_t});

        if (prev_loss - loss <= cfg.rel_improvement_tol * std::max(std::fabs(loss), 1e-12)) break;
        if (it == cfg.iters_per_level) break;

        variational_objective(fixed, moving, cfg, lv.eps_px, s_lat, s_ax, &g_ax,
                              cfg.estimate_lateral ? &g_lat : nullptr, nullptr, nullptr);
        step = std::min(step * 2.0, cfg.step_size * 1024.0);
    }
}

}  // namespace

VariationalResult variational_track_sequence(const FrameStack& stack, const VariationalConfig& cfg) {
    cfg.validate();
    const ScanGeometry& g = stack.geometry;
    if (g.n_frames < 2) throw ConfigError("variational: need at least 2 frames");

    // Clamp the pyramid depth so the LNCC window and the curvature stencil
    // fit at the coarsest level.
    std::size_t levels = 1;
    {
        std::size_t r = g.n_lateral, c = g.n_axial;
        while (levels < cfg.pyramid_levels) {
            const std::size_t r2 = (r + 1) / 2;
            const std::size_t c2 = (c + 1) / 2;
            if (r2 < std::max<std::size_t>(cfg.lncc_window_lateral, 3) ||
                c2 < std::max<std::size_t>(cfg.lncc_window_axial, 3))
                break;
            r = r2;
            c = c2;
            ++levels;
        }
    }

    const double dz = g.axial_pitch();

    // Fixed-frame pyramid is shared by every frame.
    std::vector<Grid2d> fixed_pyr(levels);
    {
        const GridView f0 = stack.frame(0);
        fixed_pyr[0] = Grid2d(f0.rows, f0.cols);
        std::copy(f0.data, f0.data + f0.size(), fixed_pyr[0].data());
        for (std::size_t k = 1; k < levels; ++k) fixed_pyr[k] = pyramid_downsample(fixed_pyr[k - 1]);
    }

    VariationalResult result;
    result.disp = DisplacementStack(g);
    if (cfg.estimate_lateral) result.disp.lateral.emplace(g.stack_size(), 0.0);

    Grid2d prev_ax(g.n_lateral, g.n_axial);  // finest-level solution of frame t-1
    Grid2d prev_lat(g.n_lateral, g.n_axial);

    for (std::size_t f = 1; f < g.n_frames; ++f) {
        std::vector<Grid2d> mov_pyr(levels);
        {
            const GridView mf = stack.frame(f);
            mov_pyr[0] = Grid2d(mf.rows, mf.cols);
            std::copy(mf.data, mf.data + mf.size(), mov_pyr[0].data());
            for (std::size_t k = 1; k < levels; ++k) mov_pyr[k] = pyramid_downsample(mov_pyr[k - 1]);
        }

        const std::size_t coarse = levels - 1;
        const double to_coarse = std::pow(0.5, static_cast<double>(coarse));
        Grid2d s_ax, s_lat;
        if (cfg.warm_start && f > 1) {
            s_ax = resize_shift_field(prev_ax, mov_pyr[coarse].rows(), mov_pyr[coarse].cols(), to_coarse);
            s_lat = cfg.estimate_lateral
                        ? resize_shift_field(prev_lat, mov_pyr[coarse].rows(), mov_pyr[coarse].cols(), to_coarse)
                        : Grid2d(mov_pyr[coarse].rows(), mov_pyr[coarse].cols());
        } else {
            s_ax = Grid2d(mov_pyr[coarse].rows(), mov_pyr[coarse].cols());
            s_lat = Grid2d(mov_pyr[coarse].rows(), mov_pyr[coarse].cols());
        }

        for (std::size_t k = levels; k-- > 0;) {
            LevelSpec lv;
            lv.fixed = fixed_pyr[k];
            lv.moving = mov_pyr[k];
            lv.eps_px = cfg.charbonnier_eps / (dz * std::pow(2.0, static_cast<double>(k)));
            optimize_level(lv, cfg, f, k, s_ax, s_lat, result.trace, result.warnings);
            if (k > 0) {
                s_ax = resize_shift_field(s_ax, mov_pyr[k - 1].rows(), mov_pyr[k - 1].cols(), 2.0);
                s_lat = cfg.estimate_lateral
                            ? resize_shift_field(s_lat, mov_pyr[k - 1].rows(), mov_pyr[k - 1].cols(), 2.0)
                            : Grid2d(mov_pyr[k - 1].rows(), mov_pyr[k - 1].cols());
            }
        }

        double* out_ax = result.disp.axial_frame_data(f);
        for (std::size_t i = 0; i < g.frame_size(); ++i) out_ax[i] = s_ax.values()[i] * dz;
        if (cfg.estimate_lateral) {
            double* out_lat = result.disp.lateral->data() + f * g.frame_size();
            for (std::size_t i = 0; i < g.frame_size(); ++i)
                out_lat[i] = s_lat.values()[i] * g.lateral_pitch;
        }
        prev_ax = s_ax;
        prev_lat = s_lat;
    }
    return result;
}

}  // namespace swe
