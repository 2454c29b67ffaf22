#include "swe/ncc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swe/error.hpp"
#include "swe/parallel.hpp"

namespace swe {

void NccConfig::validate(std::size_t n_axial) const {
    if (window_len % 2 == 0) throw ConfigError("ncc: window_len must be odd");
    if (window_hop < 1) throw ConfigError("ncc: window_hop must be >= 1");
    if (max_lag < 1) throw ConfigError("ncc: max_lag must be >= 1");
    if (window_len + 2 * max_lag > n_axial)
        throw ConfigError("ncc: window_len + 2*max_lag exceeds n_axial = " + std::to_string(n_axial));
}

NccProfile ncc_profile(std::span<const double> ref_window, std::span<const double> segment,
                       std::size_t max_lag) {
    const std::size_t len = ref_window.size();
    if (segment.size() < len + 2 * max_lag)
        throw ConfigError("ncc: search segment too short for the requested lags");

    NccProfile out;
    out.max_lag = max_lag;
    out.c.assign(2 * max_lag + 1, 0.0);

    double ref_mean = 0.0;
    for (double v : ref_window) ref_mean += v;
    ref_mean /= static_cast<double>(len);
    double ref_var = 0.0;
    for (double v : ref_window) ref_var += (v - ref_mean) * (v - ref_mean);
    if (ref_var <= 0.0) {
        out.degenerate = true;
        return out;
    }

    for (std::size_t s = 0; s <= 2 * max_lag; ++s) {
        const double* seg = segment.data() + s;
        double seg_mean = 0.0;
        for (std::size_t k = 0; k < len; ++k) seg_mean += seg[k];
        seg_mean /= static_cast<double>(len);
        double cross = 0.0;
        double seg_var = 0.0;
        for (std::size_t k = 0; k < len; ++k) {
            const double a = ref_window[k] - ref_mean;
            const double b = seg[k] - seg_mean;
            cross += a * b;
            seg_var += b * b;
        }
        out.c[s] = (seg_var > 0.0) ? cross / std::sqrt(ref_var * seg_var) : 0.0;
    }
    return out;
}

PeakEstimate subsample_peak(std::span<const double> profile) {
    if (profile.size() < 3) throw ConfigError("peak refinement needs a profile of length >= 3");

    std::size_t j = 0;
    for (std::size_t k = 1; k < profile.size(); ++k)
        if (profile[k] > profile[j]) j = k;

    PeakEstimate est;
    est.peak = profile[j];
    est.lag = static_cast<double>(j);
    if (j == 0 || j + 1 == profile.size()) {
        est.refined = false;
        return est;
    }
    est.refined = true;
    if (est.peak >= 1.0 - 1e-12) return est;  // exact match: integer lag is the answer

    const double cm = profile[j - 1];
    const double c0 = profile[j];
    const double cp = profile[j + 1];
    const double denom = 2.0 * (cm - 2.0 * c0 + cp);
    if (denom != 0.0) {
        const double delta = std::clamp((cm - cp) / denom, -0.5, 0.5);
        est.lag += delta;
    }
    return est;
}

DisplacementStack ncc_track_sequence(const FrameStack& stack, const NccConfig& cfg) {
    const ScanGeometry& g = stack.geometry;
    if (g.n_frames < 2) throw ConfigError("ncc: need at least 2 frames");
    cfg.validate(g.n_axial);

    const std::size_t half = cfg.window_len / 2;
    const std::size_t first_center = half + cfg.max_lag;
    const std::size_t last_center = g.n_axial - 1 - half - cfg.max_lag;
    std::vector<std::size_t> centers;
    for (std::size_t c = first_center; c <= last_center; c += cfg.window_hop) centers.push_back(c);
    if (centers.empty()) throw ConfigError("ncc: no admissible window centers");

    const double lag_to_m = g.sound_speed / (2.0 * g.sampling_freq);
    DisplacementStack disp(g);
    const GridView ref = stack.frame(0);

    parallel_for((g.n_frames - 1) * g.n_lateral, [&](std::size_t task) {
        const std::size_t f = 1 + task / g.n_lateral;
        const std::size_t l = task % g.n_lateral;
        const double* ref_line = ref.data + l * g.n_axial;
        const double* mov_line = stack.frame(f).data + l * g.n_axial;

        std::vector<double> u_at_center(centers.size());
        for (std::size_t k = 0; k < centers.size(); ++k) {
            const std::size_t c = centers[k];
            const auto profile =
                ncc_profile(std::span<const double>(ref_line + c - half, cfg.window_len),
                            std::span<const double>(mov_line + c - half - cfg.max_lag,
                                                    cfg.window_len + 2 * cfg.max_lag),
                            cfg.max_lag);
            double lag = 0.0;
            if (!profile.degenerate) {
                const PeakEstimate est = subsample_peak(profile.c);
                lag = est.lag - static_cast<double>(cfg.max_lag);
            }
            u_at_center[k] = lag * lag_to_m;
        }

        // Linear interpolation between window centers, held constant at the ends.
        double* out = disp.axial_frame_data(f) + l * g.n_axial;
        std::size_t seg = 0;
        for (std::size_t a = 0; a < g.n_axial; ++a) {
            if (a <= centers.front()) {
                out[a] = u_at_center.front();
            } else if (a >= centers.back()) {
                out[a] = u_at_center.back();
            } else {
                while (centers[seg + 1] < a) ++seg;
                const double t = static_cast<double>(a - centers[seg]) /
                                 static_cast<double>(centers[seg + 1] - centers[seg]);
                out[a] = (1.0 - t) * u_at_center[seg] + t * u_at_center[seg + 1];
            }
        }
    });
    return disp;
}

}  // namespace swe
