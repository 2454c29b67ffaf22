#include "swe/tof.hpp"

#include <algorithm>
#include <cmath>

#include "swe/error.hpp"
#include "swe/parallel.hpp"

namespace swe {

void TofConfig::validate(const ScanGeometry& geom) const {
    if (max_lag_frames < 1 || max_lag_frames >= geom.n_frames)
        throw ConfigError("tof: max_lag_frames must be in [1, n_frames)");
    if (lane_distance < 1 || lane_distance >= geom.n_lateral)
        throw ConfigError("tof: lane_distance must be in [1, n_lateral)");
    if (min_speed <= 0 || max_speed <= min_speed)
        throw ConfigError("tof: speed gate must satisfy 0 < min < max");
    if (min_peak_corr < 0 || min_peak_corr > 1)
        throw ConfigError("tof: min_peak_corr must be in [0, 1]");
    if (focal_exclusion_halfwidth < 0)
        throw ConfigError("tof: focal_exclusion_halfwidth must be >= 0");
}

NccProfile lateral_xcorr(std::span<const double> f, std::span<const double> g, std::size_t max_lag,
                         bool strict_second_sum_from_f) {
    const long n = static_cast<long>(f.size());
    if (f.size() != g.size() || n < 3)
        throw ConfigError("tof: profiles must have equal length >= 3");

    NccProfile out;
    out.max_lag = max_lag;
    out.c.assign(2 * max_lag + 1, 0.0);

    double f2 = 0.0, g2 = 0.0;
    for (double v : f) f2 += v * v;
    for (double v : g) g2 += v * v;
    if (f2 <= 0.0 || g2 <= 0.0) {
        out.degenerate = true;
        return out;
    }

    for (long j = -static_cast<long>(max_lag); j <= static_cast<long>(max_lag); ++j) {
        const long i_lo = std::max(0L, -j);
        const long i_hi = std::min(n - 1, n - 1 - j);
        double cross = 0.0, den_f = 0.0, den_g = 0.0;
        for (long i = i_lo; i <= i_hi; ++i) {
            const double a = f[static_cast<std::size_t>(i)];
            const double b = g[static_cast<std::size_t>(i + j)];
            const double d = strict_second_sum_from_f ? f[static_cast<std::size_t>(i + j)] : b;
            cross += a * b;
            den_f += a * a;
            den_g += d * d;
        }
        const double den = den_f * den_g;
        out.c[static_cast<std::size_t>(j + static_cast<long>(max_lag))] =
            den > 0.0 ? cross / std::sqrt(den) : 0.0;
    }
    return out;
}

TimeLagEstimate estimate_time_lag(const NccProfile& profile, double prf) {
    TimeLagEstimate est;
    if (profile.degenerate || profile.c.empty()) {
        est.degenerate = true;
        return est;
    }
    const PeakEstimate peak = subsample_peak(profile.c);
    est.refined = peak.refined;
    est.quality = peak.peak;
    est.dt = (peak.lag - static_cast<double>(profile.max_lag)) / prf;
    return est;
}

SWSMap sws_map(const DisplacementStack& disp, const ScanGeometry& geom, const TofConfig& cfg) {
    if (geom.n_frames < 2) throw ConfigError("tof: need at least 2 frames");
    cfg.validate(geom);
    if (geom.push_lateral_index >= geom.n_lateral)
        throw ConfigError("tof: push line outside the grid");

    SWSMap map;
    map.n_lateral = geom.n_lateral;
    map.n_axial = geom.n_axial;
    map.speed.assign(geom.frame_size(), 0.0);
    map.peak_corr.assign(geom.frame_size(), 0.0);
    map.valid.assign(geom.frame_size(), 0);

    const double d = static_cast<double>(cfg.lane_distance) * geom.lateral_pitch;
    const double push = static_cast<double>(geom.push_lateral_index);
    const std::size_t nf = geom.n_frames;

    parallel_for(geom.n_axial, [&](std::size_t a) {
        const std::size_t a_lo = a >= cfg.axial_average_halfwidth ? a - cfg.axial_average_halfwidth : 0;
        const std::size_t a_hi = std::min(geom.n_axial - 1, a + cfg.axial_average_halfwidth);
        const double inv_rows = 1.0 / static_cast<double>(a_hi - a_lo + 1);

        // Row-averaged displacement-vs-time profile per lateral line.
        std::vector<double> prof(geom.n_lateral * nf);
        for (std::size_t l = 0; l < geom.n_lateral; ++l) {
            for (std::size_t f = 0; f < nf; ++f) {
                double s = 0.0;
                for (std::size_t r = a_lo; r <= a_hi; ++r) s += disp.ax(f, l, r);
                prof[l * nf + f] = s * inv_rows;
            }
        }

        for (std::size_t l = 0; l + cfg.lane_distance < geom.n_lateral; ++l) {
            const std::size_t lr = l + cfg.lane_distance;
            const auto profile =
                lateral_xcorr(std::span<const double>(prof.data() + l * nf, nf),
                              std::span<const double>(prof.data() + lr * nf, nf), cfg.max_lag_frames,
                              cfg.strict_paper_normalization);
            const TimeLagEstimate lag = estimate_time_lag(profile, geom.prf);
            if (lag.degenerate) continue;

            // Orient the lag away from the push: on the left side the outer
            // line of the pair leads, flipping the expected sign.
            const double mid = 0.5 * static_cast<double>(l + lr);
            const double oriented_dt = (mid >= push) ? lag.dt : -lag.dt;

            const std::size_t idx = l * geom.n_axial + a;
            map.peak_corr[idx] = lag.quality;
            if (oriented_dt <= 0.0) continue;  // wrong direction or zero lag
            const double speed = d / oriented_dt;
            map.speed[idx] = speed;
            if (lag.quality >= cfg.min_peak_corr && speed >= cfg.min_speed && speed <= cfg.max_speed)
                map.valid[idx] = 1;
        }
    });
    return map;
}

}  // namespace swe
