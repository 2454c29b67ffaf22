#include "swe/rf.hpp"

#include <algorithm>
#include <cmath>

#include "swe/error.hpp"
#include "swe/parallel.hpp"
#include "swe/rng.hpp"

namespace swe {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kCutSigmas = 4.0;  // truncate pulse/beam tails at 4 sigma
}  // namespace

double PulseSpec::time_sigma() const {
    // FWHM bandwidth f0*fbw of a Gaussian spectrum <-> time-domain sigma.
    return 2.355 / (kTwoPi * center_freq * fractional_bandwidth);
}

void PulseSpec::validate() const {
    if (center_freq <= 0) throw ConfigError("pulse: center_freq must be > 0");
    if (fractional_bandwidth <= 0 || fractional_bandwidth >= 2)
        throw ConfigError("pulse: fractional_bandwidth must be in (0, 2)");
    if (lateral_sigma <= 0) throw ConfigError("pulse: lateral_sigma must be > 0");
}

std::vector<double> sample_displacement(const DisplacementStack& truth, std::size_t frame,
                                        const std::vector<ScattererCloud::Point>& positions,
                                        double extent_lateral) {
    const ScanGeometry& g = truth.geometry;
    const GridView u = truth.axial_frame(frame);
    const double dz = g.axial_pitch();
    const double x0 = lateral_positions(g, extent_lateral)[0];

    std::vector<double> out(positions.size());
    for (std::size_t k = 0; k < positions.size(); ++k) {
        const double ga = positions[k].z / dz;
        const double gl = (positions[k].x - x0) / g.lateral_pitch;
        const double fa = std::clamp(ga, 0.0, static_cast<double>(g.n_axial - 1));
        const double fl = std::clamp(gl, 0.0, static_cast<double>(g.n_lateral - 1));
        std::size_t a0 = static_cast<std::size_t>(fa);
        std::size_t l0 = static_cast<std::size_t>(fl);
        if (a0 + 1 >= g.n_axial) a0 = g.n_axial - 2;
        if (l0 + 1 >= g.n_lateral) l0 = g.n_lateral - 2;
        const double wa = fa - static_cast<double>(a0);
        const double wl = fl - static_cast<double>(l0);
        out[k] = (1.0 - wl) * ((1.0 - wa) * u(l0, a0) + wa * u(l0, a0 + 1)) +
                 wl * ((1.0 - wa) * u(l0 + 1, a0) + wa * u(l0 + 1, a0 + 1));
    }
    return out;
}

Grid2d render_rf_frame(const ScattererCloud& cloud, const std::vector<double>& displacement,
                       const PulseSpec& pulse, const ScanGeometry& geom, double extent_lateral) {
    if (displacement.size() != cloud.size())
        throw ConfigError("rf: displacement list length does not match the scatterer count");
    pulse.validate();

    Grid2d frame(geom.n_lateral, geom.n_axial);
    const double sigma_t = pulse.time_sigma();
    const double inv2st = 1.0 / (2.0 * sigma_t * sigma_t);
    const double inv2sx = 1.0 / (2.0 * pulse.lateral_sigma * pulse.lateral_sigma);
    const double beam_cut = kCutSigmas * pulse.lateral_sigma;
    const double time_cut = kCutSigmas * sigma_t;
    const double fs = geom.sampling_freq;
    const double two_over_c = 2.0 / geom.sound_speed;
    const auto line_x = lateral_positions(geom, extent_lateral);

    // Per line, scatterers are accumulated in index order: the result does
    // not depend on how lines are scheduled across threads.
    for (std::size_t l = 0; l < geom.n_lateral; ++l) {
        double* line = frame.row(l);
        const double xl = line_x[l];
        for (std::size_t k = 0; k < cloud.size(); ++k) {
            const double dx = cloud.positions[k].x - xl;
            if (std::fabs(dx) > beam_cut) continue;
            const double tau0 = (cloud.positions[k].z + displacement[k]) * two_over_c;
            const long k_lo = std::max(0L, static_cast<long>(std::ceil((tau0 - time_cut) * fs)));
            const long k_hi = std::min(static_cast<long>(geom.n_axial) - 1,
                                       static_cast<long>(std::floor((tau0 + time_cut) * fs)));
            if (k_lo > k_hi) continue;
            const double w = cloud.amplitudes[k] * std::exp(-dx * dx * inv2sx);
            for (long s = k_lo; s <= k_hi; ++s) {
                const double dtau = static_cast<double>(s) / fs - tau0;
                line[s] += w * std::exp(-dtau * dtau * inv2st) *
                           std::cos(kTwoPi * pulse.center_freq * dtau);
            }
        }
    }
    return frame;
}

FrameStack simulate_rf_sequence(const PhantomSpec& spec, const DisplacementStack& truth,
                                const PulseSpec& pulse, const ScanGeometry& geom,
                                std::uint64_t seed, double density_2d) {
    if (truth.geometry.n_frames != geom.n_frames || truth.geometry.n_lateral != geom.n_lateral ||
        truth.geometry.n_axial != geom.n_axial)
        throw ConfigError("rf: truth stack dims do not match geometry");
    pulse.validate();

    const ScattererCloud cloud = seed_scatterers(spec, density_2d, seed);

    FrameStack stack(geom);
    parallel_for(geom.n_frames, [&](std::size_t f) {
        std::vector<double> disp;
        if (f == 0)
            disp.assign(cloud.size(), 0.0);  // undisplaced reference
        else
            disp = sample_displacement(truth, f, cloud.positions, spec.extent_lateral);
        const Grid2d frame = render_rf_frame(cloud, disp, pulse, geom, spec.extent_lateral);
        std::copy(frame.data(), frame.data() + frame.size(), stack.frame_data(f));
    });
    return stack;
}

void add_rf_noise(FrameStack& stack, double relative_std, std::uint64_t seed) {
    if (relative_std <= 0) return;
    double sum2 = 0.0;
    for (double v : stack.data) sum2 += v * v;
    const double rms = std::sqrt(sum2 / static_cast<double>(stack.data.size()));
    const double sigma = relative_std * rms;
    Rng rng(seed);
    for (double& v : stack.data) v += sigma * rng.normal();
}

}  // namespace swe
