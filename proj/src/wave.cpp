#include "swe/wave.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swe/error.hpp"
#include "swe/geometry.hpp"

namespace swe {

namespace {

inline double face_mu(double a, double b) {
    // Harmonic average; correct flux across material discontinuities.
    return 2.0 * a * b / (a + b);
}

}  // namespace

void step_wave(WaveState& state, const MaterialField& field, const PushForce* force, double dt) {
    const double h = field.h;
    const std::size_t nx = field.nx();
    const std::size_t nz = field.nz();
    if (dt <= 0) throw NumericError("wave: dt must be > 0");
    const double cfl_limit = h / (field.max_shear_speed * std::sqrt(2.0));
    if (dt > cfl_limit * (1.0 + 1e-12))
        throw NumericError("wave: CFL violation, dt = " + std::to_string(dt) + " s exceeds limit " +
                           std::to_string(cfl_limit) + " s");

    const double inv_h2 = 1.0 / (h * h);
    const double inv_rho = 1.0 / field.density;
    const Grid2d& mu = field.shear_modulus;
    const double push_scale = force ? force->time_factor(state.t, dt) : 0.0;

    Grid2d& u = state.u;
    Grid2d& v = state.v;

    // Kick: v <- ((1 - g dt/2) v + dt a) / (1 + g dt/2), a = (div(mu grad u) + f)/rho.
    double vsum = 0.0;
    for (std::size_t i = 1; i + 1 < nx; ++i) {
        for (std::size_t j = 1; j + 1 < nz; ++j) {
            const double uc = u(i, j);
            const double flux = face_mu(mu(i, j), mu(i + 1, j)) * (u(i + 1, j) - uc) +
                                face_mu(mu(i, j), mu(i - 1, j)) * (u(i - 1, j) - uc) +
                                face_mu(mu(i, j), mu(i, j + 1)) * (u(i, j + 1) - uc) +
                                face_mu(mu(i, j), mu(i, j - 1)) * (u(i, j - 1) - uc);
            double accel = flux * inv_h2 * inv_rho;
            if (push_scale != 0.0) accel += force->spatial()(i, j) * push_scale * inv_rho;
            const double gdt2 = 0.5 * field.damping(i, j) * dt;
            const double vn = ((1.0 - gdt2) * v(i, j) + dt * accel) / (1.0 + gdt2);
            v(i, j) = vn;
            vsum += vn;
        }
    }
    if (!std::isfinite(vsum))
        throw NumericError("wave: non-finite state at t = " + std::to_string(state.t) + " s");

    // Drift: u <- u + dt v.
    for (std::size_t i = 1; i + 1 < nx; ++i)
        for (std::size_t j = 1; j + 1 < nz; ++j) u(i, j) += dt * v(i, j);

    state.t += dt;
}

double wave_energy(const WaveState& state, const MaterialField& field) {
    const std::size_t nx = field.nx();
    const std::size_t nz = field.nz();
    const double inv_h2 = 1.0 / (field.h * field.h);
    const Grid2d& mu = field.shear_modulus;
    double kinetic = 0.0;
    double elastic = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < nz; ++j) {
            const double vv = state.v(i, j);
            kinetic += 0.5 * field.density * vv * vv;
            if (i + 1 < nx) {
                const double d = state.u(i + 1, j) - state.u(i, j);
                elastic += 0.5 * face_mu(mu(i, j), mu(i + 1, j)) * d * d * inv_h2;
            }
            if (j + 1 < nz) {
                const double d = state.u(i, j + 1) - state.u(i, j);
                elastic += 0.5 * face_mu(mu(i, j), mu(i, j + 1)) * d * d * inv_h2;
            }
        }
    }
    return (kinetic + elastic) * field.h * field.h;
}

PushConfig default_push(const PhantomSpec& spec, const ScanGeometry& geom) {
    PushConfig push;
    push.focal_depth = geom.push_depth;
    push.lateral_center = lateral_positions(geom, spec.extent_lateral)[geom.push_lateral_index];
    return push;
}

namespace {

// Bilinear sample of a solver grid at phantom coordinates, edge-clamped.
double sample_grid(const Grid2d& g, const MaterialField& field, double x, double z) {
    const double gi = x / field.h + static_cast<double>(field.sponge);
    const double gj = z / field.h + static_cast<double>(field.sponge);
    const double fi = std::clamp(gi, 0.0, static_cast<double>(g.rows() - 1));
    const double fj = std::clamp(gj, 0.0, static_cast<double>(g.cols() - 1));
    std::size_t i0 = static_cast<std::size_t>(fi);
    std::size_t j0 = static_cast<std::size_t>(fj);
    if (i0 + 1 >= g.rows()) i0 = g.rows() - 2;
    if (j0 + 1 >= g.cols()) j0 = g.cols() - 2;
    const double wi = fi - static_cast<double>(i0);
    const double wj = fj - static_cast<double>(j0);
    return (1.0 - wi) * ((1.0 - wj) * g(i0, j0) + wj * g(i0, j0 + 1)) +
           wi * ((1.0 - wj) * g(i0 + 1, j0) + wj * g(i0 + 1, j0 + 1));
}

}  // namespace

SimResult simulate_displacements(const PhantomSpec& spec, const PushConfig& push,
                                 const ScanGeometry& geom, double h, double dt,
                                 const SimOptions& opt) {
    spec.validate();
    geom.validate();

    const MaterialField field = build_material_field(spec, h, opt.material);
    const PushForce force = build_push_force(push, field);

    const double frame_dt = 1.0 / geom.prf;
    const double cfl_limit = field.h / (field.max_shear_speed * std::sqrt(2.0));
    double dt_req = (dt > 0) ? dt : 0.9 * cfl_limit;
    // Snap dt so an integer number of steps lands exactly on each frame.
    const std::size_t steps_per_frame = static_cast<std::size_t>(std::ceil(frame_dt / dt_req - 1e-9));
    const double dt_eff = frame_dt / static_cast<double>(steps_per_frame);

    SimResult result;
    result.dt = dt_eff;
    result.steps_per_frame = steps_per_frame;
    result.truth = DisplacementStack(geom);

    const auto xs = lateral_positions(geom, spec.extent_lateral);
    const auto zs = axial_positions(geom);

    WaveState state(field);
    double peak = 0.0;
    for (std::size_t f = 1; f < geom.n_frames; ++f) {
        for (std::size_t s = 0; s < steps_per_frame; ++s)
            step_wave(state, field, &force, dt_eff);
        double* out = result.truth.axial_frame_data(f);
        for (std::size_t l = 0; l < geom.n_lateral; ++l) {
            for (std::size_t a = 0; a < geom.n_axial; ++a) {
                const double u = sample_grid(state.u, field, xs[l], zs[a]);
                out[l * geom.n_axial + a] = u;
                peak = std::max(peak, std::fabs(u));
            }
        }
    }

    if (push.peak_body_force == 0.0) {
        result.calibration_factor = 1.0;
        result.peak_displacement = 0.0;
        return result;
    }
    if (peak <= 0.0) throw NumericError("simulate: calibration failure, zero displacement response");

    const double factor = opt.target_peak / peak;
    for (double& u : result.truth.axial) u *= factor;
    result.calibration_factor = factor;
    result.peak_displacement = peak * factor;
    return result;
}

}  // namespace swe
