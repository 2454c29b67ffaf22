#include <cmath>

#include "doctest.h"
#include "swe/error.hpp"
#include "swe/material.hpp"
#include "swe/push.hpp"
#include "swe/wave.hpp"
#include "test_util.hpp"

using namespace swe;

namespace {

PhantomSpec default_phantom(double youngs) {
    PhantomSpec spec;
    spec.background_youngs = youngs;
    return spec;
}

// Zero crossing riding the wave front: locate the positive lobe's peak,
// then interpolate the sign change just below it. Dispersion dust far from
// the pulse cannot distract this detector.
double zero_crossing_z(const WaveState& state, const MaterialField& field, std::size_t column) {
    std::size_t j_peak = 0;
    for (std::size_t j = 0; j < field.nz(); ++j)
        if (state.u(column, j) > state.u(column, j_peak)) j_peak = j;
    for (std::size_t j = j_peak; j-- > 0;) {
        const double a = state.u(column, j);
        const double b = state.u(column, j + 1);
        if (a <= 0.0 && b > 0.0) {
            const double frac = a / (a - b);
            return field.node_z(j) + frac * field.h;
        }
    }
    return -1.0;
}

}  // namespace

TEST_CASE("material field from phantom: mu and c_s hand values") {
    // E = 15 kPa, nu = 0.495 -> mu = 15000 / 2.99 = 5016.72 Pa,
    // c_s = sqrt(mu / 1000) = 2.2398 m/s
    const auto field = build_material_field(default_phantom(15e3), 2e-4);
    const std::size_t ci = field.nx() / 2;
    const std::size_t cj = field.nz() / 2;
    CHECK(field.shear_modulus(ci, cj) == doctest::Approx(5016.72).epsilon(1e-5));
    CHECK(field.shear_speed(ci, cj) == doctest::Approx(2.2398).epsilon(1e-4));
    CHECK(field.max_shear_speed == doctest::Approx(2.2398).epsilon(1e-4));
}

TEST_CASE("material field geometry and sponge") {
    PhantomSpec spec = default_phantom(20e3);
    const auto field = build_material_field(spec, 1e-4);
    // 25 mm x 35 mm interior at 0.1 mm -> 251 x 351 nodes + 15 sponge cells per edge
    CHECK(field.nx() == 251 + 30);
    CHECK(field.nz() == 351 + 30);

    // homogeneous: youngs constant over the interior
    for (std::size_t i = field.sponge; i < field.nx() - field.sponge; i += 17)
        for (std::size_t j = field.sponge; j < field.nz() - field.sponge; j += 17)
            CHECK(field.youngs(i, j) == 20e3);

    // sponge damping increases monotonically toward each boundary
    const std::size_t mid_j = field.nz() / 2;
    for (std::size_t i = 0; i + 1 < field.sponge; ++i) {
        CHECK(field.damping(i, mid_j) > field.damping(i + 1, mid_j));
        CHECK(field.damping(field.nx() - 1 - i, mid_j) > field.damping(field.nx() - 2 - i, mid_j));
    }

    SUBCASE("h too coarse") { CHECK_THROWS_AS(build_material_field(spec, 3e-4), ConfigError); }
    SUBCASE("inclusion outside the extent") {
        spec.inclusion = Inclusion{0.034, 0.0125, 3e-3, 40e3};  // sticks out the bottom
        CHECK_THROWS_AS(build_material_field(spec, 1e-4), ConfigError);
    }
}

TEST_CASE("inclusion disk is rasterized with the stiffer modulus") {
    PhantomSpec spec = default_phantom(20e3);
    spec.inclusion = Inclusion{0.019, 0.0125, 3e-3, 60e3};
    const auto field = build_material_field(spec, 1e-4);
    const std::size_t ic = field.sponge + 125;  // x = 12.5 mm
    const std::size_t jc = field.sponge + 190;  // z = 19.0 mm
    CHECK(field.youngs(ic, jc) == 60e3);
    CHECK(field.youngs(ic, jc + 29) == 60e3);  // 2.9 mm from center, inside
    CHECK(field.youngs(ic, jc + 31) == 20e3);  // just outside the 3 mm radius
    CHECK(field.max_shear_speed == doctest::Approx(std::sqrt(60e3 / 2.99 / 1000.0)).epsilon(1e-6));
}

TEST_CASE("push force evaluation") {
    const auto field = build_material_field(default_phantom(20e3), 2e-4);
    PushConfig cfg;
    cfg.lateral_center = 0.0125;
    cfg.peak_body_force = 5e5;
    const PushForce force(cfg, field);

    // center of the Gaussian during the push window
    CHECK(force.eval(0.0125, 0.019, 35e-6) == doctest::Approx(5e5).epsilon(1e-12));
    // past the 71 us push
    CHECK(force.eval(0.0125, 0.019, 80e-6) == 0.0);
    CHECK(force.eval(0.01, 0.02, -1e-6) == 0.0);
    // lateral symmetry
    for (double delta : {1e-4, 5e-4, 2e-3})
        CHECK(force.eval(0.0125 + delta, 0.019, 1e-5) ==
              doctest::Approx(force.eval(0.0125 - delta, 0.019, 1e-5)).epsilon(1e-14));
    // default widths: lambda * f# = (1540/7e6) * 2 = 0.44 mm
    CHECK(cfg.lateral_sigma == doctest::Approx(0.44e-3));
    CHECK(cfg.axial_sigma == doctest::Approx(2e-3));

    SUBCASE("focal point must be outside the sponge") {
        PushConfig bad = cfg;
        bad.focal_depth = -1e-3;
        CHECK_THROWS_AS(PushForce(bad, field), ConfigError);
    }
}

TEST_CASE("step_wave enforces the CFL bound") {
    // c_max = sqrt(29900 / 2.99 / 1000) = 3.1623 m/s at h = 0.1 mm:
    // limit = h / (c sqrt(2)) = 2.236e-5 s
    const auto field = build_material_field(default_phantom(29.9e3), 1e-4);
    CHECK(field.max_shear_speed == doctest::Approx(3.16228).epsilon(1e-5));
    WaveState state(field);
    CHECK_THROWS_AS(step_wave(state, field, nullptr, 3e-5), NumericError);
    step_wave(state, field, nullptr, 2.2e-5);  // below the limit
    CHECK(state.t == doctest::Approx(2.2e-5));
}

TEST_CASE("zero state with zero force stays zero") {
    const auto field = build_material_field(default_phantom(20e3), 2e-4);
    WaveState state(field);
    for (int i = 0; i < 5; ++i) step_wave(state, field, nullptr, 1e-5);
    for (double v : state.u.values()) CHECK(v == 0.0);
    for (double v : state.v.values()) CHECK(v == 0.0);
}

TEST_CASE("plane-wave front speed matches sqrt(mu/rho) within 3 percent") {
    PhantomSpec spec = default_phantom(20e3);
    spec.attenuation = 0.0;  // isolate propagation speed
    const double h = 1e-4;
    const auto field = build_material_field(spec, h);
    const double c_exact = field.shear_speed(field.nx() / 2, field.nz() / 2);

    // Antisymmetric pulse u0(z) = (z-z0) exp(-(z-z0)^2 / 2 sigma^2) traveling
    // in +z; its zero crossing rides the front.
    const double sigma = 1.5e-3;
    const double z0 = 8e-3;
    WaveState state(field);
    for (std::size_t i = 0; i < field.nx(); ++i) {
        for (std::size_t j = 0; j < field.nz(); ++j) {
            const double dz = field.node_z(j) - z0;
            const double env = std::exp(-dz * dz / (2.0 * sigma * sigma));
            state.u(i, j) = dz * env;
            // u_t = -c u0'(z) for a rightward-traveling wave
            state.v(i, j) = -c_exact * env * (1.0 - dz * dz / (sigma * sigma));
        }
    }

    const double dt = 0.5 * h / (field.max_shear_speed * std::sqrt(2.0));
    const std::size_t column = field.nx() / 2;
    const double z_before = zero_crossing_z(state, field, column);
    REQUIRE(z_before > 0.0);
    for (int s = 0; s < 100; ++s) step_wave(state, field, nullptr, dt);
    const double z_after = zero_crossing_z(state, field, column);
    REQUIRE(z_after > z_before);

    const double c_measured = (z_after - z_before) / (100.0 * dt);
    CHECK(c_measured == doctest::Approx(c_exact).epsilon(0.03));
}

TEST_CASE("doubling the body force doubles the field") {
    const auto field = build_material_field(default_phantom(20e3), 2e-4);
    PushConfig cfg;
    cfg.lateral_center = 0.0125;
    cfg.peak_body_force = 1e6;
    PushConfig cfg2 = cfg;
    cfg2.peak_body_force = 2e6;
    const PushForce f1(cfg, field);
    const PushForce f2(cfg2, field);

    WaveState s1(field), s2(field);
    const double dt = 2e-5;
    for (int i = 0; i < 40; ++i) {
        step_wave(s1, field, &f1, dt);
        step_wave(s2, field, &f2, dt);
    }
    double max_u = 0.0, max_err = 0.0;
    for (std::size_t i = 0; i < s1.u.size(); ++i) {
        max_u = std::max(max_u, std::fabs(s1.u.values()[i]));
        max_err = std::max(max_err, std::fabs(s2.u.values()[i] - 2.0 * s1.u.values()[i]));
    }
    REQUIRE(max_u > 0.0);
    CHECK(max_err <= 1e-10 * max_u);
}

TEST_CASE("energy is conserved to 1 percent over 100 steps without damping") {
    PhantomSpec spec = default_phantom(20e3);
    auto field = build_material_field(spec, 2e-4);
    field.damping.fill(0.0);

    WaveState state(field);
    const double sigma = 1.5e-3;
    for (std::size_t i = 0; i < field.nx(); ++i) {
        for (std::size_t j = 0; j < field.nz(); ++j) {
            const double dx = field.node_x(i) - 0.0125;
            const double dz = field.node_z(j) - 0.0175;
            state.u(i, j) = 1e-5 * std::exp(-(dx * dx + dz * dz) / (2.0 * sigma * sigma));
        }
    }
    // Kinetic energy reads v half a step off u (leapfrog staggering), so the
    // measured energy carries an O(dt w) ripple; a small dt keeps it inside
    // the 1 percent budget.
    const double dt = 0.125 * field.h / (field.max_shear_speed * std::sqrt(2.0));
    const double e0 = wave_energy(state, field);
    REQUIRE(e0 > 0.0);
    double e_max = e0;
    for (int s = 0; s < 100; ++s) {
        step_wave(state, field, nullptr, dt);
        e_max = std::max(e_max, wave_energy(state, field));
    }
    CHECK(e_max <= 1.01 * e0);
}

TEST_CASE("sponge absorbs the outgoing wave: residual energy at 5 ms below 10 percent of peak") {
    // Domain sized so the wave reaches the boundaries well before 5 ms
    // (12 x 12 mm, c = 3.2 m/s -> ~1.9 ms to the nearest edge); on a wider
    // domain the wave is still in transit at 5 ms and the bound would
    // measure distance, not absorption.
    PhantomSpec spec = swe_test::small_phantom(30e3);
    const auto field = build_material_field(spec, 2e-4);
    PushConfig cfg;
    cfg.lateral_center = 6e-3;
    cfg.focal_depth = 6e-3;
    cfg.axial_sigma = 1e-3;
    cfg.peak_body_force = 1e6;
    const PushForce force(cfg, field);

    WaveState state(field);
    const double dt = 0.8 * field.h / (field.max_shear_speed * std::sqrt(2.0));
    double e_peak = 0.0;
    while (state.t < 5e-3) {
        step_wave(state, field, &force, dt);
        if (state.t > cfg.duration) e_peak = std::max(e_peak, wave_energy(state, field));
    }
    const double e_end = wave_energy(state, field);
    REQUIRE(e_peak > 0.0);
    CHECK(e_end <= 0.10 * e_peak);
}

TEST_CASE("lateral mirror symmetry for a centered push") {
    PhantomSpec spec = default_phantom(20e3);
    const double h = 1e-4;
    const auto field = build_material_field(spec, h);
    PushConfig cfg;
    cfg.lateral_center = 0.0125;  // node 125: exact grid center
    cfg.peak_body_force = 1e6;
    const PushForce force(cfg, field);

    WaveState state(field);
    const double dt = 0.8 * h / (field.max_shear_speed * std::sqrt(2.0));
    for (int s = 0; s < 60; ++s) step_wave(state, field, &force, dt);

    const std::size_t center = field.sponge + 125;
    double max_u = 0.0;
    for (double v : state.u.values()) max_u = std::max(max_u, std::fabs(v));
    REQUIRE(max_u > 0.0);
    for (std::size_t k = 1; k <= 100; k += 3) {
        for (std::size_t j = field.sponge; j < field.nz() - field.sponge; j += 11) {
            const double left = state.u(center - k, j);
            const double right = state.u(center + k, j);
            CHECK(std::fabs(left - right) <= 1e-6 * max_u);
        }
    }
}

TEST_CASE("simulate_displacements produces a calibrated stack") {
    const PhantomSpec spec = swe_test::small_phantom();
    ScanGeometry geom = swe_test::small_geometry();
    const PushConfig push = default_push(spec, geom);
    CHECK(push.focal_depth == geom.push_depth);

    const SimResult result = simulate_displacements(spec, push, geom, 1.5e-4, 0.0);
    const DisplacementStack& truth = result.truth;
    CHECK(truth.axial.size() == geom.stack_size());

    // frame 0 identically zero
    for (std::size_t i = 0; i < geom.frame_size(); ++i) CHECK(truth.axial[i] == 0.0);

    // calibrated peak inside the 10-40 um band
    double peak = 0.0;
    for (double v : truth.axial) peak = std::max(peak, std::fabs(v));
    CHECK(peak >= 1e-5);
    CHECK(peak <= 4e-5);
    CHECK(result.peak_displacement == doctest::Approx(peak));
    truth.validate();

    SUBCASE("zero push amplitude gives an all-zero stack") {
        PushConfig zero = push;
        zero.peak_body_force = 0.0;
        const SimResult r0 = simulate_displacements(spec, zero, geom, 1.5e-4, 0.0);
        for (double v : r0.truth.axial) CHECK(v == 0.0);
    }
}

TEST_CASE("default geometry dims match the documented sequence size") {
    const PhantomSpec spec = parse_phantom_spec("background_youngs = 20000\n");
    ScanGeometry geom;  // 1552 x 128 x 50
    // dims only; the full-size run lives in the acceptance suite
    DisplacementStack stack(geom);
    CHECK(stack.axial.size() == 50u * 128u * 1552u);
    CHECK(spec.extent_axial > static_cast<double>(geom.n_axial) * geom.axial_pitch());
}
