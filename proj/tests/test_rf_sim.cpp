#include <cmath>

#include "doctest.h"
#include "swe/error.hpp"
#include "swe/ncc.hpp"
#include "swe/rf.hpp"
#include "test_util.hpp"

using namespace swe;

TEST_CASE("scatterer count = area x density") {
    PhantomSpec spec;
    spec.background_youngs = 20e3;  // 3.5 cm x 2.5 cm default extent
    // 1500 per cm^2 = 1.5e7 per m^2 over 8.75 cm^2 -> 13125
    const auto cloud = seed_scatterers(spec, 1.5e7, 42);
    CHECK(cloud.size() == 13125);

    for (const auto& p : cloud.positions) {
        CHECK(p.z >= 0.0);
        CHECK(p.z <= spec.extent_axial);
        CHECK(p.x >= 0.0);
        CHECK(p.x <= spec.extent_lateral);
    }

    SUBCASE("same seed is bit-identical") {
        const auto again = seed_scatterers(spec, 1.5e7, 42);
        REQUIRE(again.size() == cloud.size());
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            CHECK(again.positions[i].z == cloud.positions[i].z);
            CHECK(again.positions[i].x == cloud.positions[i].x);
            CHECK(again.amplitudes[i] == cloud.amplitudes[i]);
        }
    }
    SUBCASE("different seed differs") {
        const auto other = seed_scatterers(spec, 1.5e7, 43);
        bool any_diff = false;
        for (std::size_t i = 0; i < cloud.size(); ++i)
            any_diff = any_diff || other.positions[i].z != cloud.positions[i].z;
        CHECK(any_diff);
    }
    SUBCASE("zero density rejected") { CHECK_THROWS_AS(seed_scatterers(spec, 0.0, 1), ConfigError); }
}

TEST_CASE("sample_displacement: bilinear with edge clamping") {
    ScanGeometry g = swe_test::small_geometry();
    const double ext = 0.012;
    DisplacementStack truth(g);
    truth.axial.resize(g.stack_size());
    for (std::size_t f = 0; f < g.n_frames; ++f)
        for (std::size_t l = 0; l < g.n_lateral; ++l)
            for (std::size_t a = 0; a < g.n_axial; ++a)
                truth.ax(f, l, a) = (f == 0) ? 0.0 : 1e-6 * static_cast<double>(a % 7) +
                                                         2e-6 * static_cast<double>(l % 5);

    const auto xs = lateral_positions(g, ext);
    const double dz = g.axial_pitch();

    SUBCASE("grid node is exact") {
        std::vector<ScattererCloud::Point> pts{{10.0 * dz, xs[7]}};
        const auto u = sample_displacement(truth, 3, pts, ext);
        CHECK(u[0] == doctest::Approx(truth.ax(3, 7, 10)).epsilon(1e-15));
    }
    SUBCASE("center of four nodes averages them") {
        DisplacementStack quad(g);
        quad.ax(1, 7, 10) = 0.0;
        quad.ax(1, 7, 11) = 0.0;
        quad.ax(1, 8, 10) = 2e-6;
        quad.ax(1, 8, 11) = 2e-6;
        std::vector<ScattererCloud::Point> pts{{10.5 * dz, 0.5 * (xs[7] + xs[8])}};
        const auto u = sample_displacement(quad, 1, pts, ext);
        CHECK(u[0] == doctest::Approx(1e-6).epsilon(1e-9));
    }
    SUBCASE("outside the grid clamps to the nearest edge node") {
        std::vector<ScattererCloud::Point> pts{
            {-5.0 * dz, xs[7]},                                   // above the first sample
            {(static_cast<double>(g.n_axial) + 4.0) * dz, xs[7]}, // below the last
            {10.0 * dz, xs[0] - 3.0 * g.lateral_pitch}};          // left of the first line
        const auto u = sample_displacement(truth, 2, pts, ext);
        CHECK(u[0] == doctest::Approx(truth.ax(2, 7, 0)).epsilon(1e-12));
        CHECK(u[1] == doctest::Approx(truth.ax(2, 7, g.n_axial - 1)).epsilon(1e-12));
        CHECK(u[2] == doctest::Approx(truth.ax(2, 0, 10)).epsilon(1e-12));
    }
}

TEST_CASE("single-scatterer echo lands at the two-way delay") {
    ScanGeometry g;  // defaults: 40 MHz, 1540 m/s
    PulseSpec pulse;
    const double ext = 0.025;
    const auto xs = lateral_positions(g, ext);

    ScattererCloud cloud;
    cloud.positions = {{0.015, xs[64]}};
    cloud.amplitudes = {1.0};
    const std::vector<double> disp{0.0};
    const Grid2d frame = render_rf_frame(cloud, disp, pulse, g, ext);

    // 2 z fs / c = 2 * 0.015 * 40e6 / 1540 = 779.2 -> peak at sample 779
    std::size_t argmax = 0;
    for (std::size_t a = 0; a < g.n_axial; ++a)
        if (frame(64, a) > frame(64, argmax)) argmax = a;
    CHECK(argmax == 779);

    // lateral beam profile: neighbor line attenuated by the Gaussian
    const double expected = std::exp(-g.lateral_pitch * g.lateral_pitch /
                                     (2.0 * pulse.lateral_sigma * pulse.lateral_sigma));
    CHECK(frame(65, argmax) == doctest::Approx(frame(64, argmax) * expected).epsilon(1e-9));

    SUBCASE("zero scatterers give an all-zero frame") {
        ScattererCloud empty;
        const Grid2d zero = render_rf_frame(empty, {}, pulse, g, ext);
        for (double v : zero.values()) CHECK(v == 0.0);
    }
    SUBCASE("doubling an amplitude doubles its contribution") {
        ScattererCloud twice = cloud;
        twice.amplitudes[0] = 2.0;
        const Grid2d frame2 = render_rf_frame(twice, disp, pulse, g, ext);
        for (std::size_t a = 770; a < 790; ++a)
            CHECK(frame2(64, a) == doctest::Approx(2.0 * frame(64, a)).epsilon(1e-14));
    }
    SUBCASE("displacement list length must match") {
        CHECK_THROWS_AS(render_rf_frame(cloud, {}, pulse, g, ext), ConfigError);
    }
}

TEST_CASE("rigid axial shift moves the rf signal by 2 delta fs / c samples") {
    ScanGeometry g = swe_test::small_geometry();
    g.n_axial = 900;
    PhantomSpec spec = swe_test::small_phantom();
    spec.extent_axial = 0.020;
    PulseSpec pulse;
    const auto cloud = seed_scatterers(spec, 1.5e7, 11);

    const double delta = 20e-6;  // expected shift 2*20e-6*40e6/1540 = 1.0390 samples
    const std::vector<double> zeros(cloud.size(), 0.0);
    const std::vector<double> shifted(cloud.size(), delta);
    const Grid2d f0 = render_rf_frame(cloud, zeros, pulse, g, spec.extent_lateral);
    const Grid2d f1 = render_rf_frame(cloud, shifted, pulse, g, spec.extent_lateral);

    const double expected = 2.0 * delta * g.sampling_freq / g.sound_speed;
    for (std::size_t l = 10; l < g.n_lateral - 10; l += 9) {
        const std::size_t center = 450, half = 128, max_lag = 8;
        const auto profile = ncc_profile(
            std::span<const double>(f0.row(l) + center - half, 2 * half + 1),
            std::span<const double>(f1.row(l) + center - half - max_lag, 2 * half + 1 + 2 * max_lag),
            max_lag);
        REQUIRE(!profile.degenerate);
        const PeakEstimate peak = subsample_peak(profile.c);
        const double lag = peak.lag - static_cast<double>(max_lag);
        CHECK(lag == doctest::Approx(expected).epsilon(0.1 / expected));
    }
}

TEST_CASE("rf sequence: dims, determinism, reference frame") {
    ScanGeometry g = swe_test::small_geometry();
    g.n_frames = 4;
    const PhantomSpec spec = swe_test::small_phantom();
    PulseSpec pulse;

    DisplacementStack truth(g);
    for (std::size_t f = 1; f < g.n_frames; ++f)
        for (std::size_t l = 0; l < g.n_lateral; ++l)
            for (std::size_t a = 0; a < g.n_axial; ++a)
                truth.ax(f, l, a) = 1.5e-5 * std::sin(0.02 * static_cast<double>(a) +
                                                      0.3 * static_cast<double>(l) +
                                                      0.8 * static_cast<double>(f));

    const FrameStack rf = simulate_rf_sequence(spec, truth, pulse, g, 99);
    CHECK(rf.data.size() == g.stack_size());

    SUBCASE("same inputs give a bit-identical stack") {
        const FrameStack again = simulate_rf_sequence(spec, truth, pulse, g, 99);
        CHECK(again.data == rf.data);
    }
    SUBCASE("zero truth makes every frame equal frame 0") {
        DisplacementStack still(g);
        const FrameStack quiet = simulate_rf_sequence(spec, still, pulse, g, 99);
        for (std::size_t f = 1; f < g.n_frames; ++f)
            for (std::size_t i = 0; i < g.frame_size(); ++i)
                CHECK(quiet.data[f * g.frame_size() + i] == quiet.data[i]);
    }
    SUBCASE("frame energy stays within +-50 percent across frames") {
        std::vector<double> energy(g.n_frames, 0.0);
        for (std::size_t f = 0; f < g.n_frames; ++f) {
            const GridView fr = rf.frame(f);
            for (std::size_t i = 0; i < fr.size(); ++i) energy[f] += fr.data[i] * fr.data[i];
        }
        double mean = 0.0;
        for (double e : energy) mean += e;
        mean /= static_cast<double>(g.n_frames);
        for (double e : energy) {
            CHECK(e >= 0.5 * mean);
            CHECK(e <= 1.5 * mean);
        }
    }
    SUBCASE("additive noise changes samples but is seed-deterministic") {
        FrameStack noisy = rf;
        add_rf_noise(noisy, 0.1, 7);
        CHECK(noisy.data != rf.data);
        FrameStack noisy2 = rf;
        add_rf_noise(noisy2, 0.1, 7);
        CHECK(noisy.data == noisy2.data);
    }
}
