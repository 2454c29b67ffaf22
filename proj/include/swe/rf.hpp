#pragma once

#include <cstdint>
#include <vector>

#include "swe/grid.hpp"
#include "swe/scatterers.hpp"
#include "swe/stack.hpp"

namespace swe {

// Gauss-weighted cosine pulse; fractional bandwidth is defined at FWHM of
// the spectral envelope, so sigma_t = 2.355 / (2 pi f0 fbw).
struct PulseSpec {
    double center_freq = 7e6;            // [Hz]
    double fractional_bandwidth = 0.6;
    double lateral_sigma = 0.3e-3;       // [m] beam width

    double time_sigma() const;           // [s]
    void validate() const;
};

// Axial displacement of the given frame at arbitrary positions, bilinear on
// the scan grid with edge clamping.
std::vector<double> sample_displacement(const DisplacementStack& truth, std::size_t frame,
                                        const std::vector<ScattererCloud::Point>& positions,
                                        double extent_lateral);

// Renders one RF frame [lateral][axial]: each scatterer, displaced axially,
// adds a lateral-Gaussian-weighted echo pulse at two-way delay 2(z+u)/c.
Grid2d render_rf_frame(const ScattererCloud& cloud, const std::vector<double>& displacement,
                       const PulseSpec& pulse, const ScanGeometry& geom, double extent_lateral);

// Frame k is rendered from the cloud displaced by truth frame k; frame 0 is
// the undisplaced reference. Deterministic in (spec, truth, seed).
FrameStack simulate_rf_sequence(const PhantomSpec& spec, const DisplacementStack& truth,
                                const PulseSpec& pulse, const ScanGeometry& geom,
                                std::uint64_t seed,
                                double density_2d = kDefaultScattererDensity);

// Optional additive Gaussian noise post-process (std relative to the RF RMS).
void add_rf_noise(FrameStack& stack, double relative_std, std::uint64_t seed);

}  // namespace swe
