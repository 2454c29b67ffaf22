#pragma once

#include <cstddef>
#include <vector>

namespace swe {

// Acquisition geometry of one imaging sequence.
//
// Defaults describe a linear probe acquiring 50 frames of 1552x128 RF
// samples at 10 kHz PRF, 40 MHz sampling, 7 MHz center frequency.
struct ScanGeometry {
    std::size_t n_axial = 1552;    // RF samples per line
    std::size_t n_lateral = 128;   // lines per frame
    std::size_t n_frames = 50;     // frames per sequence
    double sampling_freq = 40e6;   // [Hz]
    double center_freq = 7e6;      // [Hz]
    double sound_speed = 1540.0;   // [m/s]
    double lateral_pitch = 2.0e-4; // [m]
    double prf = 1.0e4;            // [Hz]
    std::size_t push_lateral_index = 64;  // line index of the push
    double push_depth = 1.9e-2;    // [m]

    // Axial sample spacing in depth: c / (2 fs). 19.25 um for defaults.
    double axial_pitch() const { return sound_speed / (2.0 * sampling_freq); }

    std::size_t frame_size() const { return n_lateral * n_axial; }
    std::size_t stack_size() const { return n_frames * frame_size(); }

    // Throws ConfigError when an invariant is violated.
    void validate() const;
};

// Depth of each axial sample, z = a * axial_pitch, transducer face at z = 0.
std::vector<double> axial_positions(const ScanGeometry& geom);

// Lateral position of each scan line inside a phantom of the given width;
// the aperture is centered on the phantom.
std::vector<double> lateral_positions(const ScanGeometry& geom, double extent_lateral);

}  // namespace swe
