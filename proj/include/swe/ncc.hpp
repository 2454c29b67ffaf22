#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "swe/stack.hpp"

namespace swe {

// Windowed normalized-cross-correlation tracker configuration.
// window_len 89 samples is ~1.7 mm (about 8 wavelengths at 7 MHz / 40 MHz
// sampling); max_lag 16 covers ~0.3 mm, far above the 10-40 um regime.
struct NccConfig {
    std::size_t window_len = 89;  // odd
    std::size_t window_hop = 20;
    std::size_t max_lag = 16;

    void validate(std::size_t n_axial) const;
};

// Correlation profile C[-max_lag .. max_lag] of a reference window against
// a search segment of length window_len + 2 max_lag.
struct NccProfile {
    std::vector<double> c;
    std::size_t max_lag = 0;
    bool degenerate = false;  // zero-variance window, profile all zero

    double at_lag(long lag) const { return c[static_cast<std::size_t>(lag + static_cast<long>(max_lag))]; }
};

NccProfile ncc_profile(std::span<const double> ref_window, std::span<const double> segment,
                       std::size_t max_lag);

struct PeakEstimate {
    double lag = 0.0;      // fractional samples / frames
    double peak = 0.0;     // correlation value at the integer peak
    bool refined = false;  // false when the peak sat on the profile boundary
};

// Integer argmax plus parabolic vertex refinement, with the sub-sample
// offset clamped to [-0.5, 0.5]. A boundary peak is returned unrefined; a
// perfect-match peak (C >= 1 - 1e-12) keeps the integer lag so exact shifts
// are recovered exactly.
PeakEstimate subsample_peak(std::span<const double> profile);

// Tracks every frame against frame 0: window-center lags are converted to
// meters (lag * c / (2 fs)) and linearly interpolated to the full axial
// grid. Frame 0 of the result is identically zero.
DisplacementStack ncc_track_sequence(const FrameStack& stack, const NccConfig& cfg);

}  // namespace swe
