#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swe/ncc.hpp"
#include "swe/stack.hpp"

namespace swe {

// Lateral time-of-flight configuration.
struct TofConfig {
    std::size_t max_lag_frames = 20;
    std::size_t axial_average_halfwidth = 8;  // samples averaged into each time profile
    std::size_t lane_distance = 1;            // lateral line separation of a pair
    double min_speed = 0.5;                   // [m/s]
    double max_speed = 10.0;                  // [m/s]
    double min_peak_corr = 0.6;
    double focal_exclusion_halfwidth = 1.5e-3;  // [m]
    bool strict_paper_normalization = false;  // see lateral_xcorr

    void validate(const ScanGeometry& geom) const;
};

// Normalized cross-correlation of two displacement-vs-time profiles over
// the overlapping support, no mean removal:
//   C(j) = sum f(i) g(i+j) / sqrt(sum f(i)^2 sum g(i+j)^2).
// With strict_second_sum_from_f the second denominator sum uses f(i+j)
// instead of g(i+j) (the asymmetric printed form); off by default.
NccProfile lateral_xcorr(std::span<const double> f, std::span<const double> g, std::size_t max_lag,
                         bool strict_second_sum_from_f = false);

struct TimeLagEstimate {
    double dt = 0.0;       // [s]
    double quality = 0.0;  // peak correlation value
    bool refined = false;
    bool degenerate = false;
};

// Fractional-lag peak of a correlation profile converted to seconds.
TimeLagEstimate estimate_time_lag(const NccProfile& profile, double prf);

// Per-pixel shear wave speed with quality gating.
struct SWSMap {
    std::size_t n_lateral = 0;
    std::size_t n_axial = 0;
    std::vector<double> speed;      // [m/s]
    std::vector<double> peak_corr;
    std::vector<std::uint8_t> valid;

    double& speed_at(std::size_t l, std::size_t a) { return speed[l * n_axial + a]; }
    double speed_at(std::size_t l, std::size_t a) const { return speed[l * n_axial + a]; }
    bool is_valid(std::size_t l, std::size_t a) const { return valid[l * n_axial + a] != 0; }
};

// Time-of-flight reconstruction: for each axial row (averaged over
// +-axial_average_halfwidth) and lateral pair (l, l+lane_distance), the
// arrival-time lag gives speed = lane_distance * pitch / dt. The lag sign
// is oriented away from the push line; pixels with a wrong-direction,
// near-zero-lag, low-quality or out-of-range estimate are invalid.
SWSMap sws_map(const DisplacementStack& disp, const ScanGeometry& geom, const TofConfig& cfg);

}  // namespace swe
