#pragma once

#include "swe/grid.hpp"
#include "swe/material.hpp"

namespace swe {

// Acoustic radiation force push: separable Gaussian in space, boxcar in time.
struct PushConfig {
    double focal_depth = 0.019;      // [m]
    double lateral_center = 0.0125;  // [m]
    double duration = 71e-6;         // [s]
    // Beam widths: lateral ~ wavelength * f-number = (1540/7e6) * 2,
    // axial set to a 2 mm focal zone.
    double lateral_sigma = 0.44e-3;  // [m]
    double axial_sigma = 2.0e-3;     // [m]
    double peak_body_force = 1.0;    // [N/m^3]
};

// Space-time body-force descriptor bound to a solver grid.
class PushForce {
public:
    // Throws ConfigError when the focal point lies in the sponge region.
    PushForce(const PushConfig& cfg, const MaterialField& field);

    // Pointwise force [N/m^3] at phantom coordinates (x lateral, z axial).
    double eval(double x, double z, double t) const;

    // Fraction of [t, t+dt] overlapping the push window; the solver scales
    // the spatial profile by this so the injected impulse is dt-exact.
    double time_factor(double t, double dt) const;

    const Grid2d& spatial() const { return spatial_; }
    const PushConfig& config() const { return cfg_; }
    bool active(double t, double dt) const { return t < cfg_.duration && t + dt > 0.0; }

private:
    PushConfig cfg_;
    Grid2d spatial_;  // peak_body_force * Gaussian, on the solver grid
};

PushForce build_push_force(const PushConfig& cfg, const MaterialField& field);

}  // namespace swe
