#include "swe/push.hpp"

#include <algorithm>
#include <cmath>

#include "swe/error.hpp"

namespace swe {

PushForce::PushForce(const PushConfig& cfg, const MaterialField& field) : cfg_(cfg) {
    if (cfg.duration <= 0) throw ConfigError("push: duration must be > 0");
    if (cfg.lateral_sigma <= 0 || cfg.axial_sigma <= 0)
        throw ConfigError("push: sigmas must be > 0");

    // Focal point must be inside the non-sponge interior.
    const double margin = 0.0;
    const double x_lo = field.node_x(field.sponge) - margin;
    const double x_hi = field.node_x(field.nx() - 1 - field.sponge) + margin;
    const double z_lo = field.node_z(field.sponge) - margin;
    const double z_hi = field.node_z(field.nz() - 1 - field.sponge) + margin;
    if (cfg.lateral_center < x_lo || cfg.lateral_center > x_hi || cfg.focal_depth < z_lo ||
        cfg.focal_depth > z_hi)
        throw ConfigError("push: focal point lies outside the interior (sponge-free) region");

    spatial_ = Grid2d(field.nx(), field.nz());
    const double inv2sx = 1.0 / (2.0 * cfg.lateral_sigma * cfg.lateral_sigma);
    const double inv2sz = 1.0 / (2.0 * cfg.axial_sigma * cfg.axial_sigma);
    for (std::size_t i = 0; i < field.nx(); ++i) {
        const double dx = field.node_x(i) - cfg.lateral_center;
        for (std::size_t j = 0; j < field.nz(); ++j) {
            const double dz = field.node_z(j) - cfg.focal_depth;
            spatial_(i, j) = cfg.peak_body_force * std::exp(-dx * dx * inv2sx - dz * dz * inv2sz);
        }
    }
}

double PushForce::eval(double x, double z, double t) const {
    if (t < 0.0 || t > cfg_.duration) return 0.0;
    const double dx = x - cfg_.lateral_center;
    const double dz = z - cfg_.focal_depth;
    return cfg_.peak_body_force *
           std::exp(-dx * dx / (2.0 * cfg_.lateral_sigma * cfg_.lateral_sigma) -
                    dz * dz / (2.0 * cfg_.axial_sigma * cfg_.axial_sigma));
}

double PushForce::time_factor(double t, double dt) const {
    const double lo = std::max(t, 0.0);
    const double hi = std::min(t + dt, cfg_.duration);
    if (hi <= lo) return 0.0;
    return (hi - lo) / dt;
}

PushForce build_push_force(const PushConfig& cfg, const MaterialField& field) {
    return PushForce(cfg, field);
}

}  // namespace swe
