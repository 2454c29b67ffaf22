#include "swe/material.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swe/error.hpp"

namespace swe {

namespace {

std::size_t interior_nodes(double extent, double h, const char* what) {
    const double n_exact = extent / h;
    const double n_round = std::round(n_exact);
    if (std::fabs(n_exact - n_round) > 1.0)
        throw ConfigError(std::string("material: h does not divide ") + what + " to within one cell");
    return static_cast<std::size_t>(n_round) + 1;  // nodes span [0, extent]
}

}  // namespace

MaterialField build_material_field(const PhantomSpec& spec, double h, const MaterialOptions& opt) {
    if (h <= 0) throw ConfigError("material: h must be > 0");
    if (h > 2.0e-4 + 1e-12) throw ConfigError("material: h must be <= 0.2 mm");
    if (spec.inclusion) {
        const Inclusion& inc = *spec.inclusion;
        if (inc.center_axial - inc.radius < 0 || inc.center_axial + inc.radius > spec.extent_axial ||
            inc.center_lateral - inc.radius < 0 || inc.center_lateral + inc.radius > spec.extent_lateral)
            throw ConfigError("material: inclusion outside phantom extent");
    }

    MaterialField f;
    f.h = h;
    f.sponge = opt.sponge_cells;
    f.density = spec.density;

    const std::size_t nx = interior_nodes(spec.extent_lateral, h, "extent_lateral") + 2 * f.sponge;
    const std::size_t nz = interior_nodes(spec.extent_axial, h, "extent_axial") + 2 * f.sponge;
    f.youngs = Grid2d(nx, nz);
    f.shear_modulus = Grid2d(nx, nz);
    f.shear_speed = Grid2d(nx, nz);
    f.damping = Grid2d(nx, nz);

    const double nu_factor = 2.0 * (1.0 + spec.poissons_ratio);
    double c_max = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        // Material continues into the sponge with clamped coordinates.
        const double x = std::clamp(f.node_x(i), 0.0, spec.extent_lateral);
        for (std::size_t j = 0; j < nz; ++j) {
            const double z = std::clamp(f.node_z(j), 0.0, spec.extent_axial);
            const double E = spec.youngs_at(z, x);
            const double mu = E / nu_factor;
            const double c = std::sqrt(mu / spec.density);
            f.youngs(i, j) = E;
            f.shear_modulus(i, j) = mu;
            f.shear_speed(i, j) = c;
            c_max = std::max(c_max, c);

            // Bulk attenuation mapped to a velocity-proportional damping
            // rate; amplitude-decay match for a traveling wave.
            double gamma = 2.0 * spec.attenuation * c;

            // Sponge: quadratic ramp over `sponge` cells at each edge.
            const std::size_t di = std::min(i, nx - 1 - i);
            const std::size_t dj = std::min(j, nz - 1 - j);
            const std::size_t d = std::min(di, dj);
            if (d < f.sponge && f.sponge > 0) {
                const double p = static_cast<double>(f.sponge - d) / static_cast<double>(f.sponge);
                gamma += opt.sponge_strength * p * p;
            }
            f.damping(i, j) = gamma;
        }
    }
    f.max_shear_speed = c_max;
    return f;
}

}  // namespace swe
