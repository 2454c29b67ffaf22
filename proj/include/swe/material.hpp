#pragma once

#include "swe/grid.hpp"
#include "swe/phantom.hpp"

namespace swe {

// Rasterized material properties on the solver grid.
//
// The grid is node-centered with spacing h; the phantom interior spans
// [0, extent] in each direction and a sponge margin of `sponge` cells is
// added on every edge. Grids are indexed (lateral i, axial j); node
// coordinates are x = (i - sponge) h, z = (j - sponge) h.
struct MaterialField {
    double h = 0.0;          // [m]
    std::size_t sponge = 0;  // cells per edge
    double density = 0.0;    // [kg/m^3]
    Grid2d youngs;           // [Pa]
    Grid2d shear_modulus;    // [Pa], mu = E / (2 (1 + nu))
    Grid2d shear_speed;      // [m/s], sqrt(mu / rho)
    Grid2d damping;          // [1/s], bulk attenuation + boundary sponge
    double max_shear_speed = 0.0;  // [m/s]

    std::size_t nx() const { return youngs.rows(); }  // lateral nodes
    std::size_t nz() const { return youngs.cols(); }  // axial nodes

    double node_x(std::size_t i) const { return (static_cast<double>(i) - static_cast<double>(sponge)) * h; }
    double node_z(std::size_t j) const { return (static_cast<double>(j) - static_cast<double>(sponge)) * h; }

    bool in_interior(std::size_t i, std::size_t j) const {
        return i >= sponge && i < nx() - sponge && j >= sponge && j < nz() - sponge;
    }
};

struct MaterialOptions {
    std::size_t sponge_cells = 15;
    double sponge_strength = 2.0e4;  // [1/s] peak damping at the outer edge
};

// Rasterizes a phantom at grid spacing h (h <= 0.2 mm, and h must divide the
// extents to within one cell). Sponge damping grows quadratically toward
// each boundary; bulk damping is 2 * attenuation * c_s.
MaterialField build_material_field(const PhantomSpec& spec, double h,
                                   const MaterialOptions& opt = MaterialOptions{});

}  // namespace swe
