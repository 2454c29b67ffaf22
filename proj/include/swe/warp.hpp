#pragma once

#include "swe/geometry.hpp"
#include "swe/grid.hpp"

namespace swe {

// Dense displacement field in meters, one value per frame pixel.
// The lateral component is always allocated; it stays zero when the
// estimation is axial-only.
struct Ddf {
    Grid2d axial;    // [m]
    Grid2d lateral;  // [m]

    Ddf() = default;
    Ddf(std::size_t n_lateral, std::size_t n_axial)
        : axial(n_lateral, n_axial), lateral(n_lateral, n_axial) {}

    void validate() const;  // finite, |axial| <= 1 mm
};

// Samples `moving` at (z + u_ax/dz, x + u_lat/pitch) in pixel units with
// bilinear interpolation, edge-clamped: maps the moving image into the
// fixed image space.
Grid2d warp_image(GridView moving, const Ddf& ddf, const ScanGeometry& geom);

// Pixel-unit warp kernel shared by warp_image and the variational solver.
// shift_r / shift_c are per-pixel displacements in row / column units.
// When non-null, d_dr / d_dc receive the derivative of the warped value
// with respect to the local shift (zero where the sample is edge-clamped).
void warp_pixels(GridView moving, GridView shift_r, GridView shift_c, Grid2d& out,
                 Grid2d* d_dr, Grid2d* d_dc);

}  // namespace swe
