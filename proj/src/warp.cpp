#include "swe/warp.hpp"

#include <algorithm>
#include <cmath>

#include "swe/error.hpp"

namespace swe {

void Ddf::validate() const {
    if (lateral.rows() != axial.rows() || lateral.cols() != axial.cols())
        throw ConfigError("ddf: component dims differ");
    for (double v : axial.values()) {
        if (!std::isfinite(v)) throw ConfigError("ddf: non-finite axial value");
        if (std::fabs(v) > 1e-3) throw ConfigError("ddf: |axial| > 1 mm");
    }
    for (double v : lateral.values())
        if (!std::isfinite(v)) throw ConfigError("ddf: non-finite lateral value");
}

Grid2d warp_image(GridView moving, const Ddf& ddf, const ScanGeometry& geom) {
    if (ddf.axial.rows() != moving.rows || ddf.axial.cols() != moving.cols)
        throw ConfigError("warp: ddf dims do not match the frame");

    const double inv_dz = 1.0 / geom.axial_pitch();
    const double inv_pitch = 1.0 / geom.lateral_pitch;
    Grid2d shift_r(moving.rows, moving.cols);
    Grid2d shift_c(moving.rows, moving.cols);
    for (std::size_t l = 0; l < moving.rows; ++l) {
        for (std::size_t a = 0; a < moving.cols; ++a) {
            shift_r(l, a) = ddf.lateral(l, a) * inv_pitch;
            shift_c(l, a) = ddf.axial(l, a) * inv_dz;
        }
    }
    Grid2d out(moving.rows, moving.cols);
    warp_pixels(moving, shift_r, shift_c, out, nullptr, nullptr);
    return out;
}

}  // namespace swe
