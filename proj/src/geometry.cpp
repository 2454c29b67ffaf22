#include "swe/geometry.hpp"

#include <string>

#include "swe/error.hpp"

namespace swe {

void ScanGeometry::validate() const {
    if (n_axial < 1 || n_lateral < 1 || n_frames < 1)
        throw ConfigError("geometry: all counts must be >= 1");
    if (sampling_freq <= 0 || center_freq <= 0 || prf <= 0)
        throw ConfigError("geometry: frequencies must be > 0");
    if (sound_speed <= 0 || lateral_pitch <= 0)
        throw ConfigError("geometry: sound_speed and lateral_pitch must be > 0");
    if (push_depth <= 0)
        throw ConfigError("geometry: push_depth must be > 0");
    if (push_lateral_index >= n_lateral)
        throw ConfigError("geometry: push_lateral_index " + std::to_string(push_lateral_index) +
                          " out of range (n_lateral = " + std::to_string(n_lateral) + ")");
}

std::vector<double> axial_positions(const ScanGeometry& geom) {
    std::vector<double> z(geom.n_axial);
    const double dz = geom.axial_pitch();
    for (std::size_t a = 0; a < geom.n_axial; ++a) z[a] = static_cast<double>(a) * dz;
    return z;
}

std::vector<double> lateral_positions(const ScanGeometry& geom, double extent_lateral) {
    std::vector<double> x(geom.n_lateral);
    const double mid = 0.5 * static_cast<double>(geom.n_lateral - 1);
    for (std::size_t l = 0; l < geom.n_lateral; ++l)
        x[l] = 0.5 * extent_lateral + (static_cast<double>(l) - mid) * geom.lateral_pitch;
    return x;
}

}  // namespace swe
