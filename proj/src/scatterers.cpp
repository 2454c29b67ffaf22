#include "swe/scatterers.hpp"

#include <cmath>

#include "swe/error.hpp"
#include "swe/rng.hpp"

namespace swe {

ScattererCloud seed_scatterers(const PhantomSpec& spec, double density_2d, std::uint64_t seed) {
    if (density_2d <= 0) throw ConfigError("scatterers: density must be > 0");
    const double area = spec.extent_axial * spec.extent_lateral;
    if (area <= 0) throw ConfigError("scatterers: zero phantom area");

    const std::size_t count = static_cast<std::size_t>(std::llround(density_2d * area));
    ScattererCloud cloud;
    cloud.seed = seed;
    cloud.positions.resize(count);
    cloud.amplitudes.resize(count);

    Rng rng(seed);
    for (std::size_t k = 0; k < count; ++k) {
        cloud.positions[k].z = rng.uniform(0.0, spec.extent_axial);
        cloud.positions[k].x = rng.uniform(0.0, spec.extent_lateral);
    }
    for (std::size_t k = 0; k < count; ++k) cloud.amplitudes[k] = rng.normal();
    return cloud;
}

}  // namespace swe
