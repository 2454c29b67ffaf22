#pragma once

#include <cstdint>
#include <vector>

#include "swe/phantom.hpp"

namespace swe {

// Sub-resolution point scatterers producing the speckle texture.
struct ScattererCloud {
    struct Point {
        double z = 0.0;  // axial [m]
        double x = 0.0;  // lateral [m]
    };
    std::vector<Point> positions;
    std::vector<double> amplitudes;  // standard normal
    std::uint64_t seed = 0;

    std::size_t size() const { return positions.size(); }
};

// Default areal density: 30,000 scatterers per cm^3 times a 0.5 mm
// elevational slice = 1500 per cm^2.
constexpr double kDefaultScattererDensity = 1.5e7;  // [1/m^2]

// Uniform positions over the phantom extent, normal amplitudes; identical
// seeds give bit-identical clouds.
ScattererCloud seed_scatterers(const PhantomSpec& spec, double density_2d, std::uint64_t seed);

}  // namespace swe
