#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "swe/elasticity_map.hpp"
#include "swe/geometry.hpp"

namespace swe {

struct Inclusion {
    double center_axial = 0.0;    // [m]
    double center_lateral = 0.0;  // [m]
    double radius = 0.0;          // [m]
    double youngs = 0.0;          // [Pa]
};

// Elasticity phantom: uniform background, optionally one spherical inclusion
// (the imaging plane cuts it as a disk).
struct PhantomSpec {
    double extent_axial = 0.035;    // [m]
    double extent_lateral = 0.025;  // [m]
    double background_youngs = 0.0; // [Pa]
    std::optional<Inclusion> inclusion;
    double poissons_ratio = 0.495;
    double density = 1000.0;        // [kg/m^3]
    double attenuation = 0.45;      // [Np/m]

    // Young's modulus at a point, background outside the inclusion disk.
    double youngs_at(double z, double x) const;

    // Enforces the dataset ranges: background 15-30 kPa, inclusion radius
    // 1.5-5 mm, stiffness ratio 1.5-4, 0 < nu < 0.5. Throws ConfigError.
    void validate() const;
};

PhantomSpec load_phantom_spec(const std::filesystem::path& path);
PhantomSpec parse_phantom_spec(const std::string& text, const std::string& origin = "<string>");
void save_phantom_spec(const PhantomSpec& spec, const std::filesystem::path& path);

// FNV-1a hash of a file's bytes, hex string; recorded in manifests.
std::string file_content_hash(const std::filesystem::path& path);

// Rasterizes the phantom's Young's modulus onto the scan grid (all pixels
// valid). Used as ground truth for map evaluation.
ElasticityMap truth_elasticity_map(const PhantomSpec& spec, const ScanGeometry& geom);

}  // namespace swe
