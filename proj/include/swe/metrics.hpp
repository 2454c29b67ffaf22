#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swe/elasticity_map.hpp"
#include "swe/geometry.hpp"
#include "swe/phantom.hpp"

namespace swe {

// Physical pixel positions of a map, shared by every ROI computation.
struct MapCoords {
    std::vector<double> lateral;  // [m], one per line
    std::vector<double> axial;    // [m], one per sample
};

MapCoords map_coords(const ScanGeometry& geom, double extent_lateral);

// Evaluation region: rectangle or disk in phantom coordinates.
struct Roi {
    enum class Shape { rectangle, disk };
    enum class Role { background, inclusion, global };

    Shape shape = Shape::rectangle;
    Role role = Role::global;
    // rectangle
    double axial_lo = 0.0, axial_hi = 0.0;      // [m]
    double lateral_lo = 0.0, lateral_hi = 0.0;  // [m]
    // disk
    double center_axial = 0.0, center_lateral = 0.0, radius = 0.0;  // [m]

    bool contains(double z, double x) const;

    static Roi rectangle(double axial_lo, double axial_hi, double lateral_lo, double lateral_hi,
                         Role role = Role::global);
    static Roi disk(double center_axial, double center_lateral, double radius,
                    Role role = Role::global);
};

struct RoiStats {
    double mean = 0.0;  // [Pa]
    double std = 0.0;   // [Pa], population
    std::size_t count = 0;
};

// Mean and population standard deviation over pixels that are inside the
// ROI, valid, and not excluded. Throws NumericError when no pixel qualifies.
RoiStats roi_stats(const ElasticityMap& map, const Roi& roi,
                   const std::vector<std::uint8_t>& exclusion, const MapCoords& coords);

// SNR = mu / sigma; sigma = 0 is an error.
double snr(const RoiStats& stats);

// CNR = sqrt(2 (mu_b - mu_i)^2 / (sigma_b^2 + sigma_i^2)).
double cnr(const RoiStats& background, const RoiStats& inclusion);

// Mean absolute error |pred - truth| over pixels valid in both maps,
// inside the ROI and not excluded.
double mae(const ElasticityMap& pred, const ElasticityMap& truth, const Roi& roi,
           const std::vector<std::uint8_t>& exclusion, const MapCoords& coords);

// Default evaluation regions: inclusion ROI is the inclusion disk eroded by
// 1 mm; background ROI mirrors the disk across the push line. Homogeneous
// phantoms get a global background ROI and no inclusion ROI.
struct DefaultRois {
    Roi background;
    std::optional<Roi> inclusion;
};

DefaultRois default_rois(const PhantomSpec& spec, const ScanGeometry& geom);

}  // namespace swe
