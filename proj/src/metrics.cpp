#include "swe/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "swe/error.hpp"

namespace swe {

MapCoords map_coords(const ScanGeometry& geom, double extent_lateral) {
    return MapCoords{lateral_positions(geom, extent_lateral), axial_positions(geom)};
}

bool Roi::contains(double z, double x) const {
    if (shape == Shape::rectangle)
        return z >= axial_lo && z <= axial_hi && x >= lateral_lo && x <= lateral_hi;
    const double dz = z - center_axial;
    const double dx = x - center_lateral;
    return dz * dz + dx * dx <= radius * radius;
}

Roi Roi::rectangle(double axial_lo, double axial_hi, double lateral_lo, double lateral_hi, Role role) {
    Roi r;
    r.shape = Shape::rectangle;
    r.role = role;
    r.axial_lo = axial_lo;
    r.axial_hi = axial_hi;
    r.lateral_lo = lateral_lo;
    r.lateral_hi = lateral_hi;
    return r;
}

Roi Roi::disk(double center_axial, double center_lateral, double radius, Role role) {
    Roi r;
    r.shape = Shape::disk;
    r.role = role;
    r.center_axial = center_axial;
    r.center_lateral = center_lateral;
    r.radius = radius;
    return r;
}

namespace {

void check_shapes(const ElasticityMap& map, const std::vector<std::uint8_t>& exclusion,
                  const MapCoords& coords) {
    if (coords.lateral.size() != map.n_lateral || coords.axial.size() != map.n_axial)
        throw ConfigError("metrics: coords do not match the map");
    if (!exclusion.empty() && exclusion.size() != map.values.size())
        throw ConfigError("metrics: exclusion mask does not match the map");
}

inline bool excluded(const std::vector<std::uint8_t>& exclusion, std::size_t idx) {
    return !exclusion.empty() && exclusion[idx] != 0;
}

}  // namespace

RoiStats roi_stats(const ElasticityMap& map, const Roi& roi,
                   const std::vector<std::uint8_t>& exclusion, const MapCoords& coords) {
    check_shapes(map, exclusion, coords);
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t l = 0; l < map.n_lateral; ++l) {
        for (std::size_t a = 0; a < map.n_axial; ++a) {
            const std::size_t idx = l * map.n_axial + a;
            if (!map.valid[idx] || excluded(exclusion, idx)) continue;
            if (!roi.contains(coords.axial[a], coords.lateral[l])) continue;
            sum += map.values[idx];
            ++n;
        }
    }
    if (n == 0) throw NumericError("metrics: ROI contains no qualifying pixel");

    RoiStats stats;
    stats.count = n;
    stats.mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t l = 0; l < map.n_lateral; ++l) {
        for (std::size_t a = 0; a < map.n_axial; ++a) {
            const std::size_t idx = l * map.n_axial + a;
            if (!map.valid[idx] || excluded(exclusion, idx)) continue;
            if (!roi.contains(coords.axial[a], coords.lateral[l])) continue;
            const double d = map.values[idx] - stats.mean;
            ss += d * d;
        }
    }
    stats.std = std::sqrt(ss / static_cast<double>(n));  // population std
    return stats;
}

double snr(const RoiStats& stats) {
    if (stats.std <= 0.0) throw NumericError("snr: zero standard deviation");
    return stats.mean / stats.std;
}

double cnr(const RoiStats& background, const RoiStats& inclusion) {
    const double var_sum = background.std * background.std + inclusion.std * inclusion.std;
    if (var_sum <= 0.0) throw NumericError("cnr: both standard deviations are zero");
    const double dm = background.mean - inclusion.mean;
    return std::sqrt(2.0 * dm * dm / var_sum);
}

double mae(const ElasticityMap& pred, const ElasticityMap& truth, const Roi& roi,
           const std::vector<std::uint8_t>& exclusion, const MapCoords& coords) {
    if (pred.n_lateral != truth.n_lateral || pred.n_axial != truth.n_axial)
        throw ConfigError("mae: map dims differ");
    check_shapes(pred, exclusion, coords);
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t l = 0; l < pred.n_lateral; ++l) {
        for (std::size_t a = 0; a < pred.n_axial; ++a) {
            const std::size_t idx = l * pred.n_axial + a;
            if (!pred.valid[idx] || !truth.valid[idx] || excluded(exclusion, idx)) continue;
            if (!roi.contains(coords.axial[a], coords.lateral[l])) continue;
            sum += std::fabs(pred.values[idx] - truth.values[idx]);
            ++n;
        }
    }
    if (n == 0) throw NumericError("mae: ROI contains no qualifying pixel");
    return sum / static_cast<double>(n);
}

DefaultRois default_rois(const PhantomSpec& spec, const ScanGeometry& geom) {
    DefaultRois rois;
    if (!spec.inclusion) {
        rois.background = Roi::rectangle(0.0, spec.extent_axial, 0.0, spec.extent_lateral,
                                         Roi::Role::background);
        return rois;
    }
    const Inclusion& inc = *spec.inclusion;
    const double eroded = std::max(inc.radius - 1e-3, 0.5e-3);
    rois.inclusion = Roi::disk(inc.center_axial, inc.center_lateral, eroded, Roi::Role::inclusion);

    const double push_x = lateral_positions(geom, spec.extent_lateral)[geom.push_lateral_index];
    const double mirrored = 2.0 * push_x - inc.center_lateral;
    rois.background = Roi::disk(inc.center_axial, mirrored, inc.radius, Roi::Role::background);
    return rois;
}

}  // namespace swe
