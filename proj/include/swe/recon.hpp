#pragma once

#include <cstdint>
#include <vector>

#include "swe/elasticity_map.hpp"
#include "swe/tof.hpp"

namespace swe {

// E = 3 rho c^2 (incompressible limit) on valid pixels; mask propagated.
ElasticityMap young_from_sws(const SWSMap& map, double density);

// Validity-aware k x k median: the median is taken over valid neighbors
// only, and a pixel needs at least k^2/4 valid neighbors to stay valid.
// Even-sized neighbor sets use the mean of the two middle values.
ElasticityMap median_filter(const ElasticityMap& map, std::size_t k = 9);

// Column mask, true = excluded: lateral positions within
// focal_exclusion_halfwidth of the push line. Shape [lateral][axial].
std::vector<std::uint8_t> focal_exclusion_mask(const ScanGeometry& geom, const TofConfig& cfg);

}  // namespace swe
