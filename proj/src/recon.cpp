#include "swe/recon.hpp"

#include <algorithm>
#include <cmath>

#include "swe/error.hpp"

namespace swe {

ElasticityMap young_from_sws(const SWSMap& map, double density) {
    if (density <= 0) throw ConfigError("recon: density must be > 0");
    ElasticityMap out(map.n_lateral, map.n_axial, 0.0, false);
    for (std::size_t i = 0; i < map.speed.size(); ++i) {
        if (map.valid[i]) {
            out.values[i] = 3.0 * density * map.speed[i] * map.speed[i];
            out.valid[i] = 1;
        }
    }
    return out;
}

ElasticityMap median_filter(const ElasticityMap& map, std::size_t k) {
    if (k % 2 == 0) throw ConfigError("median filter: window size must be odd");
    const std::size_t half = k / 2;
    const double min_count = static_cast<double>(k * k) / 4.0;

    ElasticityMap out(map.n_lateral, map.n_axial, 0.0, false);
    std::vector<double> neigh;
    neigh.reserve(k * k);
    for (std::size_t l = 0; l < map.n_lateral; ++l) {
        for (std::size_t a = 0; a < map.n_axial; ++a) {
            if (!map.is_valid(l, a)) continue;  // invalid pixels stay invalid
            neigh.clear();
            const std::size_t l_lo = l >= half ? l - half : 0;
            const std::size_t l_hi = std::min(map.n_lateral - 1, l + half);
            const std::size_t a_lo = a >= half ? a - half : 0;
            const std::size_t a_hi = std::min(map.n_axial - 1, a + half);
            for (std::size_t ll = l_lo; ll <= l_hi; ++ll)
                for (std::size_t aa = a_lo; aa <= a_hi; ++aa)
                    if (map.is_valid(ll, aa)) neigh.push_back(map.at(ll, aa));
            if (static_cast<double>(neigh.size()) < min_count) continue;

            const std::size_t m = neigh.size() / 2;
            std::nth_element(neigh.begin(), neigh.begin() + m, neigh.end());
            double med = neigh[m];
            if (neigh.size() % 2 == 0) {
                const double lower = *std::max_element(neigh.begin(), neigh.begin() + m);
                med = 0.5 * (lower + med);
            }
            out.set(l, a, med, true);
        }
    }
    return out;
}

std::vector<std::uint8_t> focal_exclusion_mask(const ScanGeometry& geom, const TofConfig& cfg) {
    std::vector<std::uint8_t> mask(geom.frame_size(), 0);
    for (std::size_t l = 0; l < geom.n_lateral; ++l) {
        const double dist = std::fabs(static_cast<double>(l) -
                                      static_cast<double>(geom.push_lateral_index)) *
                            geom.lateral_pitch;
        if (dist <= cfg.focal_exclusion_halfwidth + 1e-12) {
            for (std::size_t a = 0; a < geom.n_axial; ++a) mask[l * geom.n_axial + a] = 1;
        }
    }
    return mask;
}

}  // namespace swe
