#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace swe {

// Per-pixel Young's modulus [Pa] with a validity mask.
// Layout matches frames: [lateral][axial], axial fastest.
struct ElasticityMap {
    std::size_t n_lateral = 0;
    std::size_t n_axial = 0;
    std::vector<double> values;
    std::vector<std::uint8_t> valid;

    ElasticityMap() = default;
    ElasticityMap(std::size_t nl, std::size_t na, double fill = 0.0, bool all_valid = true)
        : n_lateral(nl), n_axial(na), values(nl * na, fill), valid(nl * na, all_valid ? 1 : 0) {}

    double& at(std::size_t l, std::size_t a) { return values[l * n_axial + a]; }
    double at(std::size_t l, std::size_t a) const { return values[l * n_axial + a]; }
    bool is_valid(std::size_t l, std::size_t a) const { return valid[l * n_axial + a] != 0; }
    void set(std::size_t l, std::size_t a, double v, bool ok) {
        values[l * n_axial + a] = v;
        valid[l * n_axial + a] = ok ? 1 : 0;
    }

    std::size_t valid_count() const;
};

enum class MapFormat { csv, pgm };

// CSV: one row per lateral line, invalid cells as "nan".
// PGM: binary 16-bit grayscale, linear over [0, 100 kPa] clamped, invalid = 0.
// Throws FormatError when the map has no valid pixel.
void export_elasticity_map(const ElasticityMap& map, const std::filesystem::path& path, MapFormat format);

// Reads a map written in the CSV format ("nan" cells become invalid).
ElasticityMap import_elasticity_csv(const std::filesystem::path& path);

// 0/1 validity mask as CSV, same shape as the map.
void export_validity_mask(const ElasticityMap& map, const std::filesystem::path& path);

}  // namespace swe
