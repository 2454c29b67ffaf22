#include "swe/elasticity_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "swe/error.hpp"

namespace swe {

std::size_t ElasticityMap::valid_count() const {
    std::size_t n = 0;
    for (auto v : valid) n += (v != 0);
    return n;
}

namespace {

void export_csv(const ElasticityMap& map, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    char buf[40];
    for (std::size_t l = 0; l < map.n_lateral; ++l) {
        std::string line;
        for (std::size_t a = 0; a < map.n_axial; ++a) {
            if (a) line += ',';
            if (map.is_valid(l, a)) {
                std::snprintf(buf, sizeof(buf), "%.9g", map.at(l, a));
                line += buf;
            } else {
                line += "nan";
            }
        }
        out << line << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

void export_pgm(const ElasticityMap& map, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    // P5, 16-bit, most significant byte first. Rows = lateral lines.
    out << "P5\n" << map.n_axial << " " << map.n_lateral << "\n65535\n";
    const double scale = 65535.0 / 100e3;  // linear over [0, 100 kPa]
    for (std::size_t l = 0; l < map.n_lateral; ++l) {
        for (std::size_t a = 0; a < map.n_axial; ++a) {
            unsigned px = 0;
            if (map.is_valid(l, a)) {
                const double v = std::clamp(map.at(l, a) * scale, 0.0, 65535.0);
                px = static_cast<unsigned>(std::lround(v));
            }
            const unsigned char bytes[2] = {static_cast<unsigned char>((px >> 8) & 0xff),
                                            static_cast<unsigned char>(px & 0xff)};
            out.write(reinterpret_cast<const char*>(bytes), 2);
        }
    }
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

void export_elasticity_map(const ElasticityMap& map, const std::filesystem::path& path, MapFormat format) {
    if (map.n_lateral == 0 || map.n_axial == 0 || map.valid_count() == 0)
        throw FormatError("elasticity map export: no valid pixels");
    if (format == MapFormat::csv)
        export_csv(map, path);
    else
        export_pgm(map, path);
}

ElasticityMap import_elasticity_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    std::vector<std::vector<double>> rows;
    std::vector<std::vector<std::uint8_t>> masks;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> vals;
        std::vector<std::uint8_t> mask;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            if (cell == "nan" || cell == "NaN" || cell == "NAN") {
                vals.push_back(0.0);
                mask.push_back(0);
            } else {
                try {
                    vals.push_back(std::stod(cell));
                } catch (const std::exception&) {
                    throw FormatError(path.string() + ": bad CSV cell `" + cell + "`");
                }
                mask.push_back(1);
            }
        }
        if (!rows.empty() && vals.size() != rows.front().size())
            throw FormatError(path.string() + ": ragged CSV rows");
        rows.push_back(std::move(vals));
        masks.push_back(std::move(mask));
    }
    if (rows.empty()) throw FormatError(path.string() + ": empty CSV map");

    ElasticityMap map(rows.size(), rows.front().size());
    for (std::size_t l = 0; l < map.n_lateral; ++l)
        for (std::size_t a = 0; a < map.n_axial; ++a)
            map.set(l, a, rows[l][a], masks[l][a] != 0);
    return map;
}

void export_validity_mask(const ElasticityMap& map, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    for (std::size_t l = 0; l < map.n_lateral; ++l) {
        for (std::size_t a = 0; a < map.n_axial; ++a) {
            if (a) out << ',';
            out << (map.is_valid(l, a) ? '1' : '0');
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace swe
