#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "swe/geometry.hpp"
#include "swe/phantom.hpp"

namespace swe_test {

// Self-cleaning unique directory for file-based tests.
class TempDir {
public:
    TempDir() {
        const auto base = std::filesystem::temp_directory_path();
        std::random_device rd;
        for (;;) {
            path_ = base / ("swe_test_" + std::to_string(rd()));
            if (std::filesystem::create_directory(path_)) break;
        }
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

// Small grid for fast sequence-level tests: ~7.7 mm x 9.4 mm imaging view.
inline swe::ScanGeometry small_geometry() {
    swe::ScanGeometry g;
    g.n_axial = 400;
    g.n_lateral = 48;
    g.n_frames = 12;
    g.push_lateral_index = 24;
    g.push_depth = 4e-3;
    return g;
}

inline swe::PhantomSpec small_phantom(double youngs = 20e3) {
    swe::PhantomSpec spec;
    spec.extent_axial = 0.012;
    spec.extent_lateral = 0.012;
    spec.background_youngs = youngs;
    return spec;
}

}  // namespace swe_test
