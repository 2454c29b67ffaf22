#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "swe/geometry.hpp"
#include "swe/kv.hpp"
#include "swe/material.hpp"
#include "swe/metrics.hpp"
#include "swe/ncc.hpp"
#include "swe/rf.hpp"
#include "swe/tof.hpp"
#include "swe/variational.hpp"

namespace swe {

inline constexpr const char* kVersionString = "swe 1.0.0";

// Typed view of a `key = value` run configuration with dotted sections.
// See README for the full key reference.
struct RunConfig {
    std::filesystem::path config_path;
    std::filesystem::path phantom_path;
    std::filesystem::path out_dir = ".";
    std::string phantom_id;
    std::uint64_t seed = 1;

    ScanGeometry geometry;

    // simulator
    double sim_h = 1.5e-4;   // [m]
    double sim_dt = 0.0;     // [s], 0 = auto from CFL
    double sim_target_peak = 2.5e-5;  // [m]
    MaterialOptions material;
    double push_duration = 71e-6;      // [s]
    double push_lateral_sigma = 0.44e-3;  // [m]
    double push_axial_sigma = 2.0e-3;     // [m]

    // rf renderer
    PulseSpec pulse;
    double rf_density = kDefaultScattererDensity;  // [1/m^2]
    double rf_noise_std = 0.0;                     // relative to RF rms

    // trackers
    std::string tracker = "ncc";  // ncc | variational | both
    NccConfig ncc;
    VariationalConfig variational;

    // reconstruction + evaluation
    TofConfig tof;
    std::size_t median_k = 9;
    std::optional<Roi> roi_background;  // explicit overrides of the defaults
    std::optional<Roi> roi_inclusion;

    // Parses the file and applies the command-line overrides (empty/zero =
    // not given). Throws ConfigError on unknown keys, bad values or a
    // missing phantom file when `need_phantom`.
    static RunConfig load(const std::filesystem::path& path, const std::string& out_override,
                          const std::string& tracker_override, std::optional<std::uint64_t> seed_override,
                          bool need_phantom);

    // Echo of every configuration value, written into stage manifests.
    void echo_into(KeyValueWriter& w) const;

    bool run_ncc() const { return tracker == "ncc" || tracker == "both"; }
    bool run_variational() const { return tracker == "variational" || tracker == "both"; }
};

}  // namespace swe
