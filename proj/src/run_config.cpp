#include "swe/run_config.hpp"

#include <set>
#include <sstream>

#include "swe/error.hpp"

namespace swe {

namespace {

Roi parse_roi(const std::string& text, Roi::Role role, const std::string& key) {
    std::istringstream in(text);
    std::string shape;
    in >> shape;
    if (shape == "disk") {
        double z, x, r;
        if (!(in >> z >> x >> r))
            throw ConfigError("config: `" + key + "` expects `disk <center_axial> <center_lateral> <radius>`");
        return Roi::disk(z, x, r, role);
    }
    if (shape == "rect") {
        double z0, z1, x0, x1;
        if (!(in >> z0 >> z1 >> x0 >> x1))
            throw ConfigError("config: `" + key +
                              "` expects `rect <axial_lo> <axial_hi> <lateral_lo> <lateral_hi>`");
        return Roi::rectangle(z0, z1, x0, x1, role);
    }
    throw ConfigError("config: `" + key + "` shape must be `disk` or `rect`, got `" + shape + "`");
}

const std::set<std::string> kKnownKeys = {
    "phantom", "out", "seed", "phantom_id",
    "geometry.n_axial", "geometry.n_lateral", "geometry.n_frames", "geometry.sampling_freq",
    "geometry.center_freq", "geometry.sound_speed", "geometry.lateral_pitch", "geometry.prf",
    "geometry.push_lateral_index", "geometry.push_depth",
    "sim.h", "sim.dt", "sim.target_peak", "sim.sponge_cells", "sim.sponge_strength",
    "push.duration", "push.lateral_sigma", "push.axial_sigma",
    "pulse.center_freq", "pulse.fractional_bandwidth", "pulse.lateral_sigma",
    "rf.density", "rf.noise_std",
    "tracker",
    "tracker.ncc.window_len", "tracker.ncc.window_hop", "tracker.ncc.max_lag",
    "tracker.var.alpha", "tracker.var.lncc_window_lateral", "tracker.var.lncc_window_axial",
    "tracker.var.pyramid_levels", "tracker.var.iters_per_level", "tracker.var.step_size",
    "tracker.var.charbonnier_eps", "tracker.var.warm_start", "tracker.var.estimate_lateral",
    "tracker.var.lateral_curvature_term", "tracker.var.rel_improvement_tol",
    "tof.max_lag_frames", "tof.axial_average_halfwidth", "tof.lane_distance", "tof.min_speed",
    "tof.max_speed", "tof.min_peak_corr", "tof.focal_exclusion_halfwidth", "tof.strict_paper",
    "recon.median_k",
    "roi.background", "roi.inclusion",
};

std::size_t get_count(const KeyValueFile& kv, const std::string& key, std::size_t fallback) {
    const long long v = kv.get_int(key, static_cast<long long>(fallback));
    if (v < 0) throw ConfigError("config: `" + key + "` must be >= 0");
    return static_cast<std::size_t>(v);
}

}  // namespace

RunConfig RunConfig::load(const std::filesystem::path& path, const std::string& out_override,
                          const std::string& tracker_override,
                          std::optional<std::uint64_t> seed_override, bool need_phantom) {
    const KeyValueFile kv = KeyValueFile::parse_file(path);
    for (const auto& key : kv.keys())
        if (!kKnownKeys.count(key))
            throw ConfigError(kv.origin() + ":" + std::to_string(kv.line_of(key)) +
                              ": unknown config key `" + key + "`");

    RunConfig cfg;
    cfg.config_path = path;

    if (kv.has("phantom")) {
        cfg.phantom_path = kv.get_string("phantom");
        if (cfg.phantom_path.is_relative()) cfg.phantom_path = path.parent_path() / cfg.phantom_path;
    }
    if (need_phantom) {
        if (cfg.phantom_path.empty()) throw ConfigError("config: missing mandatory key `phantom`");
        if (!std::filesystem::exists(cfg.phantom_path))
            throw ConfigError("config: phantom file does not exist: " + cfg.phantom_path.string());
    }
    cfg.phantom_id = kv.get_string("phantom_id", cfg.phantom_path.stem().string());
    cfg.out_dir = out_override.empty() ? std::filesystem::path(kv.get_string("out", "."))
                                       : std::filesystem::path(out_override);
    cfg.seed = seed_override ? *seed_override
                             : static_cast<std::uint64_t>(kv.get_int("seed", 1));

    ScanGeometry& g = cfg.geometry;
    g.n_axial = get_count(kv, "geometry.n_axial", g.n_axial);
    g.n_lateral = get_count(kv, "geometry.n_lateral", g.n_lateral);
    g.n_frames = get_count(kv, "geometry.n_frames", g.n_frames);
    g.sampling_freq = kv.get_double("geometry.sampling_freq", g.sampling_freq);
    g.center_freq = kv.get_double("geometry.center_freq", g.center_freq);
    g.sound_speed = kv.get_double("geometry.sound_speed", g.sound_speed);
    g.lateral_pitch = kv.get_double("geometry.lateral_pitch", g.lateral_pitch);
    g.prf = kv.get_double("geometry.prf", g.prf);
    g.push_lateral_index = get_count(kv, "geometry.push_lateral_index", g.n_lateral / 2);
    g.push_depth = kv.get_double("geometry.push_depth", g.push_depth);
    g.validate();

    cfg.sim_h = kv.get_double("sim.h", cfg.sim_h);
    cfg.sim_dt = kv.get_double("sim.dt", cfg.sim_dt);
    cfg.sim_target_peak = kv.get_double("sim.target_peak", cfg.sim_target_peak);
    cfg.material.sponge_cells = get_count(kv, "sim.sponge_cells", cfg.material.sponge_cells);
    cfg.material.sponge_strength = kv.get_double("sim.sponge_strength", cfg.material.sponge_strength);
    cfg.push_duration = kv.get_double("push.duration", cfg.push_duration);
    cfg.push_lateral_sigma = kv.get_double("push.lateral_sigma", cfg.push_lateral_sigma);
    cfg.push_axial_sigma = kv.get_double("push.axial_sigma", cfg.push_axial_sigma);

    cfg.pulse.center_freq = kv.get_double("pulse.center_freq", g.center_freq);
    cfg.pulse.fractional_bandwidth =
        kv.get_double("pulse.fractional_bandwidth", cfg.pulse.fractional_bandwidth);
    cfg.pulse.lateral_sigma = kv.get_double("pulse.lateral_sigma", cfg.pulse.lateral_sigma);
    cfg.rf_density = kv.get_double("rf.density", cfg.rf_density);
    cfg.rf_noise_std = kv.get_double("rf.noise_std", cfg.rf_noise_std);

    cfg.tracker = tracker_override.empty() ? kv.get_string("tracker", cfg.tracker) : tracker_override;
    if (cfg.tracker != "ncc" && cfg.tracker != "variational" && cfg.tracker != "both")
        throw ConfigError("config: tracker must be ncc, variational or both, got `" + cfg.tracker + "`");

    cfg.ncc.window_len = get_count(kv, "tracker.ncc.window_len", cfg.ncc.window_len);
    cfg.ncc.window_hop = get_count(kv, "tracker.ncc.window_hop", cfg.ncc.window_hop);
    cfg.ncc.max_lag = get_count(kv, "tracker.ncc.max_lag", cfg.ncc.max_lag);

    VariationalConfig& v = cfg.variational;
    v.alpha = kv.get_double("tracker.var.alpha", v.alpha);
    v.lncc_window_lateral = get_count(kv, "tracker.var.lncc_window_lateral", v.lncc_window_lateral);
    v.lncc_window_axial = get_count(kv, "tracker.var.lncc_window_axial", v.lncc_window_axial);
    v.pyramid_levels = get_count(kv, "tracker.var.pyramid_levels", v.pyramid_levels);
    v.iters_per_level = get_count(kv, "tracker.var.iters_per_level", v.iters_per_level);
    v.step_size = kv.get_double("tracker.var.step_size", v.step_size);
    v.charbonnier_eps = kv.get_double("tracker.var.charbonnier_eps", v.charbonnier_eps);
    v.warm_start = kv.get_bool("tracker.var.warm_start", v.warm_start);
    v.estimate_lateral = kv.get_bool("tracker.var.estimate_lateral", v.estimate_lateral);
    v.lateral_curvature_term = kv.get_bool("tracker.var.lateral_curvature_term", v.lateral_curvature_term);
    v.rel_improvement_tol = kv.get_double("tracker.var.rel_improvement_tol", v.rel_improvement_tol);

    TofConfig& t = cfg.tof;
    t.max_lag_frames = get_count(kv, "tof.max_lag_frames", t.max_lag_frames);
    t.axial_average_halfwidth = get_count(kv, "tof.axial_average_halfwidth", t.axial_average_halfwidth);
    t.lane_distance = get_count(kv, "tof.lane_distance", t.lane_distance);
    t.min_speed = kv.get_double("tof.min_speed", t.min_speed);
    t.max_speed = kv.get_double("tof.max_speed", t.max_speed);
    t.min_peak_corr = kv.get_double("tof.min_peak_corr", t.min_peak_corr);
    t.focal_exclusion_halfwidth = kv.get_double("tof.focal_exclusion_halfwidth", t.focal_exclusion_halfwidth);
    t.strict_paper_normalization = kv.get_bool("tof.strict_paper", t.strict_paper_normalization);

    cfg.median_k = get_count(kv, "recon.median_k", cfg.median_k);

    if (kv.has("roi.background"))
        cfg.roi_background = parse_roi(kv.get_string("roi.background"), Roi::Role::background, "roi.background");
    if (kv.has("roi.inclusion"))
        cfg.roi_inclusion = parse_roi(kv.get_string("roi.inclusion"), Roi::Role::inclusion, "roi.inclusion");

    return cfg;
}

void RunConfig::echo_into(KeyValueWriter& w) const {
    w.set("version", std::string(kVersionString));
    w.set("config", config_path.string());
    w.set("phantom", phantom_path.string());
    w.set("phantom_id", phantom_id);
    w.set("out", out_dir.string());
    w.set("seed", static_cast<long long>(seed));
    w.set("geometry.n_axial", static_cast<long long>(geometry.n_axial));
    w.set("geometry.n_lateral", static_cast<long long>(geometry.n_lateral));
    w.set("geometry.n_frames", static_cast<long long>(geometry.n_frames));
    w.set("geometry.sampling_freq", geometry.sampling_freq);
    w.set("geometry.center_freq", geometry.center_freq);
    w.set("geometry.sound_speed", geometry.sound_speed);
    w.set("geometry.lateral_pitch", geometry.lateral_pitch);
    w.set("geometry.prf", geometry.prf);
    w.set("geometry.push_lateral_index", static_cast<long long>(geometry.push_lateral_index));
    w.set("geometry.push_depth", geometry.push_depth);
    w.set("sim.h", sim_h);
    w.set("sim.dt", sim_dt);
    w.set("sim.target_peak", sim_target_peak);
    w.set("sim.sponge_cells", static_cast<long long>(material.sponge_cells));
    w.set("sim.sponge_strength", material.sponge_strength);
    w.set("push.duration", push_duration);
    w.set("push.lateral_sigma", push_lateral_sigma);
    w.set("push.axial_sigma", push_axial_sigma);
    w.set("pulse.center_freq", pulse.center_freq);
    w.set("pulse.fractional_bandwidth", pulse.fractional_bandwidth);
    w.set("pulse.lateral_sigma", pulse.lateral_sigma);
    w.set("rf.density", rf_density);
    w.set("rf.noise_std", rf_noise_std);
    w.set("tracker", tracker);
    w.set("tracker.ncc.window_len", static_cast<long long>(ncc.window_len));
    w.set("tracker.ncc.window_hop", static_cast<long long>(ncc.window_hop));
    w.set("tracker.ncc.max_lag", static_cast<long long>(ncc.max_lag));
    w.set("tracker.var.alpha", variational.alpha);
    w.set("tracker.var.lncc_window_lateral", static_cast<long long>(variational.lncc_window_lateral));
    w.set("tracker.var.lncc_window_axial", static_cast<long long>(variational.lncc_window_axial));
    w.set("tracker.var.pyramid_levels", static_cast<long long>(variational.pyramid_levels));
    w.set("tracker.var.iters_per_level", static_cast<long long>(variational.iters_per_level));
    w.set("tracker.var.step_size", variational.step_size);
    w.set("tracker.var.charbonnier_eps", variational.charbonnier_eps);
    w.set("tracker.var.warm_start", std::string(variational.warm_start ? "true" : "false"));
    w.set("tracker.var.estimate_lateral", std::string(variational.estimate_lateral ? "true" : "false"));
    w.set("tracker.var.lateral_curvature_term",
          std::string(variational.lateral_curvature_term ? "true" : "false"));
    w.set("tracker.var.rel_improvement_tol", variational.rel_improvement_tol);
    w.set("tof.max_lag_frames", static_cast<long long>(tof.max_lag_frames));
    w.set("tof.axial_average_halfwidth", static_cast<long long>(tof.axial_average_halfwidth));
    w.set("tof.lane_distance", static_cast<long long>(tof.lane_distance));
    w.set("tof.min_speed", tof.min_speed);
    w.set("tof.max_speed", tof.max_speed);
    w.set("tof.min_peak_corr", tof.min_peak_corr);
    w.set("tof.focal_exclusion_halfwidth", tof.focal_exclusion_halfwidth);
    w.set("tof.strict_paper", std::string(tof.strict_paper_normalization ? "true" : "false"));
    w.set("recon.median_k", static_cast<long long>(median_k));
}

}  // namespace swe
