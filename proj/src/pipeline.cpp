#include "swe/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "swe/error.hpp"
#include "swe/phantom.hpp"
#include "swe/recon.hpp"
#include "swe/stack_io.hpp"
#include "swe/wave.hpp"

namespace swe {

namespace fs = std::filesystem;

namespace {

void ensure_out_dir(const RunConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + cfg.out_dir.string());
}

void write_manifest(const RunConfig& cfg, const std::string& stage, const KeyValueWriter& extra,
                    const std::string& suffix = "") {
    KeyValueWriter w;
    w.set_comment("stage manifest: " + stage);
    w.set("stage", stage);
    cfg.echo_into(w);
    std::ofstream out(cfg.out_dir / ("manifest_" + stage + suffix + ".txt"));
    if (!out) throw IoError("cannot write manifest for stage " + stage);
    out << w.str() << extra.str();
    if (!out) throw IoError("manifest write failed for stage " + stage);
}

PhantomSpec load_phantom_checked(const RunConfig& cfg) {
    if (cfg.phantom_path.empty() || !fs::exists(cfg.phantom_path))
        throw ConfigError("phantom file does not exist: " + cfg.phantom_path.string());
    return load_phantom_spec(cfg.phantom_path);
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

void run_simulate(const RunConfig& cfg) {
    ensure_out_dir(cfg);
    const PhantomSpec spec = load_phantom_checked(cfg);

    PushConfig push = default_push(spec, cfg.geometry);
    push.duration = cfg.push_duration;
    push.lateral_sigma = cfg.push_lateral_sigma;
    push.axial_sigma = cfg.push_axial_sigma;

    SimOptions opt;
    opt.material = cfg.material;
    opt.target_peak = cfg.sim_target_peak;
    const SimResult sim = simulate_displacements(spec, push, cfg.geometry, cfg.sim_h, cfg.sim_dt, opt);

    FrameStack rf = simulate_rf_sequence(spec, sim.truth, cfg.pulse, cfg.geometry, cfg.seed, cfg.rf_density);
    if (cfg.rf_noise_std > 0) add_rf_noise(rf, cfg.rf_noise_std, cfg.seed + 0x9e3779b97f4a7c15ull);

    fs::copy_file(cfg.phantom_path, cfg.out_dir / "phantom_echo.txt", fs::copy_options::overwrite_existing);
    write_stack(sim.truth, cfg.out_dir / "truth.swf");
    write_stack(rf, cfg.out_dir / "rf.swf");

    KeyValueWriter extra;
    extra.set("phantom_hash", file_content_hash(cfg.phantom_path));
    extra.set("sim.dt_used", sim.dt);
    extra.set("sim.steps_per_frame", static_cast<long long>(sim.steps_per_frame));
    extra.set("sim.calibration_factor", sim.calibration_factor);
    extra.set("sim.peak_displacement", sim.peak_displacement);
    extra.set_comment("density assumed 1000 kg/m^3 unless set in the phantom spec");
    write_manifest(cfg, "simulate", extra);
}

void run_track(const RunConfig& cfg, const std::string& tracker, const fs::path& rf_path) {
    ensure_out_dir(cfg);
    if (tracker != "ncc" && tracker != "variational")
        throw ConfigError("track: unknown tracker `" + tracker + "`");
    if (!fs::exists(rf_path)) throw ConfigError("track: rf stack does not exist: " + rf_path.string());

    const FrameStack rf = read_frame_stack(rf_path, cfg.geometry);

    KeyValueWriter extra;
    extra.set("rf_path", rf_path.string());
    if (tracker == "ncc") {
        const DisplacementStack disp = ncc_track_sequence(rf, cfg.ncc);
        write_stack(disp, cfg.out_dir / "disp_ncc.swf");
    } else {
        const VariationalResult result = variational_track_sequence(rf, cfg.variational);
        write_stack(result.disp, cfg.out_dir / ("disp_variational.swf"));
        if (result.disp.lateral) {
            DisplacementStack lat;
            lat.geometry = result.disp.geometry;
            lat.axial = *result.disp.lateral;
            write_stack(lat, cfg.out_dir / "disp_variational_lateral.swf");
        }
        std::ofstream loss(cfg.out_dir / "loss_variational.csv");
        if (!loss) throw IoError("cannot write loss trace");
        loss << "frame,level,iter,similarity,penalty,total\n";
        for (const auto& row : result.trace)
            loss << row.frame << ',' << row.level << ',' << row.iter << ',' << csv_num(row.similarity)
                 << ',' << csv_num(row.penalty) << ',' << csv_num(row.total) << '\n';
        for (std::size_t i = 0; i < result.warnings.size(); ++i)
            extra.set("warning_" + std::to_string(i), result.warnings[i]);
    }
    write_manifest(cfg, "track", extra, "_" + tracker);
}

void run_reconstruct(const RunConfig& cfg, const std::string& tracker, const fs::path& disp_path) {
    ensure_out_dir(cfg);
    if (!fs::exists(disp_path))
        throw ConfigError("reconstruct: displacement stack does not exist: " + disp_path.string());

    const DisplacementStack disp = read_displacement_stack(disp_path, cfg.geometry);
    const ScanGeometry& g = disp.geometry;

    double max_abs = 0.0;
    for (double v : disp.axial) max_abs = std::max(max_abs, std::fabs(v));
    if (max_abs == 0.0) throw NumericError("reconstruct: all-zero displacement input, no wave to time");

    const SWSMap sws = sws_map(disp, g, cfg.tof);

    // Phantom density if available, 1000 kg/m^3 otherwise.
    double density = 1000.0;
    if (!cfg.phantom_path.empty() && fs::exists(cfg.phantom_path))
        density = load_phantom_spec(cfg.phantom_path).density;

    const ElasticityMap raw = young_from_sws(sws, density);
    if (raw.valid_count() == 0)
        throw NumericError("reconstruct: degenerate reconstruction, no valid pixel");
    const ElasticityMap filtered = median_filter(raw, cfg.median_k);
    if (filtered.valid_count() == 0)
        throw NumericError("reconstruct: degenerate reconstruction after median filtering");

    // Speed map exported through the same CSV writer.
    ElasticityMap speed(sws.n_lateral, sws.n_axial, 0.0, false);
    for (std::size_t i = 0; i < sws.speed.size(); ++i)
        if (sws.valid[i]) {
            speed.values[i] = sws.speed[i];
            speed.valid[i] = 1;
        }

    const std::string tag = "_" + tracker;
    export_elasticity_map(speed, cfg.out_dir / ("sws" + tag + ".csv"), MapFormat::csv);
    export_elasticity_map(raw, cfg.out_dir / ("emap" + tag + "_raw.csv"), MapFormat::csv);
    export_elasticity_map(filtered, cfg.out_dir / ("emap" + tag + ".csv"), MapFormat::csv);
    export_elasticity_map(filtered, cfg.out_dir / ("emap" + tag + ".pgm"), MapFormat::pgm);
    export_validity_mask(filtered, cfg.out_dir / ("valid" + tag + ".csv"));

    KeyValueWriter extra;
    extra.set("disp_path", disp_path.string());
    extra.set("density", density);
    extra.set("valid_fraction_raw",
              static_cast<double>(raw.valid_count()) / static_cast<double>(raw.values.size()));
    extra.set("valid_fraction_filtered",
              static_cast<double>(filtered.valid_count()) / static_cast<double>(filtered.values.size()));
    const auto excl = focal_exclusion_mask(g, cfg.tof);
    std::size_t n_excl = 0;
    for (auto e : excl) n_excl += e;
    extra.set("focal_excluded_pixels", static_cast<long long>(n_excl));
    write_manifest(cfg, "reconstruct", extra, tag);
}

void run_evaluate(const RunConfig& cfg, const std::string& tracker, const fs::path& map_path,
                  const fs::path& truth_path) {
    ensure_out_dir(cfg);
    if (!fs::exists(map_path)) throw ConfigError("evaluate: map does not exist: " + map_path.string());
    if (!fs::exists(truth_path))
        throw ConfigError("evaluate: truth does not exist: " + truth_path.string());

    const ElasticityMap pred = import_elasticity_csv(map_path);
    ScanGeometry g = cfg.geometry;
    g.n_lateral = pred.n_lateral;
    g.n_axial = pred.n_axial;
    if (g.push_lateral_index >= g.n_lateral) g.push_lateral_index = g.n_lateral / 2;

    // Truth is either an exported CSV map or a phantom spec to rasterize.
    PhantomSpec spec;
    ElasticityMap truth;
    if (truth_path.extension() == ".csv") {
        truth = import_elasticity_csv(truth_path);
        if (cfg.phantom_path.empty() || !fs::exists(cfg.phantom_path))
            throw ConfigError("evaluate: phantom spec required for ROI placement");
        spec = load_phantom_spec(cfg.phantom_path);
    } else {
        spec = load_phantom_spec(truth_path);
        truth = truth_elasticity_map(spec, g);
    }
    if (truth.n_lateral != pred.n_lateral || truth.n_axial != pred.n_axial)
        throw NumericError("evaluate: map dims differ from truth dims");

    const MapCoords coords = map_coords(g, spec.extent_lateral);
    const auto exclusion = focal_exclusion_mask(g, cfg.tof);

    DefaultRois rois = default_rois(spec, g);
    if (cfg.roi_background) rois.background = *cfg.roi_background;
    if (cfg.roi_inclusion) rois.inclusion = *cfg.roi_inclusion;

    const RoiStats bg = roi_stats(pred, rois.background, exclusion, coords);
    const double snr_value = snr(bg);
    const double mae_bg = mae(pred, truth, rois.background, exclusion, coords);

    std::string cnr_text, mae_inc_text;
    std::size_t n_inc = 0;
    if (rois.inclusion) {
        const RoiStats inc = roi_stats(pred, *rois.inclusion, exclusion, coords);
        cnr_text = csv_num(cnr(bg, inc));
        mae_inc_text = csv_num(mae(pred, truth, *rois.inclusion, exclusion, coords));
        n_inc = inc.count;
    }

    const fs::path results = cfg.out_dir / "results.csv";
    const bool fresh = !fs::exists(results);
    std::ofstream out(results, std::ios::app);
    if (!out) throw IoError("cannot append to results.csv");
    if (fresh) out << "phantom_id,tracker,snr,cnr,mae_background,mae_inclusion,n_background,n_inclusion\n";
    out << cfg.phantom_id << ',' << tracker << ',' << csv_num(snr_value) << ',' << cnr_text << ','
        << csv_num(mae_bg) << ',' << mae_inc_text << ',' << bg.count << ',' << n_inc << '\n';
    if (!out) throw IoError("results.csv write failed");

    KeyValueWriter extra;
    extra.set("map_path", map_path.string());
    extra.set("truth_path", truth_path.string());
    extra.set("snr", snr_value);
    if (!cnr_text.empty()) extra.set("cnr", cnr_text);
    extra.set("mae_background", mae_bg);
    if (!mae_inc_text.empty()) extra.set("mae_inclusion", mae_inc_text);
    write_manifest(cfg, "evaluate", extra, "_" + tracker);
}

void run_pipeline(const RunConfig& cfg) {
    ensure_out_dir(cfg);
    const fs::path marker = cfg.out_dir / "manifest_pipeline.txt";
    std::string completed;
    auto mark = [&](const std::string& status, const std::string& error) {
        KeyValueWriter w;
        w.set("stage", std::string("pipeline"));
        w.set("status", status);
        w.set("completed_stages", completed.empty() ? std::string("none") : completed);
        if (!error.empty()) w.set("error", error);
        cfg.echo_into(w);
        w.write(marker);
    };

    try {
        run_simulate(cfg);
        completed += "simulate";
        std::vector<std::string> trackers;
        if (cfg.run_ncc()) trackers.push_back("ncc");
        if (cfg.run_variational()) trackers.push_back("variational");
        for (const auto& tracker : trackers) {
            run_track(cfg, tracker, cfg.out_dir / "rf.swf");
            completed += " track:" + tracker;
            run_reconstruct(cfg, tracker, cfg.out_dir / ("disp_" + tracker + ".swf"));
            completed += " reconstruct:" + tracker;
            run_evaluate(cfg, tracker, cfg.out_dir / ("emap_" + tracker + ".csv"),
                         cfg.out_dir / "phantom_echo.txt");
            completed += " evaluate:" + tracker;
        }
    } catch (...) {
        try {
            std::string what = "unknown error";
            try {
                throw;
            } catch (const std::exception& e) {
                what = e.what();
            }
            mark("FAILED", what);
        } catch (...) {
        }
        throw;
    }
    mark("OK", "");
}

}  // namespace swe
