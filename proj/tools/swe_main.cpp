// swe — shear wave elastography simulation and reconstruction pipeline.
//
// Subcommands: simulate, track, reconstruct, evaluate, pipeline.
// Exit codes: 0 ok, 2 usage/config error, 3 runtime/data error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "swe/error.hpp"
#include "swe/pipeline.hpp"

namespace {

struct CommonArgs {
    std::string config;
    std::string out;
    std::string tracker;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config, "run configuration file")->required();
    cmd->add_option("--out", args.out, "output directory (overrides config)");
    cmd->add_option("--seed", args.seed, "RNG seed (overrides config)");
    cmd->add_flag("--quiet", args.quiet, "suppress progress output");
}

swe::RunConfig load_config(const CommonArgs& args, bool need_phantom) {
    return swe::RunConfig::load(args.config, args.out, args.tracker, args.seed, need_phantom);
}

void note(const CommonArgs& args, const std::string& msg) {
    if (!args.quiet) std::cout << msg << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shear wave elastography simulation, tracking and reconstruction"};
    app.require_subcommand(1);

    CommonArgs sim_args, trk_args, rec_args, eva_args, pipe_args;
    std::string rf_path, disp_path, map_path, truth_path;

    CLI::App* sim = app.add_subcommand("simulate", "simulate shear wave truth and RF speckle");
    add_common(sim, sim_args);

    CLI::App* trk = app.add_subcommand("track", "estimate displacements from an RF stack");
    add_common(trk, trk_args);
    trk->add_option("--tracker", trk_args.tracker, "ncc | variational | both");
    trk->add_option("--rf", rf_path, "RF stack path (default <out>/rf.swf)");

    CLI::App* rec = app.add_subcommand("reconstruct", "reconstruct speed and elasticity maps");
    add_common(rec, rec_args);
    rec->add_option("--tracker", rec_args.tracker, "tracker tag for artifact names");
    rec->add_option("--disp", disp_path, "displacement stack path (default <out>/disp_<tracker>.swf)");

    CLI::App* eva = app.add_subcommand("evaluate", "score a map against ground truth");
    add_common(eva, eva_args);
    eva->add_option("--tracker", eva_args.tracker, "tracker tag for the results row");
    eva->add_option("--map", map_path, "elasticity map CSV (default <out>/emap_<tracker>.csv)");
    eva->add_option("--truth", truth_path, "truth map CSV or phantom spec (default <out>/phantom_echo.txt)");

    CLI::App* pipe = app.add_subcommand("pipeline", "run the whole chain");
    add_common(pipe, pipe_args);
    pipe->add_option("--tracker", pipe_args.tracker, "ncc | variational | both");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed()) {
            const auto cfg = load_config(sim_args, true);
            swe::run_simulate(cfg);
            note(sim_args, "simulate: artifacts written to " + cfg.out_dir.string());
        } else if (trk->parsed()) {
            const auto cfg = load_config(trk_args, false);
            const auto rf = rf_path.empty() ? cfg.out_dir / "rf.swf" : std::filesystem::path(rf_path);
            std::vector<std::string> trackers;
            if (cfg.run_ncc()) trackers.push_back("ncc");
            if (cfg.run_variational()) trackers.push_back("variational");
            for (const auto& t : trackers) {
                swe::run_track(cfg, t, rf);
                note(trk_args, "track[" + t + "]: displacement stack written");
            }
        } else if (rec->parsed()) {
            const auto cfg = load_config(rec_args, false);
            std::vector<std::string> trackers;
            if (cfg.run_ncc()) trackers.push_back("ncc");
            if (cfg.run_variational()) trackers.push_back("variational");
            for (const auto& t : trackers) {
                const auto disp =
                    disp_path.empty() ? cfg.out_dir / ("disp_" + t + ".swf") : std::filesystem::path(disp_path);
                swe::run_reconstruct(cfg, t, disp);
                note(rec_args, "reconstruct[" + t + "]: maps written");
            }
        } else if (eva->parsed()) {
            const auto cfg = load_config(eva_args, false);
            std::vector<std::string> trackers;
            if (cfg.run_ncc()) trackers.push_back("ncc");
            if (cfg.run_variational()) trackers.push_back("variational");
            for (const auto& t : trackers) {
                const auto map =
                    map_path.empty() ? cfg.out_dir / ("emap_" + t + ".csv") : std::filesystem::path(map_path);
                const auto truth = truth_path.empty() ? cfg.out_dir / "phantom_echo.txt"
                                                      : std::filesystem::path(truth_path);
                swe::run_evaluate(cfg, t, map, truth);
                note(eva_args, "evaluate[" + t + "]: results.csv updated");
            }
        } else if (pipe->parsed()) {
            const auto cfg = load_config(pipe_args, true);
            swe::run_pipeline(cfg);
            note(pipe_args, "pipeline: complete, results in " + cfg.out_dir.string());
        }
    } catch (const swe::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
