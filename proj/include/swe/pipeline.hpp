#pragma once

#include <filesystem>
#include <string>

#include "swe/run_config.hpp"

namespace swe {

// Pipeline stages behind the CLI subcommands; each writes its artifacts and
// a manifest into cfg.out_dir and throws on failure (ConfigError for bad
// input, other errors for runtime failures).

// Writes phantom_echo.txt, truth.swf, rf.swf, manifest_simulate.txt.
void run_simulate(const RunConfig& cfg);

// Writes disp_<tracker>.swf (+ loss_<tracker>.csv in variational mode) and
// a manifest. `tracker` is "ncc" or "variational".
void run_track(const RunConfig& cfg, const std::string& tracker, const std::filesystem::path& rf_path);

// Writes sws_<tracker>.csv, emap_<tracker>_raw.csv, emap_<tracker>.csv,
// emap_<tracker>.pgm, valid_<tracker>.csv and a manifest. Throws
// NumericError when the reconstruction is entirely invalid.
void run_reconstruct(const RunConfig& cfg, const std::string& tracker,
                     const std::filesystem::path& disp_path);

// Appends one row per map to results.csv. `truth_path` is either an
// exported map CSV or a phantom spec to rasterize.
void run_evaluate(const RunConfig& cfg, const std::string& tracker,
                  const std::filesystem::path& map_path, const std::filesystem::path& truth_path);

// simulate -> track -> reconstruct -> evaluate for every configured
// tracker; stops at the first failure, leaving partial artifacts and a
// FAILED marker in manifest_pipeline.txt.
void run_pipeline(const RunConfig& cfg);

}  // namespace swe
