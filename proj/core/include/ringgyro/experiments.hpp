#pragma once
// Named experiment recipes: each writes CSV files and a manifest.json into an
// output directory.

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ringgyro/experiment_config.hpp"

namespace ringgyro {

struct RunSummary {
  std::vector<std::filesystem::path> outputs;  // CSV files, then manifest.json
  std::vector<std::string> warnings;
  /// (point label, master seed) for every sampled point.
  std::vector<std::pair<std::string, std::uint64_t>> seeds;
  double wall_time_seconds = 0.0;
};

/// Library version baked in at build time.
const char* version() noexcept;

/// Validates `config`, runs its recipe and writes into `out_dir` (created if
/// missing). Every output is a pure function of the config, except the wall
/// time in manifest.json. Throws ConfigError on invalid input and
/// NumericalBlowUp when a trajectory diverges.
RunSummary run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// --out, then RINGGYRO_OUT_DIR, then config.out_dir, then "out".
std::filesystem::path resolve_out_dir(const std::string& cli_out, const ExperimentConfig& config);

}  // namespace ringgyro
