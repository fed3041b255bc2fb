#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "smotelab/experiments.hpp"

namespace smotelab {

enum class Command { Sample, KsSweep, W1Sweep, KlSweep, Overlay, SpacingCheck, TailProbCheck };

std::string_view to_string(Command command) noexcept;
std::optional<Command> parse_command(std::string_view name) noexcept;
const std::vector<Command>& all_commands();

/// `sample`: draw a base sample from a distribution and emit SMOTE points.
struct SampleParams {
  DistributionSpec spec = DistributionSpec::uniform();
  std::size_t n = 20;
  std::size_t k = 1;
  Variant variant = Variant::FixedRank;
  std::size_t count = 5;
};

using CommandParams =
    std::variant<SampleParams, SweepConfig, OverlayConfig, SpacingConfig, TailProbConfig>;

struct RunConfig {
  Command command = Command::Sample;
  std::uint64_t seed = 0;
  // Parallelism cap; never part of provenance since it cannot change results.
  unsigned threads = 0;
  CommandParams params;
};

struct ConfigValidation {
  std::optional<RunConfig> config;
  std::vector<ConfigIssue> issues;  // every failure, not just the first

  bool ok() const noexcept { return config.has_value(); }
};

/// Validates a raw run-config of the form
///   {"command": "...", "seed": N, "threads": N, "params": {...}}
/// and fills in documented defaults for every missing field.
ConfigValidation validate_config(const nlohmann::json& raw);

/// The defaults a command starts from before config values are applied.
RunConfig default_config(Command command);

/// Fully normalized config (defaults included, threads excluded). Feeding it
/// back to validate_config reproduces the same run.
nlohmann::json to_json(const RunConfig& config);

struct RunOutputs {
  std::vector<std::filesystem::path> files;  // relative to the output directory
};

/// Runs the command, writes CSV + SVG + provenance.json under `out_dir` and
/// prints one summary line per result row to `summary`.
RunOutputs execute(const RunConfig& config, const std::filesystem::path& out_dir,
                   std::ostream& summary);

}  // namespace smotelab
