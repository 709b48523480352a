#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "lsqb/bounds.hpp"
#include "lsqb/models.hpp"
#include "lsqb/montecarlo.hpp"

namespace lsqb {

inline constexpr const char* kSchemaVersion = "1";
// Environment variable overriding the default base seed.
inline constexpr const char* kSeedEnvVar = "LSQBOUND_SEED";

/// Base seed from LSQBOUND_SEED when set, otherwise kDefaultSeed.
std::uint64_t default_seed();

/// Declarative description of one simulation run.
struct RunConfig {
    std::string schema_version = kSchemaVersion;
    ExperimentSpec experiment;  // N is filled per row by the sweep
    double eps = 0.01;
    Axis axis;
    Theorem bound = Theorem::main;
    BoundOptions options;
    std::string csv_path;
    std::optional<std::string> svg_path;
    std::optional<std::string> diagnostics_path;
};

nlohmann::json noise_to_json(const NoiseModel& model);
NoiseModel noise_from_json(const nlohmann::json& j);
nlohmann::json design_to_json(const DesignModel& model);
DesignModel design_from_json(const nlohmann::json& j);

/// Parses and validates a run config; unknown keys and other schema versions are rejected
/// with ConfigError.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);
nlohmann::json run_config_to_json(const RunConfig& config);

}  // namespace lsqb
