#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fogplace/baselines.hpp"
#include "fogplace/scenarios.hpp"

namespace fogplace {

/// Formats a double with 17 significant digits (round-trippable).
std::string format_double(double value);

// Scenario-tree (de)serialization. The schema is documented in
// docs/scenario-format.md; all fields are in canonical units.
nlohmann::json encode_application(const Application& app);
Application decode_application(const nlohmann::json& node);
nlohmann::json encode_infrastructure(const Infrastructure& infra);
Infrastructure decode_infrastructure(const nlohmann::json& node);

/// Fully parsed scenario file: either side may be given explicitly or as a
/// generator config that is materialized with the scenario seed.
struct Scenario {
    Application app;
    Infrastructure infra;
    CaseStudyConfig app_template;   ///< as configured (for sweeps)
    InfraConfig infra_template;     ///< as configured (for sweeps)
    bool app_is_template = false;   ///< app came from a case-study block
    bool infra_is_template = false; ///< infra came from a generator block
    EvalOptions options;
    Nsga2Params nsga2;
    SelectionStrategy strategy;
    SweepConfig sweep;
    ScalabilityConfig scalability;
    std::uint64_t seed = 0;
};

/// Loads and validates a scenario file. `seed_override` replaces the file's
/// seed before any generator runs. Throws InvalidConfig.
Scenario load_scenario(const std::filesystem::path& path,
                       std::optional<std::uint64_t> seed_override = {});

std::string placement_to_string(const Placement& placement); ///< dash-joined
std::string front_csv(const ParetoFront& front);
std::string hv_trace_csv(const RunStats& stats);
std::string result_table_csv(const ResultTable& table);
std::string raw_rows_csv(const ResultTable& table);
std::string scalability_csv(const ScalabilityResult& result);
std::string scalability_timings_csv(const ScalabilityResult& result);
nlohmann::json selected_placement_json(const ParetoFront::Entry& entry,
                                       const SelectionStrategy& strategy);
nlohmann::json baseline_result_json(const BaselineResult& result);

/// Sidecar describing one CLI run; sufficient to reproduce the data files.
struct RunManifest {
    std::string command;
    std::string config_path;
    std::uint64_t seed = 0;
    std::string engine_version;
    std::string normalization;
    double wall_time = 0.0;
    int threads = 1;
    std::string profile;
    std::vector<std::string> outputs;
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace fogplace
