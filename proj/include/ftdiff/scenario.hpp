#pragma once

// Declarative scenarios: JSON configuration, presets, and the run / compare /
// sweep drivers behind the command-line tool.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ftdiff/analysis.hpp"
#include "ftdiff/diffcore.hpp"
#include "ftdiff/gains.hpp"
#include "ftdiff/signals.hpp"
#include "ftdiff/sim.hpp"

namespace ftdiff {

struct AnalysisOptions {
    std::optional<double> window_start;  // default: t_end / 2
    bool bound_checks = true;
    double settle_tolerance = 1e-3;
    bool operator==(const AnalysisOptions&) const = default;
};

struct ScenarioConfig {
    std::string name;
    std::string description;
    DiffParams differentiator;
    SignalSpec signal = Sinusoid{};
    NoiseModel noise;
    SimConfig sim;
    AnalysisOptions analysis;
    std::filesystem::path output_dir = "out";
    bool operator==(const ScenarioConfig&) const = default;

    double window_start() const;
};

nlohmann::json to_json(const ScenarioConfig& cfg);
/// Strict parse: unknown keys and ill-typed values throw ConfigInvalid with
/// the offending field path.
ScenarioConfig scenario_from_json(const nlohmann::json& j);
ScenarioConfig load_scenario(const std::filesystem::path& path);
void validate(const ScenarioConfig& cfg);

struct PresetInfo {
    std::string name;
    std::string summary;
};
std::vector<PresetInfo> list_presets();
/// Throws ConfigInvalid for an unknown name.
ScenarioConfig preset(const std::string& name);

/// Everything one scenario produces, without touching the filesystem.
struct ScenarioResult {
    ScenarioConfig config;
    Trajectory trajectory;
    BoundReport bounds;
    AnalysisReport analysis;
    std::optional<double> settle_time;
};

ScenarioResult evaluate(const ScenarioConfig& cfg);

struct RunReport {
    ScenarioResult result;
    std::filesystem::path trajectory_csv;
    std::filesystem::path report_json;
    double wall_clock_seconds = 0.0;
};

/// Evaluates and writes `<name>.csv` and `<name>.report.json` into the
/// output directory. Throws IoFailure when writing fails.
RunReport run(const ScenarioConfig& cfg);

nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const AnalysisReport& r);
nlohmann::json report_json(const RunReport& r);

struct ComparisonRow {
    std::string name;
    Algorithm algorithm{};
    double rms_e1 = 0.0, rms_e2 = 0.0, max_e1 = 0.0, max_e2 = 0.0;
    double chattering_index = 0.0;
    std::optional<double> settle_time;
    bool operator==(const ComparisonRow&) const = default;
};

/// One row per config in input order. Throws MismatchedScenario unless all
/// configs share signal and noise; needs at least two configs.
std::vector<ComparisonRow> compare(const std::vector<ScenarioConfig>& configs);

enum class SweepParam { Sigma, K1, K2, Alpha, Dt };
SweepParam parse_sweep_param(const std::string& name);
const char* to_string(SweepParam p) noexcept;

struct SweepRow {
    double value = 0.0;
    ComparisonRow metrics;
    DiffState terminal_state;
};

struct SweepResult {
    SweepParam parameter{};
    std::vector<SweepRow> rows;
    std::optional<ScalingFit> noise_fit;  // sigma sweeps only
};

SweepResult sweep(const ScenarioConfig& base, SweepParam parameter,
                  const std::vector<double>& values);

nlohmann::json to_json(const std::vector<ComparisonRow>& rows);
nlohmann::json to_json(const SweepResult& r);

}  // namespace ftdiff
