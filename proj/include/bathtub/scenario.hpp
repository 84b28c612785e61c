#pragma once

// Scenario configuration (flat `key = value` text with `#` comments) and the
// orchestration behind every CLI subcommand. Runners return in-memory
// artifacts; writing them to disk is the caller's business.

#include "bathtub/longrun.hpp"
#include "bathtub/model.hpp"
#include "bathtub/sweep.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bathtub {

enum class RunKind { shortrun, perimeter, longrun, tables, sensitivity, bias_sweep, trajectory };
enum class OutputFormat { csv, json };

std::string_view to_string(RunKind kind) noexcept;
std::optional<RunKind> parse_run_kind(std::string_view text) noexcept;

struct ScenarioConfig {
    CityParameters city{};
    AvEffects av{};
    CommuteMode mode{};                       // mode.bias doubles as the epsilon setting
    RunKind run = RunKind::tables;
    double fixed_suburban_population = 300.0; // short-run runs only
    GridAxis eta_grid{0.55, 1.0, 10};
    GridAxis xi_grid{1.0, 1.3, 4};
    std::vector<double> bias_list{0.7, 1.0, 1.3};
    std::string output_dir = "out";
    OutputFormat format = OutputFormat::csv;
    std::size_t grid_points = 2001;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parses config text on top of the defaults. Unknown keys, malformed values
/// and duplicate keys raise ValidationError with the offending line number.
ScenarioConfig parse_config(std::string_view text);

/// Applies a single `key = value` override.
void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value);

/// Emits every key; parse_config(emit_config(c)) == c.
std::string emit_config(const ScenarioConfig& config);

/// Validates everything the chosen run will touch before any computation.
void validate_config(const ScenarioConfig& config);

/// Parses "a:b:steps".
GridAxis parse_grid_axis(std::string_view text);
/// Parses a comma-separated list of numbers.
std::vector<double> parse_number_list(std::string_view text);

struct Artifact {
    std::string filename;
    std::string content;
};

std::vector<Artifact> run_shortrun(const ScenarioConfig& config);
std::vector<Artifact> run_perimeter(const ScenarioConfig& config);
std::vector<Artifact> run_longrun(const ScenarioConfig& config);
std::vector<Artifact> run_tables(const ScenarioConfig& config);
std::vector<Artifact> run_sensitivity(const ScenarioConfig& config);
std::vector<Artifact> run_bias_sweep(const ScenarioConfig& config);
std::vector<Artifact> run_trajectory(const ScenarioConfig& config);

/// Validates and dispatches on config.run.
std::vector<Artifact> run_scenario(const ScenarioConfig& config);

/// Published reference values the tables runner diffs against.
struct ReferenceCase {
    const char* name;
    double eta;
    double xi;
    double bathtub_cost;    // fixed N_s short run
    double perimeter_cost;
    double cost_ratio;
    double suburban_ue;     // long run
    double cost_ue;
    double utility_ue;
    double suburban_pc;
    double cost_pc;
    double utility_pc;
};

const std::vector<ReferenceCase>& reference_cases();

} // namespace bathtub
