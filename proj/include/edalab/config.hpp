// =============================================================================
// config.hpp - Experiment configuration: a single JSON file describing the
// problem, the selection schema, the initial distribution, and (optionally)
// the finite-population simulation.
//
// {
//   "problem":   {"kind": "onemax", "bits": 6}
//              | {"kind": "explicit", "fitness": [1.0, 2.0, 3.0]},
//   "selection": {"selection": "truncation", "mu": 0.5}
//              | {"selection": "tournament", "ties": "paper" | "fair"},
//   "initial":   {"kind": "uniform"} | {"kind": "d0", "d0": 0.75},
//   "max_iters": 1000,
//   "simulation": {                        // optional
//     "population_size": 100000,
//     "parent_count": 0,                   // optional; 0 derives a default
//     "max_iters": 50,                     // optional; derived when absent
//     "seed": 42,
//     "replications": 100
//   },
//   "output": {"format": "csv" | "json" | "both"},   // optional
//   "grid": {"d0": [...], "mu": [...]}               // bounds subcommand
// }
// =============================================================================
#pragma once

#include "edalab/fitness_model.hpp"
#include "edalab/selection.hpp"
#include "edalab/simulator.hpp"

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace edalab {

struct InitialSpec {
    bool uniform = true;
    double d0 = 0.0;  // used when uniform is false
};

enum class OutputFormat { Csv, Json, Both };

struct ExperimentConfig {
    Problem problem = make_explicit({0.0});
    SelectionSchema schema;
    InitialSpec initial;
    int engine_max_iters = 10000;
    std::optional<sim::SimConfig> simulation;
    OutputFormat output_format = OutputFormat::Both;
    std::optional<std::vector<double>> grid_d0;
    std::optional<std::vector<double>> grid_mu;
    std::string config_hash;  // over the raw file text
};

/// Parses and validates; every error names the offending field or value.
[[nodiscard]] ExperimentConfig parse_experiment_config(const std::string& json_text);

/// Reads the file, then parses. Throws ConfigError if unreadable.
[[nodiscard]] ExperimentConfig load_experiment_config(const std::string& path);

[[nodiscard]] Problem parse_problem(const nlohmann::json& spec);
[[nodiscard]] SelectionSchema parse_selection(const nlohmann::json& spec);

/// The engine's starting distribution for this experiment.
[[nodiscard]] LevelDistribution initial_distribution(const ExperimentConfig& config);

[[nodiscard]] OutputFormat parse_output_format(const std::string& name);

}  // namespace edalab
