#include "edalab/config.hpp"

#include "edalab/errors.hpp"
#include "edalab/io.hpp"

#include <fstream>
#include <sstream>

namespace edalab {

namespace {

using nlohmann::json;

const json& require_field(const json& node, const char* field,
                          const char* where) {
    auto it = node.find(field);
    if (it == node.end()) {
        throw ConfigError(std::string(where) + ": missing field \"" + field + "\"");
    }
    return *it;
}

double number_field(const json& node, const char* field, const char* where) {
    const json& value = require_field(node, field, where);
    if (!value.is_number()) {
        throw ConfigError(std::string(where) + ": field \"" + field +
                          "\" must be a number");
    }
    return value.get<double>();
}

std::string string_field(const json& node, const char* field, const char* where) {
    const json& value = require_field(node, field, where);
    if (!value.is_string()) {
        throw ConfigError(std::string(where) + ": field \"" + field +
                          "\" must be a string");
    }
    return value.get<std::string>();
}

std::uint64_t count_field(const json& node, const char* field, const char* where) {
    const double value = number_field(node, field, where);
    if (value < 0.0) {
        throw ConfigError(std::string(where) + ": field \"" + field +
                          "\" must be nonnegative");
    }
    return static_cast<std::uint64_t>(value);
}

std::vector<double> number_array(const json& value, const char* where) {
    if (!value.is_array()) {
        throw ConfigError(std::string(where) + " must be an array of numbers");
    }
    std::vector<double> out;
    out.reserve(value.size());
    for (const auto& item : value) {
        if (!item.is_number()) {
            throw ConfigError(std::string(where) + " must contain only numbers");
        }
        out.push_back(item.get<double>());
    }
    return out;
}

sim::SimConfig parse_simulation(const json& spec, const SelectionSchema& schema) {
    if (!spec.is_object()) {
        throw ConfigError("simulation: must be an object");
    }
    sim::SimConfig config;
    config.schema = schema;
    config.population_size = count_field(spec, "population_size", "simulation");
    if (spec.contains("parent_count")) {
        config.parent_count = count_field(spec, "parent_count", "simulation");
    }
    if (spec.contains("max_iters")) {
        config.max_iters =
            static_cast<int>(count_field(spec, "max_iters", "simulation"));
    }
    if (spec.contains("seed")) {
        config.seed = count_field(spec, "seed", "simulation");
    }
    if (spec.contains("replications")) {
        config.replications =
            static_cast<int>(number_field(spec, "replications", "simulation"));
    }
    return config;
}

}  // namespace

Problem parse_problem(const json& spec) {
    if (!spec.is_object()) {
        throw ConfigError("problem: must be an object");
    }
    const std::string kind = string_field(spec, "kind", "problem");
    if (kind == "onemax") {
        const double bits = number_field(spec, "bits", "problem");
        return make_onemax(static_cast<int>(bits));
    }
    if (kind == "explicit") {
        const json& fitness = require_field(spec, "fitness", "problem");
        try {
            return make_explicit(number_array(fitness, "problem.fitness"));
        } catch (const std::domain_error& e) {
            throw ConfigError(std::string("problem.fitness: ") + e.what());
        }
    }
    throw ConfigError("problem.kind: expected \"onemax\" or \"explicit\", got \"" +
                      kind + "\"");
}

SelectionSchema parse_selection(const json& spec) {
    if (!spec.is_object()) {
        throw ConfigError("selection: must be an object");
    }
    const std::string kind = string_field(spec, "selection", "selection");
    if (kind == "truncation") {
        const double mu = number_field(spec, "mu", "selection");
        if (!(mu > 0.0 && mu < 1.0)) {
            throw ConfigError("selection.mu: must be in (0, 1), got " +
                              std::to_string(mu));
        }
        return SelectionSchema::truncation(mu);
    }
    if (kind == "tournament") {
        const std::string ties = string_field(spec, "ties", "selection");
        if (ties == "paper") return SelectionSchema::tournament_paper();
        if (ties == "fair") return SelectionSchema::tournament_fair();
        throw ConfigError("selection.ties: expected \"paper\" or \"fair\", got \"" +
                          ties + "\"");
    }
    throw ConfigError(
        "selection.selection: expected \"truncation\" or \"tournament\", got \"" +
        kind + "\"");
}

OutputFormat parse_output_format(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    if (name == "both") return OutputFormat::Both;
    throw ConfigError("output.format: expected \"csv\", \"json\" or \"both\", got \"" +
                      name + "\"");
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("config: top level must be an object");
    }

    ExperimentConfig config;
    config.problem = parse_problem(require_field(root, "problem", "config"));
    config.schema = parse_selection(require_field(root, "selection", "config"));

    if (root.contains("initial")) {
        const json& initial = root["initial"];
        const std::string kind = string_field(initial, "kind", "initial");
        if (kind == "uniform") {
            config.initial.uniform = true;
        } else if (kind == "d0") {
            config.initial.uniform = false;
            config.initial.d0 = number_field(initial, "d0", "initial");
            if (!(config.initial.d0 >= 0.0 && config.initial.d0 < 1.0)) {
                throw ConfigError("initial.d0: must be in [0, 1), got " +
                                  std::to_string(config.initial.d0));
            }
        } else {
            throw ConfigError("initial.kind: expected \"uniform\" or \"d0\", got \"" +
                              kind + "\"");
        }
    }

    if (root.contains("max_iters")) {
        config.engine_max_iters =
            static_cast<int>(number_field(root, "max_iters", "config"));
        if (config.engine_max_iters < 0) {
            throw ConfigError("max_iters: must be nonnegative");
        }
    }

    if (root.contains("simulation")) {
        config.simulation = parse_simulation(root["simulation"], config.schema);
    }

    if (root.contains("output")) {
        config.output_format =
            parse_output_format(string_field(root["output"], "format", "output"));
    }

    if (root.contains("grid")) {
        const json& grid = root["grid"];
        if (grid.contains("d0")) {
            config.grid_d0 = number_array(grid["d0"], "grid.d0");
            for (double d0 : *config.grid_d0) {
                if (!(d0 > 0.0 && d0 < 1.0)) {
                    throw ConfigError("grid.d0: values must be in (0, 1), got " +
                                      std::to_string(d0));
                }
            }
        }
        if (grid.contains("mu")) {
            config.grid_mu = number_array(grid["mu"], "grid.mu");
            for (double mu : *config.grid_mu) {
                if (!(mu > 0.0 && mu < 1.0)) {
                    throw ConfigError("grid.mu: values must be in (0, 1), got " +
                                      std::to_string(mu));
                }
            }
        }
    }

    config.config_hash = io::hex64(io::fnv1a64(json_text));
    return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_config(buffer.str());
}

LevelDistribution initial_distribution(const ExperimentConfig& config) {
    if (config.initial.uniform) {
        return uniform_level_distribution(config.problem);
    }
    return d0_distribution(config.problem, config.initial.d0);
}

}  // namespace edalab
