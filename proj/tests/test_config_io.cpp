#include "edalab/config.hpp"
#include "edalab/dynamics.hpp"
#include "edalab/errors.hpp"
#include "edalab/io.hpp"
#include "edalab/rng.hpp"
#include "edalab/theory.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>

using namespace edalab;

namespace {

bool throws_config_error_mentioning(const std::string& json_text,
                                    const std::string& needle) {
    try {
        (void)parse_experiment_config(json_text);
    } catch (const ConfigError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

}  // namespace

TEST_CASE("experiment config parsing") {
    const std::string text = R"({
        "problem": {"kind": "onemax", "bits": 6},
        "selection": {"selection": "truncation", "mu": 0.5},
        "initial": {"kind": "uniform"},
        "max_iters": 500,
        "simulation": {
            "population_size": 1000,
            "seed": 42,
            "replications": 10
        },
        "output": {"format": "both"}
    })";
    const ExperimentConfig config = parse_experiment_config(text);
    CHECK(config.problem.is_onemax());
    CHECK(config.problem.f_max() == 6.0);
    CHECK(config.schema.kind == SelectionKind::Truncation);
    CHECK(config.schema.mu == 0.5);
    CHECK(config.initial.uniform);
    CHECK(config.engine_max_iters == 500);
    REQUIRE(config.simulation.has_value());
    CHECK(config.simulation->population_size == 1000);
    CHECK(config.simulation->seed == 42);
    CHECK(config.simulation->replications == 10);
    CHECK(config.output_format == OutputFormat::Both);
    CHECK(config.config_hash.size() == 16);

    const LevelDistribution initial = initial_distribution(config);
    CHECK(d_of(initial, config.problem) == 0.984375);
}

TEST_CASE("selection schema wire format") {
    CHECK(parse_selection(nlohmann::json::parse(
                              R"({"selection":"truncation","mu":0.25})"))
              .mu == 0.25);
    CHECK(parse_selection(nlohmann::json::parse(
                              R"({"selection":"tournament","ties":"paper"})"))
              .kind == SelectionKind::TournamentPaper);
    CHECK(parse_selection(nlohmann::json::parse(
                              R"({"selection":"tournament","ties":"fair"})"))
              .kind == SelectionKind::TournamentFair);
    CHECK_THROWS_AS(
        (void)parse_selection(nlohmann::json::parse(
            R"({"selection":"tournament","ties":"maybe"})")),
        ConfigError);
}

TEST_CASE("problem wire format") {
    const Problem onemax =
        parse_problem(nlohmann::json::parse(R"({"kind":"onemax","bits":4})"));
    CHECK(onemax.space_size() == 16);
    const Problem explicit_problem = parse_problem(
        nlohmann::json::parse(R"({"kind":"explicit","fitness":[1.0,2.0,2.0]})"));
    CHECK(explicit_problem.f_max() == 2.0);
    CHECK(explicit_problem.optimal_count() == 2);
}

TEST_CASE("config errors name the offending field") {
    CHECK(throws_config_error_mentioning("{", "parse error"));
    CHECK(throws_config_error_mentioning(R"({"selection":{}})", "problem"));
    CHECK(throws_config_error_mentioning(
        R"({"problem":{"kind":"onemax"},"selection":{}})", "bits"));
    CHECK(throws_config_error_mentioning(
        R"({"problem":{"kind":"cube","bits":3},"selection":{}})", "cube"));
    CHECK(throws_config_error_mentioning(
        R"({"problem":{"kind":"onemax","bits":6},
            "selection":{"selection":"truncation","mu":1.5}})",
        "mu"));
    CHECK(throws_config_error_mentioning(
        R"({"problem":{"kind":"onemax","bits":6},
            "selection":{"selection":"truncation","mu":0.5},
            "initial":{"kind":"d0","d0":2.0}})",
        "d0"));
    CHECK(throws_config_error_mentioning(
        R"({"problem":{"kind":"onemax","bits":6},
            "selection":{"selection":"truncation","mu":0.5},
            "grid":{"d0":[0.5,1.5],"mu":[0.5]}})",
        "1.5"));
    CHECK(throws_config_error_mentioning(
        R"({"problem":{"kind":"explicit","fitness":[1.0,-2.0]},
            "selection":{"selection":"truncation","mu":0.5}})",
        "fitness"));
}

TEST_CASE("doubles survive a text round trip") {
    Rng rng(60902);
    for (int trial = 0; trial < 2000; ++trial) {
        double value = (rng.unit() - 0.5) * std::pow(10.0, rng.below(40));
        if (trial % 7 == 0) value = rng.unit() * 1e-12;
        const std::string text = io::format_double(value);
        CHECK(std::strtod(text.c_str(), nullptr) == value);
        CHECK(text.find(',') == std::string::npos);
    }
}

TEST_CASE("hash constants") {
    CHECK(io::fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(io::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(io::hex64(0xcbf29ce484222325ULL) == "cbf29ce484222325");
}

TEST_CASE("trajectory CSV round trip") {
    const Problem p = make_onemax(6);
    const Trajectory trajectory =
        run(uniform_level_distribution(p), SelectionSchema::truncation(0.5), p, 50);
    std::vector<double> overlay;
    for (std::size_t n = 0; n <= trajectory.records.size(); ++n) {
        overlay.push_back(
            truncation_d_closed_form(0.984375, 0.5, static_cast<int>(n)));
    }

    std::ostringstream out;
    const io::Metadata meta = io::make_metadata("deadbeef00000000", 0, false);
    io::write_trajectory_csv(out, trajectory, overlay, meta);

    std::istringstream in(out.str());
    const io::CsvTable table = io::read_csv(in);
    REQUIRE(table.columns == std::vector<std::string>{"n", "d", "realized_drift",
                                                      "predicted_drift",
                                                      "closed_form"});
    const std::vector<double> d = trajectory.d_values();
    REQUIRE(table.rows.size() == d.size());
    for (std::size_t n = 0; n < d.size(); ++n) {
        CHECK(std::strtod(table.rows[n][1].c_str(), nullptr) == d[n]);
        CHECK(std::strtod(table.rows[n][4].c_str(), nullptr) == overlay[n]);
        if (n < trajectory.records.size()) {
            CHECK(std::strtod(table.rows[n][2].c_str(), nullptr) ==
                  trajectory.records[n].realized_drift);
        } else {
            CHECK(table.rows[n][2].empty());
        }
    }

    bool tool_seen = false;
    for (const auto& [key, value] : table.metadata) {
        if (key == "tool") tool_seen = true;
        if (key == "config_hash") CHECK(value == "deadbeef00000000");
    }
    CHECK(tool_seen);
}

TEST_CASE("bound report JSON round trip") {
    const BoundReport report = make_bound_report(
        63.0 / 64.0, SelectionSchema::truncation(0.5), 6);
    std::ostringstream out;
    io::write_bound_report_json(out, report,
                                io::make_metadata("00000000000000aa", 7, false));
    const nlohmann::json parsed = nlohmann::json::parse(out.str());
    CHECK(parsed["metadata"]["config_hash"] == "00000000000000aa");
    CHECK(parsed["metadata"]["base_seed"] == 7);
    CHECK(parsed["bound_report"]["d0"].get<double>() == 63.0 / 64.0);
    CHECK(parsed["bound_report"]["upper_bound"].get<double>() ==
          truncation_iteration_bound(63.0 / 64.0, 0.5));
    CHECK(parsed["bound_report"]["exact_tau_iterations"].get<long>() == 6);
    CHECK(parsed["bound_report"]["engine_tau"].get<int>() == 6);

    const BoundReport fair =
        make_bound_report(0.5, SelectionSchema::tournament_fair(), std::nullopt);
    std::ostringstream fair_out;
    io::write_bound_report_json(fair_out, fair,
                                io::make_metadata("00000000000000aa", 7, false));
    const nlohmann::json fair_parsed = nlohmann::json::parse(fair_out.str());
    CHECK(fair_parsed["bound_report"]["upper_bound"].is_null());
    CHECK(fair_parsed["bound_report"]["engine_tau"].is_null());
}

TEST_CASE("bound report CSV row") {
    const BoundReport report = make_bound_report(
        63.0 / 64.0, SelectionSchema::truncation(0.5), 6);
    std::ostringstream out;
    io::write_bound_report_csv(out, report,
                               io::make_metadata("0000000000000001", 0, false));
    std::istringstream in(out.str());
    const io::CsvTable table = io::read_csv(in);
    REQUIRE(table.rows.size() == 1);
    REQUIRE(table.columns.size() == 7);
    CHECK(std::strtod(table.rows[0][0].c_str(), nullptr) == 63.0 / 64.0);
    CHECK(std::strtod(table.rows[0][1].c_str(), nullptr) == 0.5);
    CHECK(std::strtod(table.rows[0][2].c_str(), nullptr) ==
          truncation_iteration_bound(63.0 / 64.0, 0.5));
    CHECK(table.rows[0][4] == "6");
    CHECK(table.rows[0][6] == "6");

    // no closed form: numeric cells stay empty
    const BoundReport fair =
        make_bound_report(0.5, SelectionSchema::tournament_fair(), std::nullopt);
    std::ostringstream fair_out;
    io::write_bound_report_csv(fair_out, fair,
                               io::make_metadata("0000000000000001", 0, false));
    std::istringstream fair_in(fair_out.str());
    const io::CsvTable fair_table = io::read_csv(fair_in);
    REQUIRE(fair_table.rows.size() == 1);
    CHECK(fair_table.rows[0][2].empty());
    CHECK(fair_table.rows[0][6].empty());
}

TEST_CASE("trials and comparison CSV emission") {
    const Problem p = make_onemax(4);
    sim::SimConfig config;
    config.population_size = 100;
    config.schema = SelectionSchema::truncation(0.5);
    config.seed = 11;
    config.replications = 3;
    const sim::MonteCarloSummary summary = sim::monte_carlo(p, config);
    const io::Metadata meta = io::make_metadata("0123456789abcdef", 11, true);

    std::ostringstream trials_out;
    io::write_trials_csv(trials_out, summary.trials, meta);
    std::istringstream trials_in(trials_out.str());
    const io::CsvTable trials = io::read_csv(trials_in);
    REQUIRE(trials.columns == std::vector<std::string>{"replication", "n", "d_hat",
                                                       "mean_fitness"});
    std::size_t expected_rows = 0;
    for (const auto& trial : summary.trials) expected_rows += trial.d_hat.size();
    CHECK(trials.rows.size() == expected_rows);
    // spot-check the first trial's first row parses back exactly
    CHECK(std::strtod(trials.rows[0][2].c_str(), nullptr) ==
          summary.trials[0].d_hat[0]);

    bool generator_seen = false;
    for (const auto& [key, value] : trials.metadata) {
        if (key == "generator") {
            generator_seen = true;
            CHECK(value == kGeneratorName);
        }
    }
    CHECK(generator_seen);

    std::ostringstream comparison_out;
    io::write_comparison_csv(comparison_out, summary, meta);
    std::istringstream comparison_in(comparison_out.str());
    const io::CsvTable comparison = io::read_csv(comparison_in);
    REQUIRE(comparison.columns ==
            std::vector<std::string>{"n", "engine_d", "mean_d_hat", "mean_abs_gap"});
    REQUIRE(comparison.rows.size() == summary.mean_abs_gap.size());
    for (std::size_t n = 0; n < summary.mean_abs_gap.size(); ++n) {
        CHECK(std::strtod(comparison.rows[n][3].c_str(), nullptr) ==
              summary.mean_abs_gap[n]);
    }
}

TEST_CASE("summary JSON carries config, stats and theory") {
    const Problem p = make_onemax(4);
    sim::SimConfig config;
    config.population_size = 200;
    config.schema = SelectionSchema::tournament_paper();
    config.seed = 5;
    config.replications = 4;
    const sim::MonteCarloSummary summary = sim::monte_carlo(p, config);
    const BoundReport report = make_bound_report(
        summary.engine_d.front(), config.schema, std::nullopt);

    std::ostringstream out;
    io::write_summary_json(out, summary, report,
                           io::make_metadata("ffff0000ffff0000", 5, true));
    const nlohmann::json parsed = nlohmann::json::parse(out.str());
    CHECK(parsed["config"]["population_size"] == 200);
    CHECK(parsed["config"]["replications"] == 4);
    CHECK(parsed["stopping_time"]["converged"].get<int>() ==
          summary.stopping.converged);
    CHECK(parsed["generator"] == kGeneratorName);
    CHECK(parsed["engine_d"].size() == summary.engine_d.size());
    CHECK(parsed["theory"]["d0"].get<double>() == summary.engine_d.front());
}
