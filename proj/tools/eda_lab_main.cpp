// =============================================================================
// eda_lab - command-line front end.
//
// Subcommands:
//   dynamics  - run the exact dynamics, emit trajectory.csv + bound_report.json
//   bounds    - evaluate bounds and exact stopping times over a (d0, mu) grid
//   simulate  - run the finite-population Monte Carlo against the exact
//               dynamics, emit trials.csv + summary.json + comparison.csv
//   compare   - engine-vs-simulator comparison only (no per-trial dump)
//
// Exit codes: 0 success, 2 configuration error, 3 engine non-convergence,
// 1 any other failure.
// =============================================================================
#include "edalab/config.hpp"
#include "edalab/dynamics.hpp"
#include "edalab/errors.hpp"
#include "edalab/io.hpp"
#include "edalab/theory.hpp"
#include "edalab/version.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNotConverged = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> format_override;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "experiment config file (JSON)")
        ->required();
    cmd->add_option("--out-dir", args.out_dir, "output directory");
    cmd->add_option("--seed", args.seed_override, "base seed override");
    cmd->add_option("--format", args.format_override, "csv | json | both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
}

edalab::ExperimentConfig load(const CommonArgs& args) {
    edalab::ExperimentConfig config =
        edalab::load_experiment_config(args.config_path);
    if (args.format_override) {
        config.output_format = edalab::parse_output_format(*args.format_override);
    }
    if (args.seed_override && config.simulation) {
        config.simulation->seed = *args.seed_override;
    }
    return config;
}

bool want_csv(const edalab::ExperimentConfig& c) {
    return c.output_format != edalab::OutputFormat::Json;
}

bool want_json(const edalab::ExperimentConfig& c) {
    return c.output_format != edalab::OutputFormat::Csv;
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write output file: " + path.string());
    }
    return out;
}

std::uint64_t base_seed_of(const edalab::ExperimentConfig& config,
                           const CommonArgs& args) {
    if (config.simulation) return config.simulation->seed;
    return args.seed_override.value_or(0);
}

std::vector<double> closed_form_overlay(const edalab::Trajectory& trajectory,
                                        const edalab::SelectionSchema& schema) {
    const double d0 = trajectory.d0;
    const std::size_t states = trajectory.records.size() + 1;
    std::vector<double> overlay(states, 0.0);
    for (std::size_t n = 0; n < states; ++n) {
        switch (schema.kind) {
            case edalab::SelectionKind::Truncation:
                overlay[n] = edalab::truncation_d_closed_form(
                    d0, schema.mu, static_cast<int>(n));
                break;
            case edalab::SelectionKind::TournamentPaper:
                overlay[n] =
                    edalab::tournament_d_closed_form(d0, static_cast<int>(n));
                break;
            case edalab::SelectionKind::TournamentFair:
                overlay[n] = std::pow(d0, std::exp2(static_cast<double>(n)));
                break;
        }
    }
    return overlay;
}

int cmd_dynamics(const CommonArgs& args) {
    const edalab::ExperimentConfig config = load(args);
    const edalab::LevelDistribution initial = edalab::initial_distribution(config);
    const edalab::Trajectory trajectory = edalab::run(
        initial, config.schema, config.problem, config.engine_max_iters);

    const edalab::BoundReport report = edalab::make_bound_report(
        trajectory.d0, config.schema, trajectory.tau);
    const edalab::io::Metadata meta = edalab::io::make_metadata(
        config.config_hash, base_seed_of(config, args), /*with_generator=*/false);

    if (want_csv(config)) {
        auto out = open_output(args.out_dir, "trajectory.csv");
        edalab::io::write_trajectory_csv(
            out, trajectory, closed_form_overlay(trajectory, config.schema), meta);
        auto report_out = open_output(args.out_dir, "bound_report.csv");
        edalab::io::write_bound_report_csv(report_out, report, meta);
    }
    if (want_json(config)) {
        auto out = open_output(args.out_dir, "bound_report.json");
        edalab::io::write_bound_report_json(out, report, meta);
    }

    if (!trajectory.tau) {
        std::cerr << "dynamics: d did not reach 0 within "
                  << config.engine_max_iters << " iterations\n";
        return kExitNotConverged;
    }
    std::cout << "dynamics: tau = " << *trajectory.tau << ", d0 = "
              << edalab::io::format_double(trajectory.d0) << "\n";
    return kExitOk;
}

int cmd_bounds(const CommonArgs& args) {
    const edalab::ExperimentConfig config = load(args);
    if (!config.grid_d0 || !config.grid_mu) {
        throw edalab::ConfigError(
            "bounds needs a \"grid\" section with \"d0\" and \"mu\" arrays");
    }
    std::vector<edalab::io::GridRow> rows;
    for (double d0 : *config.grid_d0) {
        for (double mu : *config.grid_mu) {
            edalab::io::GridRow row;
            row.d0 = d0;
            row.mu = mu;
            row.truncation_bound = edalab::truncation_iteration_bound(d0, mu);
            row.tournament_bound = edalab::tournament_iteration_bound(d0);
            row.truncation_tau = edalab::truncation_exact_tau(d0, mu);
            row.tournament_tau = edalab::tournament_exact_tau(d0);
            row.truncation_bound_dominates =
                row.truncation_bound >= row.truncation_tau.real_value;
            row.tournament_bound_dominates =
                row.tournament_bound >= row.tournament_tau.real_value;
            rows.push_back(row);
        }
    }
    const edalab::io::Metadata meta = edalab::io::make_metadata(
        config.config_hash, base_seed_of(config, args), /*with_generator=*/false);
    auto out = open_output(args.out_dir, "bounds_grid.csv");
    edalab::io::write_bounds_grid_csv(out, rows, meta);
    std::cout << "bounds: " << rows.size() << " grid points\n";
    return kExitOk;
}

std::optional<int> first_zero(const std::vector<double>& values) {
    for (std::size_t n = 0; n < values.size(); ++n) {
        if (values[n] == 0.0) return static_cast<int>(n);
    }
    return std::nullopt;
}

int run_simulation(const CommonArgs& args, bool with_trials) {
    const edalab::ExperimentConfig config = load(args);
    if (!config.simulation) {
        throw edalab::ConfigError("this subcommand needs a \"simulation\" section");
    }
    const edalab::sim::MonteCarloSummary summary =
        edalab::sim::monte_carlo(config.problem, *config.simulation);

    const double d0 = summary.engine_d.empty() ? 0.0 : summary.engine_d.front();
    const edalab::BoundReport report = edalab::make_bound_report(
        d0, config.schema, first_zero(summary.engine_d));
    const edalab::io::Metadata meta = edalab::io::make_metadata(
        config.config_hash, summary.base_seed, /*with_generator=*/true);

    if (want_csv(config)) {
        if (with_trials) {
            auto trials = open_output(args.out_dir, "trials.csv");
            edalab::io::write_trials_csv(trials, summary.trials, meta);
        }
        auto comparison = open_output(args.out_dir, "comparison.csv");
        edalab::io::write_comparison_csv(comparison, summary, meta);
    }
    if (want_json(config)) {
        auto out = open_output(
            args.out_dir, with_trials ? "summary.json" : "compare_report.json");
        edalab::io::write_summary_json(out, summary, report, meta);
    }

    std::cout << (with_trials ? "simulate" : "compare") << ": "
              << summary.stopping.converged << "/" << summary.trials.size()
              << " trials converged, median stopping time "
              << edalab::io::format_double(summary.stopping.median) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(edalab::kToolName) + " " + edalab::kToolVersion +
                 " - exact selection dynamics, bounds and Monte Carlo checks"};
    app.require_subcommand(1);

    CommonArgs dynamics_args, bounds_args, simulate_args, compare_args;
    CLI::App* dynamics =
        app.add_subcommand("dynamics", "exact dynamics trajectory and bounds");
    add_common_options(dynamics, dynamics_args);
    CLI::App* bounds =
        app.add_subcommand("bounds", "bounds and exact stopping times on a grid");
    add_common_options(bounds, bounds_args);
    CLI::App* simulate =
        app.add_subcommand("simulate", "finite-population Monte Carlo runs");
    add_common_options(simulate, simulate_args);
    CLI::App* compare =
        app.add_subcommand("compare", "predicted-vs-empirical comparison");
    add_common_options(compare, compare_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (dynamics->parsed()) return cmd_dynamics(dynamics_args);
        if (bounds->parsed()) return cmd_bounds(bounds_args);
        if (simulate->parsed()) return run_simulation(simulate_args, true);
        if (compare->parsed()) return run_simulation(compare_args, false);
    } catch (const edalab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
