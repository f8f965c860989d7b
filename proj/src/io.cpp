#include "edalab/io.hpp"

#include "edalab/version.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace edalab::io {

namespace {

void write_metadata(std::ostream& out, const Metadata& meta) {
    out << "# tool = " << meta.tool << "\n";
    out << "# config_hash = " << meta.config_hash << "\n";
    out << "# base_seed = " << meta.base_seed << "\n";
    if (!meta.generator.empty()) {
        out << "# generator = " << meta.generator << "\n";
    }
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out << ",";
        out << cells[i];
    }
    out << "\n";
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream stream(line);
    while (std::getline(stream, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

nlohmann::json metadata_to_json(const Metadata& meta) {
    nlohmann::json j{{"tool", meta.tool},
                     {"config_hash", meta.config_hash},
                     {"base_seed", meta.base_seed}};
    if (!meta.generator.empty()) j["generator"] = meta.generator;
    return j;
}

template <typename T>
nlohmann::json optional_to_json(const std::optional<T>& value) {
    if (value) return *value;
    return nullptr;
}

}  // namespace

Metadata make_metadata(const std::string& config_hash, std::uint64_t base_seed,
                       bool with_generator) {
    Metadata meta;
    meta.tool = std::string(kToolName) + " " + kToolVersion;
    meta.config_hash = config_hash;
    meta.base_seed = base_seed;
    if (with_generator) meta.generator = kGeneratorName;
    return meta;
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buffer[20];
    std::snprintf(buffer, sizeof(buffer), "%016llx",
                  static_cast<unsigned long long>(value));
    return buffer;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          const std::vector<double>& closed_form_overlay,
                          const Metadata& meta) {
    write_metadata(out, meta);
    out << "n,d,realized_drift,predicted_drift,closed_form\n";
    const std::vector<double> d = trajectory.d_values();
    for (std::size_t n = 0; n < d.size(); ++n) {
        std::vector<std::string> cells;
        cells.push_back(std::to_string(n));
        cells.push_back(format_double(d[n]));
        if (n < trajectory.records.size()) {
            const DriftRecord& record = trajectory.records[n];
            cells.push_back(format_double(record.realized_drift));
            cells.push_back(record.predicted_drift
                                ? format_double(*record.predicted_drift)
                                : std::string());
        } else {
            cells.emplace_back();
            cells.emplace_back();
        }
        cells.push_back(n < closed_form_overlay.size()
                            ? format_double(closed_form_overlay[n])
                            : std::string());
        write_row(out, cells);
    }
}

nlohmann::json bound_report_to_json(const BoundReport& report) {
    nlohmann::json j;
    j["d0"] = report.d0;
    j["mu"] = optional_to_json(report.mu);
    j["upper_bound"] = optional_to_json(report.upper_bound);
    j["exact_tau_real"] = optional_to_json(report.exact_tau_real);
    j["exact_tau_iterations"] = optional_to_json(report.exact_tau_iterations);
    j["paper_convention_iterations"] =
        optional_to_json(report.paper_convention_iterations);
    j["engine_tau"] = optional_to_json(report.engine_tau);
    j["note"] = report.note;
    return j;
}

void write_bound_report_json(std::ostream& out, const BoundReport& report,
                             const Metadata& meta) {
    nlohmann::json j;
    j["metadata"] = metadata_to_json(meta);
    j["bound_report"] = bound_report_to_json(report);
    out << j.dump(2) << "\n";
}

void write_bound_report_csv(std::ostream& out, const BoundReport& report,
                            const Metadata& meta) {
    write_metadata(out, meta);
    out << "d0,mu,upper_bound,exact_tau_real,exact_tau_iterations,"
           "paper_convention_iterations,engine_tau\n";
    auto cell = [](const auto& optional_value) -> std::string {
        if (!optional_value) return {};
        return format_double(static_cast<double>(*optional_value));
    };
    write_row(out, {format_double(report.d0), cell(report.mu),
                    cell(report.upper_bound), cell(report.exact_tau_real),
                    report.exact_tau_iterations
                        ? std::to_string(*report.exact_tau_iterations)
                        : std::string(),
                    cell(report.paper_convention_iterations),
                    report.engine_tau ? std::to_string(*report.engine_tau)
                                      : std::string()});
}

void write_bounds_grid_csv(std::ostream& out, const std::vector<GridRow>& rows,
                           const Metadata& meta) {
    write_metadata(out, meta);
    out << "d0,mu,truncation_bound,tournament_bound,"
           "truncation_tau_real,truncation_tau_iterations,"
           "tournament_tau_real,tournament_tau_iterations,"
           "truncation_bound_dominates,tournament_bound_dominates\n";
    for (const GridRow& row : rows) {
        write_row(out, {format_double(row.d0), format_double(row.mu),
                        format_double(row.truncation_bound),
                        format_double(row.tournament_bound),
                        format_double(row.truncation_tau.real_value),
                        std::to_string(row.truncation_tau.iterations),
                        format_double(row.tournament_tau.real_value),
                        std::to_string(row.tournament_tau.iterations),
                        row.truncation_bound_dominates ? "1" : "0",
                        row.tournament_bound_dominates ? "1" : "0"});
    }
}

void write_trials_csv(std::ostream& out,
                      const std::vector<sim::TrialResult>& trials,
                      const Metadata& meta) {
    write_metadata(out, meta);
    out << "replication,n,d_hat,mean_fitness\n";
    for (std::size_t k = 0; k < trials.size(); ++k) {
        const sim::TrialResult& trial = trials[k];
        for (std::size_t n = 0; n < trial.d_hat.size(); ++n) {
            write_row(out, {std::to_string(k), std::to_string(n),
                            format_double(trial.d_hat[n]),
                            format_double(trial.mean_fitness[n])});
        }
    }
}

void write_summary_json(std::ostream& out, const sim::MonteCarloSummary& summary,
                        const BoundReport& theory, const Metadata& meta) {
    nlohmann::json j;
    j["metadata"] = metadata_to_json(meta);

    nlohmann::json config;
    config["population_size"] = summary.config.population_size;
    config["parent_count"] = summary.config.parent_count;
    config["schema"] = summary.config.schema.name();
    config["max_iters"] = summary.config.max_iters.value_or(0);
    config["seed"] = summary.config.seed;
    config["replications"] = summary.config.replications;
    j["config"] = config;

    std::vector<double> stops;
    for (const auto& trial : summary.trials) {
        if (trial.stopping_time) {
            stops.push_back(static_cast<double>(*trial.stopping_time));
        }
    }
    std::sort(stops.begin(), stops.end());
    nlohmann::json stopping;
    stopping["mean"] = summary.stopping.mean;
    stopping["median"] = summary.stopping.median;
    stopping["stddev"] = summary.stopping.stddev;
    stopping["converged"] = summary.stopping.converged;
    stopping["not_reached"] = summary.stopping.not_reached;
    if (!stops.empty()) {
        stopping["min"] = stops.front();
        stopping["max"] = stops.back();
    }
    j["stopping_time"] = stopping;

    j["theory"] = bound_report_to_json(theory);
    j["engine_d"] = summary.engine_d;
    j["mean_abs_gap"] = summary.mean_abs_gap;
    j["generator"] = summary.generator;
    out << j.dump(2) << "\n";
}

void write_comparison_csv(std::ostream& out,
                          const sim::MonteCarloSummary& summary,
                          const Metadata& meta) {
    write_metadata(out, meta);
    out << "n,engine_d,mean_d_hat,mean_abs_gap\n";
    const std::size_t horizon = summary.mean_abs_gap.size();
    const double replications =
        static_cast<double>(summary.trials.empty() ? 1 : summary.trials.size());
    for (std::size_t n = 0; n < horizon; ++n) {
        const double d_ref =
            n < summary.engine_d.size() ? summary.engine_d[n] : 0.0;
        double total = 0.0;
        for (const auto& trial : summary.trials) {
            total += n < trial.d_hat.size() ? trial.d_hat[n] : 0.0;
        }
        write_row(out, {std::to_string(n), format_double(d_ref),
                        format_double(total / replications),
                        format_double(summary.mean_abs_gap[n])});
    }
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) {
                std::string key = line.substr(1, eq - 1);
                std::string value = line.substr(eq + 1);
                auto trim = [](std::string& s) {
                    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
                    while (!s.empty() && s.back() == ' ') s.pop_back();
                };
                trim(key);
                trim(value);
                table.metadata.emplace_back(std::move(key), std::move(value));
            }
            continue;
        }
        if (!header_seen) {
            table.columns = split_line(line);
            header_seen = true;
        } else {
            table.rows.push_back(split_line(line));
        }
    }
    return table;
}

}  // namespace edalab::io
