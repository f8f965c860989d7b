// =============================================================================
// io.hpp - CSV and JSON emission for trajectories, bound reports, and
// Monte Carlo summaries, plus a CSV reader for round-trip checks.
//
// Numbers are written with 17 significant digits and '.' decimal separator,
// which round-trips IEEE doubles losslessly. Every file starts with a
// metadata header (tool version, config hash, base seed, generator) that is
// sufficient to reproduce it bit-identically; nothing time-dependent is
// recorded.
// =============================================================================
#pragma once

#include "edalab/dynamics.hpp"
#include "edalab/simulator.hpp"
#include "edalab/theory.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace edalab::io {

struct Metadata {
    std::string tool;         // "eda_lab 0.1.0"
    std::string config_hash;  // hex of fnv1a64 over the config file text
    std::uint64_t base_seed = 0;
    std::string generator;    // empty when no randomness was involved
};

[[nodiscard]] Metadata make_metadata(const std::string& config_hash,
                                     std::uint64_t base_seed,
                                     bool with_generator);

/// %.17g with '.' decimal separator, locale-independent.
[[nodiscard]] std::string format_double(double value);

[[nodiscard]] std::uint64_t fnv1a64(std::string_view text);
[[nodiscard]] std::string hex64(std::uint64_t value);

// ── Writers ──────────────────────────────────────────────────────────────────

/// Columns: n, d, realized_drift, predicted_drift, closed_form. Drift cells
/// are empty on the terminal row (no step was taken from it), and
/// predicted_drift is empty where no formula applies.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          const std::vector<double>& closed_form_overlay,
                          const Metadata& meta);

[[nodiscard]] nlohmann::json bound_report_to_json(const BoundReport& report);
void write_bound_report_json(std::ostream& out, const BoundReport& report,
                             const Metadata& meta);

/// One CSV row per report; empty cells where no closed form applies.
void write_bound_report_csv(std::ostream& out, const BoundReport& report,
                            const Metadata& meta);

struct GridRow {
    double d0 = 0.0;
    double mu = 0.0;
    double truncation_bound = 0.0;
    double tournament_bound = 0.0;
    ExactTau truncation_tau;
    ExactTau tournament_tau;
    bool truncation_bound_dominates = false;
    bool tournament_bound_dominates = false;
};

void write_bounds_grid_csv(std::ostream& out, const std::vector<GridRow>& rows,
                           const Metadata& meta);

/// Columns: replication, n, d_hat, mean_fitness (one row per trial iteration).
void write_trials_csv(std::ostream& out,
                      const std::vector<sim::TrialResult>& trials,
                      const Metadata& meta);

void write_summary_json(std::ostream& out, const sim::MonteCarloSummary& summary,
                        const BoundReport& theory, const Metadata& meta);

/// Columns: n, engine_d, mean_d_hat, mean_abs_gap.
void write_comparison_csv(std::ostream& out,
                          const sim::MonteCarloSummary& summary,
                          const Metadata& meta);

// ── Reader (round-trip checks) ───────────────────────────────────────────────

struct CsvTable {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

[[nodiscard]] CsvTable read_csv(std::istream& in);

}  // namespace edalab::io
