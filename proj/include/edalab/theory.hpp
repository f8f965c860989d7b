// =============================================================================
// theory.hpp - Closed-form stopping times and iteration bounds for the exact
// dynamics, computed independently of the engine so the two can
// cross-validate.
//
// For an initial suboptimality ratio d0 in (0, 1):
//
//   truncation(mu):  d(n) = max(0, 1 - (1 - d0) * mu^-n)
//                    tau  = log(1 - d0) / log(mu)
//                    bound: mu*d0 / ((1-mu)*(1-d0)) + 1 iterations
//
//   tournament (paper ties):
//                    d(n) = max(0, 1 - (1 - d0) * 2^n)
//                    tau  = log(1 - d0) / log(0.5)
//                    bound: d0 / (1 - d0) + 1 iterations
//
// The bounds are products h0 * h1 of a drift argument: h0 bounds d from
// above, 1/h1 bounds the expected one-step decrease of d from below, and the
// expected hitting time of 0 is at most h0 * h1.
// =============================================================================
#pragma once

#include "edalab/selection.hpp"

#include <optional>
#include <string>

namespace edalab {

/// Expected-hitting-time bound from a drift argument: returns h0 * h1.
/// Throws std::domain_error unless both are positive.
[[nodiscard]] double hitting_time_drift_bound(double h0, double h1);

/// Iteration bound for truncation selection: mu*d0/((1-mu)(1-d0)) + 1.
[[nodiscard]] double truncation_iteration_bound(double d0, double mu);

/// Iteration bound for two-tournament selection: d0/(1-d0) + 1.
[[nodiscard]] double tournament_iteration_bound(double d0);

/// d(n) under truncation, clamped at the absorbing state.
[[nodiscard]] double truncation_d_closed_form(double d0, double mu, int n);

/// d(n) under the paper-ties tournament, clamped at the absorbing state.
[[nodiscard]] double tournament_d_closed_form(double d0, int n);

/// Exact stopping time. real_value is the log ratio; iterations is its
/// ceiling (values within 1e-9 of an integer snap to it first, absorbing
/// floating-point noise in the logs); paper_convention is real_value + 1,
/// which additionally counts the terminal check.
struct ExactTau {
    double real_value = 0.0;
    long iterations = 0;
    double paper_convention = 0.0;
};

[[nodiscard]] ExactTau truncation_exact_tau(double d0, double mu);
[[nodiscard]] ExactTau tournament_exact_tau(double d0);

/// The h0, h1 pair instantiating the drift bound for each operator; the
/// iteration bounds above equal hitting_time_drift_bound(h0, h1) + 1.
struct DriftBoundTerms {
    double h0 = 0.0;
    double h1 = 0.0;
};

[[nodiscard]] DriftBoundTerms truncation_drift_terms(double d0, double mu);
[[nodiscard]] DriftBoundTerms tournament_drift_terms(double d0);

/// Theory-vs-engine summary for one run. Fields are absent where no closed
/// form applies (fair tournament, or an already-converged start).
struct BoundReport {
    double d0 = 0.0;
    std::optional<double> mu;
    std::optional<double> upper_bound;
    std::optional<double> exact_tau_real;
    std::optional<long> exact_tau_iterations;
    std::optional<double> paper_convention_iterations;
    std::optional<int> engine_tau;
    std::string note;
};

[[nodiscard]] BoundReport make_bound_report(double d0,
                                            const SelectionSchema& schema,
                                            std::optional<int> engine_tau);

}  // namespace edalab
