// =============================================================================
// selection.hpp - Exact infinite-population selection operators.
//
// Both operators map a parent LevelDistribution to the next one:
//
//   truncation(mu)     - keep the best 100*mu% of the mass. On a discrete
//                        space the threshold level rarely splits at exactly
//                        mu, so the boundary level is included fractionally
//                        (TruncationCut), which makes the selected mass
//                        exactly mu and the optimal-share growth exactly 1/mu
//                        per step until saturation.
//
//   tournament, two tie conventions:
//     "paper"  - ties count toward the winner's cumulative share, so the
//                optimal share doubles per step, clamped at 1; the remaining
//                mass is spread over suboptimal levels proportionally to
//                2 * mass(l) * F<=(l). This is the variant the closed forms
//                in theory.hpp describe.
//     "fair"   - the exact law of the better of two independent draws with
//                ties split evenly: new mass at level l is
//                F<=(l)^2 - F<(l)^2. Self-consistent, no clamp needed; the
//                suboptimality ratio squares per step.
// =============================================================================
#pragma once

#include "edalab/fitness_model.hpp"

#include <optional>
#include <string>

namespace edalab {

enum class SelectionKind { Truncation, TournamentPaper, TournamentFair };

struct SelectionSchema {
    SelectionKind kind = SelectionKind::Truncation;
    double mu = 0.5;  // truncation threshold, in (0, 1)

    static SelectionSchema truncation(double mu);
    static SelectionSchema tournament_paper();
    static SelectionSchema tournament_fair();

    [[nodiscard]] std::string name() const;
};

/// Fitness threshold beta together with the fraction of the beta-level mass
/// included, chosen so that mass strictly above beta plus
/// boundary_fraction * mass at beta equals mu exactly.
struct TruncationCut {
    double beta = 0.0;
    double boundary_fraction = 1.0;
};

/// One engine step as observed: realized_drift is d_before - d_after computed
/// by that exact subtraction. predicted_drift is absent for the fair
/// tournament (no closed drift formula is reported for it). clamped marks
/// saturation steps, where the prediction does not apply.
struct DriftRecord {
    int n = 0;
    double d_before = 0.0;
    double d_after = 0.0;
    double realized_drift = 0.0;
    std::optional<double> predicted_drift;
    bool clamped = false;
};

/// Scanning levels from the highest, finds the level at which cumulative mass
/// first reaches mu. Requires 0 < mu < 1 (which guarantees a cut exists).
[[nodiscard]] TruncationCut truncation_cut(const LevelDistribution& dist, double mu);

/// Levels above the cut keep mass/mu, the boundary level keeps
/// boundary_fraction * mass / mu, levels below get 0.
[[nodiscard]] LevelDistribution truncation_select(const LevelDistribution& dist,
                                                  double mu);

/// "paper" tie convention; needs the problem only for its optimal level.
[[nodiscard]] LevelDistribution tournament_select_paper(const LevelDistribution& dist,
                                                        const Problem& problem);

/// "fair" tie convention (exact max-of-two law).
[[nodiscard]] LevelDistribution tournament_select_fair(const LevelDistribution& dist);

/// One-step drift predicted by the closed formulas, before any clamping:
///   truncation        (1/mu - 1) * (1 - d)
///   tournament paper  (1 - d)
/// The fair tournament has no reported formula and throws
/// UnsupportedSchemaError (its drift is d - d^2).
[[nodiscard]] double predicted_drift(const LevelDistribution& dist,
                                     const SelectionSchema& schema,
                                     const Problem& problem);

/// Dispatch on the schema.
[[nodiscard]] LevelDistribution apply_selection(const LevelDistribution& dist,
                                                const SelectionSchema& schema,
                                                const Problem& problem);

}  // namespace edalab
