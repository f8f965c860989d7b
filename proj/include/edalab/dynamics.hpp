// =============================================================================
// dynamics.hpp - Iterates the exact selection dynamics and records the
// suboptimality ratio d, the realized one-step drift, and the first hitting
// time of d = 0.
//
// The updating step is the identity on the parent distribution, so one
// iteration is exactly one application of the selection operator.
//
// Absorption is detected exactly: a step whose optimal-level mass lands
// within kAbsorptionSnapTolerance of 1 is snapped to the absorbing state, so
// accumulated rounding in the last ulps cannot add a spurious extra
// iteration before d reaches 0.
// =============================================================================
#pragma once

#include "edalab/fitness_model.hpp"
#include "edalab/selection.hpp"

#include <optional>
#include <vector>

namespace edalab {

inline constexpr double kAbsorptionSnapTolerance = 1e-12;

/// Snapshots are kept by default only for horizons up to this length.
inline constexpr int kSnapshotHorizonLimit = 10000;

struct Trajectory {
    double d0 = 0.0;
    std::vector<DriftRecord> records;            // one per applied step
    std::vector<LevelDistribution> snapshots;    // state at n; empty if disabled
    std::optional<int> tau;                      // first n with d(n) = 0
    int max_iters = 0;

    /// d(0), d(1), ..., d(last recorded state).
    [[nodiscard]] std::vector<double> d_values() const;
};

/// One selection step, with exact absorption snapping.
[[nodiscard]] LevelDistribution step(const LevelDistribution& dist,
                                     const SelectionSchema& schema,
                                     const Problem& problem);

/// Iterates until d = 0 (exactly, after snapping) or max_iters steps.
/// Non-convergence within max_iters is a legal outcome: tau stays unset.
/// Snapshots are kept iff max_iters <= kSnapshotHorizonLimit.
[[nodiscard]] Trajectory run(const LevelDistribution& initial,
                             const SelectionSchema& schema,
                             const Problem& problem,
                             int max_iters);

[[nodiscard]] Trajectory run(const LevelDistribution& initial,
                             const SelectionSchema& schema,
                             const Problem& problem,
                             int max_iters,
                             bool keep_snapshots);

/// Checks |realized - predicted| <= 1e-12 on every non-clamped step with
/// d_before > 0; returns the violating records (empty when the drift
/// identities hold).
[[nodiscard]] std::vector<DriftRecord> verify_drift(const Trajectory& trajectory,
                                                    const SelectionSchema& schema);

inline constexpr double kDriftIdentityTolerance = 1e-12;

}  // namespace edalab
