#include "edalab/dynamics.hpp"

#include "edalab/errors.hpp"

#include <cmath>

namespace edalab {

namespace {

// Whether the closed-form prediction saturates on this step. Saturated steps
// land on the absorbing state and are excluded from drift-identity checks.
bool step_is_clamped(double d_before, const SelectionSchema& schema) {
    switch (schema.kind) {
        case SelectionKind::Truncation:
            return (1.0 - d_before) / schema.mu > 1.0;
        case SelectionKind::TournamentPaper:
            return 2.0 * (1.0 - d_before) > 1.0;
        case SelectionKind::TournamentFair:
            return false;
    }
    return false;
}

std::optional<double> maybe_predicted_drift(const LevelDistribution& dist,
                                            const SelectionSchema& schema,
                                            const Problem& problem) {
    if (schema.kind == SelectionKind::TournamentFair) return std::nullopt;
    return predicted_drift(dist, schema, problem);
}

// Only reached when the optimal level is present with nearly full mass.
LevelDistribution absorbed_state(const LevelDistribution& like,
                                 const Problem& problem) {
    const auto& levels = like.levels();
    std::vector<double> mass(levels.size(), 0.0);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] == problem.f_max()) mass[i] = 1.0;
    }
    return LevelDistribution(levels, std::move(mass));
}

}  // namespace

std::vector<double> Trajectory::d_values() const {
    std::vector<double> out;
    out.reserve(records.size() + 1);
    out.push_back(d0);
    for (const auto& r : records) out.push_back(r.d_after);
    return out;
}

LevelDistribution step(const LevelDistribution& dist,
                       const SelectionSchema& schema,
                       const Problem& problem) {
    LevelDistribution next = apply_selection(dist, schema, problem);
    const double optimal_mass = next.mass_at(problem.f_max());
    if (optimal_mass < 1.0 && optimal_mass >= 1.0 - kAbsorptionSnapTolerance) {
        return absorbed_state(next, problem);
    }
    return next;
}

Trajectory run(const LevelDistribution& initial,
               const SelectionSchema& schema,
               const Problem& problem,
               int max_iters) {
    return run(initial, schema, problem, max_iters,
               max_iters <= kSnapshotHorizonLimit);
}

Trajectory run(const LevelDistribution& initial,
               const SelectionSchema& schema,
               const Problem& problem,
               int max_iters,
               bool keep_snapshots) {
    if (max_iters < 0) {
        throw ConfigError("max_iters must be nonnegative");
    }
    Trajectory trajectory;
    trajectory.max_iters = max_iters;
    trajectory.d0 = d_of(initial, problem);
    if (keep_snapshots) trajectory.snapshots.push_back(initial);

    if (trajectory.d0 == 0.0) {
        trajectory.tau = 0;
        return trajectory;
    }

    LevelDistribution current = initial;
    double d_current = trajectory.d0;
    for (int n = 0; n < max_iters; ++n) {
        DriftRecord record;
        record.n = n;
        record.d_before = d_current;
        record.predicted_drift = maybe_predicted_drift(current, schema, problem);
        record.clamped = step_is_clamped(d_current, schema);

        current = step(current, schema, problem);
        d_current = d_of(current, problem);

        record.d_after = d_current;
        record.realized_drift = record.d_before - record.d_after;
        trajectory.records.push_back(record);
        if (keep_snapshots) trajectory.snapshots.push_back(current);

        if (d_current == 0.0) {
            trajectory.tau = n + 1;
            break;
        }
    }
    return trajectory;
}

std::vector<DriftRecord> verify_drift(const Trajectory& trajectory,
                                      const SelectionSchema& schema) {
    if (schema.kind == SelectionKind::TournamentFair) {
        throw UnsupportedSchemaError(
            "drift verification needs a schema with a predicted-drift formula");
    }
    std::vector<DriftRecord> violations;
    for (const auto& record : trajectory.records) {
        if (record.d_before <= 0.0 || record.clamped || !record.predicted_drift) {
            continue;
        }
        if (std::fabs(record.realized_drift - *record.predicted_drift) >
            kDriftIdentityTolerance) {
            violations.push_back(record);
        }
    }
    return violations;
}

}  // namespace edalab
