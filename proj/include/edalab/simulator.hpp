// =============================================================================
// simulator.hpp - Finite-population EDA used as the empirical oracle for the
// exact dynamics: as the population size N grows, its empirical d-trajectory
// and stopping time approach the infinite-population predictions.
//
// One iteration: select Se parents from the population, then resample N
// individuals i.i.d. from the parents' empirical distribution (the
// population size stays N; distributionally this matches the exact
// operators as N tends to infinity).
//
// Determinism: a trial is a pure function of (problem, config, seed).
// Replication k uses seed base_seed + k; all draws go through Rng, so equal
// seeds give bit-identical results. Replications run in parallel (capped by
// EDA_LAB_THREADS), and aggregation is independent of completion order.
// =============================================================================
#pragma once

#include "edalab/fitness_model.hpp"
#include "edalab/rng.hpp"
#include "edalab/selection.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace edalab::sim {

struct SimConfig {
    std::uint64_t population_size = 0;  // N
    std::uint64_t parent_count = 0;     // Se; 0 derives round(mu*N) or N/2
    SelectionSchema schema;
    std::optional<int> max_iters;       // unset derives 10*tau + 100
    std::uint64_t seed = 0;
    int replications = 1;
};

/// Fills parent_count and max_iters and validates 1 <= Se < N.
[[nodiscard]] SimConfig resolve_sim_config(const SimConfig& config,
                                           const Problem& problem);

struct TrialResult {
    std::optional<int> stopping_time;      // first n with d_hat(n) = 0
    std::vector<double> d_hat;             // indexed by iteration, from n = 0
    std::vector<double> mean_fitness;
    std::uint64_t seed_used = 0;
};

/// Individuals are point indices into the problem's space.
using Population = std::vector<std::uint64_t>;

/// N points drawn uniformly with replacement from the search space.
[[nodiscard]] Population sample_initial(const Problem& problem, std::uint64_t n,
                                        Rng& rng);

/// Truncation: the Se fittest individuals, ties at the cut broken uniformly
/// at random. Tournament: Se independent 2-tournaments, each sampling two
/// individuals with replacement and keeping the fitter (ties by fair coin).
[[nodiscard]] Population select_parents(const Population& population,
                                        const Problem& problem,
                                        const SelectionSchema& schema,
                                        std::uint64_t parent_count, Rng& rng);

/// N i.i.d. draws with replacement from the parent multiset.
[[nodiscard]] Population resample(const Population& parents, std::uint64_t n,
                                  Rng& rng);

/// Fraction of individuals whose fitness is below the optimum.
[[nodiscard]] double d_hat_of(const Population& population, const Problem& problem);

/// Runs one trial with config.seed. The config must already be resolved.
[[nodiscard]] TrialResult run_trial(const Problem& problem, const SimConfig& config);

struct StoppingStats {
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;  // sample standard deviation over converged trials
    int converged = 0;
    int not_reached = 0;
};

struct MonteCarloSummary {
    SimConfig config;                  // resolved
    std::vector<TrialResult> trials;
    StoppingStats stopping;
    std::vector<double> engine_d;      // exact d(n) reference, absorbed past tau
    std::vector<double> mean_abs_gap;  // mean |d_hat(n) - d(n)| per n
    std::uint64_t base_seed = 0;
    std::string generator;
};

/// config.replications independent trials with seeds base_seed + k.
[[nodiscard]] MonteCarloSummary monte_carlo(const Problem& problem,
                                            const SimConfig& config);

/// Worker cap: EDA_LAB_THREADS if set and positive, else hardware concurrency.
[[nodiscard]] unsigned worker_limit();

}  // namespace edalab::sim
