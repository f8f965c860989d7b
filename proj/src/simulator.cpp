#include "edalab/simulator.hpp"

#include "edalab/dynamics.hpp"
#include "edalab/errors.hpp"
#include "edalab/theory.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

namespace edalab::sim {

namespace {

std::vector<double> fitness_of(const Population& population,
                               const Problem& problem) {
    std::vector<double> fitness(population.size());
    for (std::size_t i = 0; i < population.size(); ++i) {
        fitness[i] = problem.fitness_at(population[i]);
    }
    return fitness;
}

double mean_fitness_of(const std::vector<double>& fitness) {
    double sum = 0.0;
    for (double f : fitness) sum += f;
    return sum / static_cast<double>(fitness.size());
}

Population select_truncation(const Population& population,
                             const std::vector<double>& fitness,
                             std::uint64_t parent_count, Rng& rng) {
    const std::size_t se = static_cast<std::size_t>(parent_count);

    // Cut value: fitness of the se-th best individual.
    std::vector<double> order(fitness);
    std::nth_element(order.begin(), order.begin() + (se - 1), order.end(),
                     std::greater<>());
    const double cut = order[se - 1];

    Population parents;
    parents.reserve(se);
    std::vector<std::uint64_t> tied;
    for (std::size_t i = 0; i < population.size(); ++i) {
        if (fitness[i] > cut) {
            parents.push_back(population[i]);
        } else if (fitness[i] == cut) {
            tied.push_back(population[i]);
        }
    }
    // Fill the remaining slots uniformly at random from the tied individuals.
    std::size_t need = se - parents.size();
    for (std::size_t i = 0; i < need; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(
                                      rng.below(tied.size() - i));
        std::swap(tied[i], tied[j]);
        parents.push_back(tied[i]);
    }
    return parents;
}

Population select_tournament(const Population& population,
                             const std::vector<double>& fitness,
                             std::uint64_t parent_count, Rng& rng) {
    const std::uint64_t n = population.size();
    Population parents;
    parents.reserve(static_cast<std::size_t>(parent_count));
    for (std::uint64_t t = 0; t < parent_count; ++t) {
        const std::size_t a = static_cast<std::size_t>(rng.below(n));
        const std::size_t b = static_cast<std::size_t>(rng.below(n));
        std::size_t winner;
        if (fitness[a] > fitness[b]) {
            winner = a;
        } else if (fitness[b] > fitness[a]) {
            winner = b;
        } else {
            winner = rng.coin() ? a : b;
        }
        parents.push_back(population[winner]);
    }
    return parents;
}

int derived_max_iters(const SimConfig& config, const Problem& problem) {
    const double d0 = d_of(uniform_level_distribution(problem), problem);
    if (d0 == 0.0) return 100;
    const long tau = (config.schema.kind == SelectionKind::Truncation)
                         ? truncation_exact_tau(d0, config.schema.mu).iterations
                         : tournament_exact_tau(d0).iterations;
    return static_cast<int>(10 * tau + 100);
}

}  // namespace

SimConfig resolve_sim_config(const SimConfig& config, const Problem& problem) {
    SimConfig resolved = config;
    if (resolved.population_size < 1) {
        throw ConfigError("population size must be at least 1");
    }
    if (resolved.replications < 1) {
        throw ConfigError("replications must be at least 1");
    }
    std::uint64_t derived_se;
    if (resolved.schema.kind == SelectionKind::Truncation) {
        derived_se = static_cast<std::uint64_t>(std::llround(
            resolved.schema.mu * static_cast<double>(resolved.population_size)));
    } else {
        derived_se = resolved.population_size / 2;
    }
    derived_se = std::max<std::uint64_t>(1, derived_se);
    if (resolved.population_size > 1) {
        derived_se = std::min(derived_se, resolved.population_size - 1);
    }
    if (resolved.parent_count == 0) {
        resolved.parent_count = derived_se;
    } else if (resolved.schema.kind == SelectionKind::Truncation &&
               resolved.parent_count != derived_se) {
        // truncation keeps exactly the best 100*mu%, so Se is pinned by mu
        throw ConfigError("truncation parent count must be round(mu * N) = " +
                          std::to_string(derived_se) + ", got " +
                          std::to_string(resolved.parent_count));
    }
    if (resolved.population_size > 1 &&
        resolved.parent_count >= resolved.population_size) {
        throw ConfigError("parent count must be smaller than the population size");
    }
    if (!resolved.max_iters) {
        resolved.max_iters = derived_max_iters(resolved, problem);
    }
    if (*resolved.max_iters < 0) {
        throw ConfigError("max_iters must be nonnegative");
    }
    return resolved;
}

Population sample_initial(const Problem& problem, std::uint64_t n, Rng& rng) {
    const std::uint64_t space = problem.space_size();
    Population population(static_cast<std::size_t>(n));
    for (auto& point : population) point = rng.below(space);
    return population;
}

Population select_parents(const Population& population, const Problem& problem,
                          const SelectionSchema& schema,
                          std::uint64_t parent_count, Rng& rng) {
    if (parent_count < 1) {
        throw ConfigError("parent count must be at least 1");
    }
    const std::vector<double> fitness = fitness_of(population, problem);
    if (schema.kind == SelectionKind::Truncation) {
        // taking the top block needs Se <= N; tournaments do not
        if (parent_count > population.size()) {
            throw ConfigError("truncation parent count must not exceed N");
        }
        return select_truncation(population, fitness, parent_count, rng);
    }
    return select_tournament(population, fitness, parent_count, rng);
}

Population resample(const Population& parents, std::uint64_t n, Rng& rng) {
    if (parents.empty()) {
        throw ConfigError("cannot resample from an empty parent population");
    }
    Population next(static_cast<std::size_t>(n));
    for (auto& point : next) {
        point = parents[static_cast<std::size_t>(rng.below(parents.size()))];
    }
    return next;
}

double d_hat_of(const Population& population, const Problem& problem) {
    const double f_max = problem.f_max();
    std::size_t suboptimal = 0;
    for (std::uint64_t point : population) {
        if (problem.fitness_at(point) != f_max) ++suboptimal;
    }
    return static_cast<double>(suboptimal) / static_cast<double>(population.size());
}

TrialResult run_trial(const Problem& problem, const SimConfig& config) {
    const int max_iters = config.max_iters.value_or(0);
    Rng rng(config.seed);

    TrialResult result;
    result.seed_used = config.seed;

    Population population = sample_initial(problem, config.population_size, rng);
    std::vector<double> fitness = fitness_of(population, problem);
    result.d_hat.push_back(d_hat_of(population, problem));
    result.mean_fitness.push_back(mean_fitness_of(fitness));
    if (result.d_hat.back() == 0.0) {
        result.stopping_time = 0;
        return result;
    }

    for (int n = 1; n <= max_iters; ++n) {
        const Population parents = select_parents(
            population, problem, config.schema, config.parent_count, rng);
        population = resample(parents, config.population_size, rng);
        fitness = fitness_of(population, problem);
        result.d_hat.push_back(d_hat_of(population, problem));
        result.mean_fitness.push_back(mean_fitness_of(fitness));
        if (result.d_hat.back() == 0.0) {
            result.stopping_time = n;
            break;
        }
    }
    return result;
}

unsigned worker_limit() {
    if (const char* env = std::getenv("EDA_LAB_THREADS")) {
        char* end = nullptr;
        const unsigned long parsed = std::strtoul(env, &end, 10);
        if (end != env && parsed > 0) return static_cast<unsigned>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

MonteCarloSummary monte_carlo(const Problem& problem, const SimConfig& config) {
    const SimConfig resolved = resolve_sim_config(config, problem);
    const int replications = resolved.replications;

    MonteCarloSummary summary;
    summary.config = resolved;
    summary.base_seed = resolved.seed;
    summary.generator = kGeneratorName;
    summary.trials.resize(static_cast<std::size_t>(replications));

    // Exact reference trajectory from the uniform start.
    const Trajectory reference =
        run(uniform_level_distribution(problem), resolved.schema, problem,
            *resolved.max_iters, /*keep_snapshots=*/false);
    summary.engine_d = reference.d_values();

    const unsigned workers =
        std::min<unsigned>(worker_limit(), static_cast<unsigned>(replications));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    auto work = [&]() {
        try {
            for (int k = next.fetch_add(1); k < replications;
                 k = next.fetch_add(1)) {
                SimConfig trial_config = resolved;
                trial_config.seed = resolved.seed + static_cast<std::uint64_t>(k);
                summary.trials[static_cast<std::size_t>(k)] =
                    run_trial(problem, trial_config);
            }
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& thread : pool) thread.join();
    if (failed) std::rethrow_exception(failure);

    // Stopping-time statistics over converged trials.
    std::vector<double> stops;
    for (const auto& trial : summary.trials) {
        if (trial.stopping_time) {
            stops.push_back(static_cast<double>(*trial.stopping_time));
        } else {
            ++summary.stopping.not_reached;
        }
    }
    summary.stopping.converged = static_cast<int>(stops.size());
    if (!stops.empty()) {
        std::sort(stops.begin(), stops.end());
        double sum = 0.0;
        for (double s : stops) sum += s;
        summary.stopping.mean = sum / static_cast<double>(stops.size());
        const std::size_t mid = stops.size() / 2;
        summary.stopping.median = (stops.size() % 2 == 1)
                                      ? stops[mid]
                                      : 0.5 * (stops[mid - 1] + stops[mid]);
        double sq = 0.0;
        for (double s : stops) {
            const double delta = s - summary.stopping.mean;
            sq += delta * delta;
        }
        summary.stopping.stddev =
            stops.size() > 1
                ? std::sqrt(sq / static_cast<double>(stops.size() - 1))
                : 0.0;
    }

    // Mean |d_hat(n) - d(n)| per iteration. Trajectories that stopped early
    // stay at 0 afterwards (absorption), as does the exact reference.
    std::size_t horizon = summary.engine_d.size();
    for (const auto& trial : summary.trials) {
        horizon = std::max(horizon, trial.d_hat.size());
    }
    summary.mean_abs_gap.resize(horizon, 0.0);
    for (std::size_t n = 0; n < horizon; ++n) {
        const double d_ref =
            n < summary.engine_d.size() ? summary.engine_d[n] : 0.0;
        double total = 0.0;
        for (const auto& trial : summary.trials) {
            const double d_emp = n < trial.d_hat.size() ? trial.d_hat[n] : 0.0;
            total += std::fabs(d_emp - d_ref);
        }
        summary.mean_abs_gap[n] = total / static_cast<double>(replications);
    }
    return summary;
}

}  // namespace edalab::sim
