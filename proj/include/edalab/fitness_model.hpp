// =============================================================================
// fitness_model.hpp - Finite search spaces, fitness functions, and
// probability mass over distinct fitness levels.
//
// Both selection operators in this library depend on a point x only through
// its fitness f(x), so a distribution over points can be collapsed to a
// distribution over distinct fitness levels without losing anything. The
// level-collapsed form is the canonical state of the exact dynamics: it is
// O(#levels) per step instead of O(|space|), which keeps 20+-bit spaces
// tractable.
// =============================================================================
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace edalab {

// Mass bookkeeping tolerances. Operator outputs are renormalized when their
// total mass is within kMassSumTolerance of 1; a larger deviation is an
// internal-consistency error, not drift to be papered over.
inline constexpr double kMassSumTolerance = 1e-9;
inline constexpr double kMassInvariantTolerance = 1e-12;

// ─────────────────────────────────────────────────────────────────────────────
// LevelDistribution - probability mass over strictly increasing fitness levels.
// Immutable after construction; levels with zero mass are kept.
// ─────────────────────────────────────────────────────────────────────────────
class LevelDistribution {
public:
    /// Validates: levels strictly increasing, masses nonnegative, total mass
    /// within kMassSumTolerance of 1 (then renormalized exactly).
    LevelDistribution(std::vector<double> levels, std::vector<double> mass);

    static LevelDistribution point_mass(double level);

    [[nodiscard]] std::size_t level_count() const { return levels_.size(); }
    [[nodiscard]] const std::vector<double>& levels() const { return levels_; }
    [[nodiscard]] const std::vector<double>& mass() const { return mass_; }

    /// Mass at an exactly matching level value; 0 if the level is absent.
    [[nodiscard]] double mass_at(double level) const;

    /// Highest level carrying positive mass.
    [[nodiscard]] double top_level() const;

    /// Expected level value (the expected fitness under this distribution).
    [[nodiscard]] double expected_level() const;

    [[nodiscard]] bool operator==(const LevelDistribution& other) const {
        return levels_ == other.levels_ && mass_ == other.mass_;
    }

private:
    std::vector<double> levels_;
    std::vector<double> mass_;
};

// ─────────────────────────────────────────────────────────────────────────────
// Problem - finite search space with a nonnegative fitness function.
// Either a bitstring space scored by popcount, or an explicit point list.
// ─────────────────────────────────────────────────────────────────────────────
class Problem {
public:
    [[nodiscard]] double f_max() const { return f_max_; }
    [[nodiscard]] std::uint64_t optimal_count() const { return optimal_count_; }
    [[nodiscard]] std::uint64_t space_size() const;

    /// Fitness of the point with the given index. For the bitstring space,
    /// the index is the genome itself and fitness is its popcount.
    [[nodiscard]] double fitness_at(std::uint64_t point_index) const;

    /// Distinct fitness values, ascending, with the number of points at each.
    [[nodiscard]] const std::vector<double>& level_values() const { return levels_; }
    [[nodiscard]] const std::vector<std::uint64_t>& level_point_counts() const {
        return level_counts_;
    }

    [[nodiscard]] bool is_onemax() const { return onemax_bits_ > 0; }
    [[nodiscard]] int onemax_bits() const { return onemax_bits_; }

    [[nodiscard]] std::string describe() const;

    friend Problem make_onemax(int bits);
    friend Problem make_explicit(std::vector<double> fitnesses);
    friend Problem make_explicit(std::vector<std::string> labels,
                                 std::vector<double> fitnesses);

private:
    Problem() = default;

    int onemax_bits_ = 0;                    // > 0 for the bitstring space
    std::vector<double> point_fitness_;      // explicit spaces only
    std::vector<std::string> point_labels_;  // optional, explicit spaces only
    double f_max_ = 0.0;
    std::uint64_t optimal_count_ = 0;
    std::vector<double> levels_;
    std::vector<std::uint64_t> level_counts_;
};

/// Bitstring space of the given length scored by the number of ones.
/// bits must be in [1, 24] (the space is enumerated); otherwise ConfigError.
[[nodiscard]] Problem make_onemax(int bits);

/// Explicit point list with one fitness per point (points are the indices).
/// Throws std::domain_error on negative fitness, ConfigError on empty input.
[[nodiscard]] Problem make_explicit(std::vector<double> fitnesses);

/// Same, with point labels. Throws ConfigError on length mismatch.
[[nodiscard]] Problem make_explicit(std::vector<std::string> labels,
                                    std::vector<double> fitnesses);

/// Level distribution of a population drawn uniformly from the space:
/// mass of level v = (#points with fitness v) / |space|. Every point has
/// positive probability under this start.
[[nodiscard]] LevelDistribution uniform_level_distribution(const Problem& problem);

/// Suboptimality ratio: 1 minus the mass at the optimal level
/// (0 if that level is absent). Always in [0, 1].
[[nodiscard]] double d_of(const LevelDistribution& dist, const Problem& problem);

/// Expected fitness under the distribution.
[[nodiscard]] double expected_fitness(const LevelDistribution& dist);

/// Distribution with suboptimality ratio d0: mass 1-d0 at the optimal level,
/// the rest on the lowest level. Exact for studying the d-dynamics, which do
/// not depend on how suboptimal mass is arranged. Requires a suboptimal
/// level to exist when d0 > 0.
[[nodiscard]] LevelDistribution d0_distribution(const Problem& problem, double d0);

}  // namespace edalab
