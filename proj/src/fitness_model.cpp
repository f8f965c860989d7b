#include "edalab/fitness_model.hpp"

#include "edalab/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

namespace edalab {

namespace {

// Renormalizes in place; total mass further than kMassSumTolerance from 1 is
// an internal-consistency failure.
void check_and_renormalize(std::vector<double>& mass) {
    double sum = 0.0;
    for (double m : mass) sum += m;
    if (std::fabs(sum - 1.0) > kMassSumTolerance) {
        throw InternalError("level masses sum to " + std::to_string(sum) +
                            ", expected 1 within " + std::to_string(kMassSumTolerance));
    }
    if (sum != 1.0) {
        for (double& m : mass) m /= sum;
    }
}

}  // namespace

// ── LevelDistribution ────────────────────────────────────────────────────────

LevelDistribution::LevelDistribution(std::vector<double> levels,
                                     std::vector<double> mass)
    : levels_(std::move(levels)), mass_(std::move(mass)) {
    if (levels_.empty() || levels_.size() != mass_.size()) {
        throw ConfigError("level distribution needs equal-length, nonempty levels and masses");
    }
    for (std::size_t i = 1; i < levels_.size(); ++i) {
        if (!(levels_[i - 1] < levels_[i])) {
            throw ConfigError("levels must be strictly increasing");
        }
    }
    for (double m : mass_) {
        if (!(m >= 0.0)) {
            throw ConfigError("level masses must be nonnegative");
        }
    }
    check_and_renormalize(mass_);
}

LevelDistribution LevelDistribution::point_mass(double level) {
    return LevelDistribution({level}, {1.0});
}

double LevelDistribution::mass_at(double level) const {
    auto it = std::lower_bound(levels_.begin(), levels_.end(), level);
    if (it == levels_.end() || *it != level) return 0.0;
    return mass_[static_cast<std::size_t>(it - levels_.begin())];
}

double LevelDistribution::top_level() const {
    for (std::size_t i = levels_.size(); i-- > 0;) {
        if (mass_[i] > 0.0) return levels_[i];
    }
    return levels_.front();
}

double LevelDistribution::expected_level() const {
    double e = 0.0;
    for (std::size_t i = 0; i < levels_.size(); ++i) e += levels_[i] * mass_[i];
    return e;
}

// ── Problem ──────────────────────────────────────────────────────────────────

std::uint64_t Problem::space_size() const {
    if (onemax_bits_ > 0) return std::uint64_t{1} << onemax_bits_;
    return point_fitness_.size();
}

double Problem::fitness_at(std::uint64_t point_index) const {
    if (onemax_bits_ > 0) {
        return static_cast<double>(std::popcount(point_index));
    }
    return point_fitness_.at(point_index);
}

std::string Problem::describe() const {
    if (onemax_bits_ > 0) return "onemax:" + std::to_string(onemax_bits_);
    return "explicit:" + std::to_string(point_fitness_.size());
}

Problem make_onemax(int bits) {
    if (bits < 1 || bits > 24) {
        throw ConfigError("onemax bit count must be in [1, 24], got " +
                          std::to_string(bits));
    }
    Problem p;
    p.onemax_bits_ = bits;
    p.f_max_ = static_cast<double>(bits);
    p.optimal_count_ = 1;
    p.levels_.resize(static_cast<std::size_t>(bits) + 1);
    p.level_counts_.resize(static_cast<std::size_t>(bits) + 1);
    std::uint64_t binom = 1;  // C(bits, 0)
    for (int k = 0; k <= bits; ++k) {
        p.levels_[static_cast<std::size_t>(k)] = static_cast<double>(k);
        p.level_counts_[static_cast<std::size_t>(k)] = binom;
        binom = binom * static_cast<std::uint64_t>(bits - k) /
                static_cast<std::uint64_t>(k + 1);
    }
    return p;
}

Problem make_explicit(std::vector<double> fitnesses) {
    return make_explicit(std::vector<std::string>{}, std::move(fitnesses));
}

Problem make_explicit(std::vector<std::string> labels,
                      std::vector<double> fitnesses) {
    if (fitnesses.empty()) {
        throw ConfigError("explicit problem needs at least one point");
    }
    if (!labels.empty() && labels.size() != fitnesses.size()) {
        throw ConfigError("point labels and fitnesses differ in length");
    }
    for (double f : fitnesses) {
        if (!(f >= 0.0)) {
            throw std::domain_error("fitness values must be nonnegative, got " +
                                    std::to_string(f));
        }
    }
    Problem p;
    p.point_fitness_ = std::move(fitnesses);
    p.point_labels_ = std::move(labels);

    std::map<double, std::uint64_t> counts;
    for (double f : p.point_fitness_) ++counts[f];
    p.levels_.reserve(counts.size());
    p.level_counts_.reserve(counts.size());
    for (const auto& [level, count] : counts) {
        p.levels_.push_back(level);
        p.level_counts_.push_back(count);
    }
    p.f_max_ = p.levels_.back();
    p.optimal_count_ = p.level_counts_.back();
    return p;
}

// ── Free functions ───────────────────────────────────────────────────────────

LevelDistribution uniform_level_distribution(const Problem& problem) {
    const auto& levels = problem.level_values();
    const auto& counts = problem.level_point_counts();
    const double total = static_cast<double>(problem.space_size());
    std::vector<double> mass(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) {
        mass[i] = static_cast<double>(counts[i]) / total;
    }
    return LevelDistribution(levels, std::move(mass));
}

double d_of(const LevelDistribution& dist, const Problem& problem) {
    const double optimal_mass = dist.mass_at(problem.f_max());
    if (optimal_mass >= 1.0) return 0.0;
    return 1.0 - optimal_mass;
}

double expected_fitness(const LevelDistribution& dist) {
    return dist.expected_level();
}

LevelDistribution d0_distribution(const Problem& problem, double d0) {
    if (!(d0 >= 0.0 && d0 < 1.0)) {
        throw ConfigError("initial suboptimality ratio must be in [0, 1), got " +
                          std::to_string(d0));
    }
    if (d0 == 0.0) {
        return LevelDistribution::point_mass(problem.f_max());
    }
    const auto& levels = problem.level_values();
    if (levels.size() < 2) {
        throw ConfigError("problem has no suboptimal level to carry mass " +
                          std::to_string(d0));
    }
    return LevelDistribution({levels.front(), problem.f_max()}, {d0, 1.0 - d0});
}

}  // namespace edalab
