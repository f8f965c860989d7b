#include "edalab/selection.hpp"

#include "edalab/errors.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace edalab {

namespace {

void require_valid_mu(double mu) {
    if (!(mu > 0.0 && mu < 1.0)) {
        throw std::domain_error("truncation threshold must satisfy 0 < mu < 1, got " +
                                std::to_string(mu));
    }
}

// Renormalizes, with the single-support shortcut that makes an absorbed state
// carry mass exactly 1.0 (x / x == 1 in IEEE arithmetic).
LevelDistribution make_distribution(std::vector<double> levels,
                                    std::vector<double> mass) {
    double sum = 0.0;
    for (double m : mass) sum += m;
    if (std::fabs(sum - 1.0) > kMassSumTolerance) {
        throw InternalError("selection output mass sums to " + std::to_string(sum));
    }
    if (sum != 1.0) {
        for (double& m : mass) m /= sum;
    }
    return LevelDistribution(std::move(levels), std::move(mass));
}

}  // namespace

SelectionSchema SelectionSchema::truncation(double mu) {
    require_valid_mu(mu);
    return SelectionSchema{SelectionKind::Truncation, mu};
}

SelectionSchema SelectionSchema::tournament_paper() {
    return SelectionSchema{SelectionKind::TournamentPaper, 0.0};
}

SelectionSchema SelectionSchema::tournament_fair() {
    return SelectionSchema{SelectionKind::TournamentFair, 0.0};
}

std::string SelectionSchema::name() const {
    switch (kind) {
        case SelectionKind::Truncation:
            return "truncation(mu=" + std::to_string(mu) + ")";
        case SelectionKind::TournamentPaper:
            return "tournament(ties=paper)";
        case SelectionKind::TournamentFair:
            return "tournament(ties=fair)";
    }
    return "unknown";
}

TruncationCut truncation_cut(const LevelDistribution& dist, double mu) {
    require_valid_mu(mu);
    const auto& levels = dist.levels();
    const auto& mass = dist.mass();

    double above = 0.0;  // mass strictly above the current level
    for (std::size_t i = levels.size(); i-- > 0;) {
        const double m = mass[i];
        if (m > 0.0 && above + m >= mu) {
            // above < mu here, otherwise an earlier level already returned;
            // the min keeps rounding from pushing the fraction past 1
            return TruncationCut{levels[i], std::min(1.0, (mu - above) / m)};
        }
        above += m;
    }
    // Unreachable for valid inputs (total mass 1 > mu); fall back to the
    // lowest level taking everything that is left.
    return TruncationCut{levels.front(), 1.0};
}

LevelDistribution truncation_select(const LevelDistribution& dist, double mu) {
    const TruncationCut cut = truncation_cut(dist, mu);
    const auto& levels = dist.levels();
    const auto& mass = dist.mass();

    std::vector<double> out(levels.size(), 0.0);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] > cut.beta) {
            out[i] = mass[i] / mu;
        } else if (levels[i] == cut.beta) {
            out[i] = cut.boundary_fraction * mass[i] / mu;
        }
    }
    return make_distribution(levels, std::move(out));
}

LevelDistribution tournament_select_paper(const LevelDistribution& dist,
                                          const Problem& problem) {
    const auto& levels = dist.levels();
    const auto& mass = dist.mass();
    const double f_max = problem.f_max();

    const double p = dist.mass_at(f_max);
    const double p_next = std::min(1.0, 2.0 * p);

    std::vector<double> out(levels.size(), 0.0);
    if (p_next >= 1.0) {
        for (std::size_t i = 0; i < levels.size(); ++i) {
            out[i] = (levels[i] == f_max) ? 1.0 : 0.0;
        }
        return LevelDistribution(levels, std::move(out));
    }

    // Suboptimal weights 2 * mass(l) * F<=(l); the leftover 1 - p_next is
    // split proportionally among them.
    double cumulative = 0.0;
    std::vector<double> weight(levels.size(), 0.0);
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        cumulative += mass[i];
        if (levels[i] != f_max) {
            weight[i] = 2.0 * mass[i] * cumulative;
            weight_sum += weight[i];
        }
    }
    const double leftover = 1.0 - p_next;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] == f_max) {
            out[i] = p_next;
        } else if (weight_sum > 0.0) {
            out[i] = leftover * (weight[i] / weight_sum);
        }
    }
    return make_distribution(levels, std::move(out));
}

LevelDistribution tournament_select_fair(const LevelDistribution& dist) {
    const auto& levels = dist.levels();
    const auto& mass = dist.mass();

    std::vector<double> out(levels.size(), 0.0);
    double below = 0.0;  // F<(l)
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const double upto = below + mass[i];  // F<=(l)
        out[i] = upto * upto - below * below;
        below = upto;
    }
    return make_distribution(levels, std::move(out));
}

double predicted_drift(const LevelDistribution& dist,
                       const SelectionSchema& schema,
                       const Problem& problem) {
    const double d = d_of(dist, problem);
    switch (schema.kind) {
        case SelectionKind::Truncation:
            return (1.0 / schema.mu - 1.0) * (1.0 - d);
        case SelectionKind::TournamentPaper:
            return 1.0 - d;
        case SelectionKind::TournamentFair:
            throw UnsupportedSchemaError(
                "no closed drift formula is reported for the fair tournament "
                "(its one-step drift is d - d^2)");
    }
    throw UnsupportedSchemaError("unknown selection schema");
}

LevelDistribution apply_selection(const LevelDistribution& dist,
                                  const SelectionSchema& schema,
                                  const Problem& problem) {
    switch (schema.kind) {
        case SelectionKind::Truncation:
            return truncation_select(dist, schema.mu);
        case SelectionKind::TournamentPaper:
            return tournament_select_paper(dist, problem);
        case SelectionKind::TournamentFair:
            return tournament_select_fair(dist);
    }
    throw UnsupportedSchemaError("unknown selection schema");
}

}  // namespace edalab
