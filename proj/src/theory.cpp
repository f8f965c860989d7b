#include "edalab/theory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace edalab {

namespace {

constexpr double kIntegerSnapTolerance = 1e-9;

void require_open_unit(double x, const char* name) {
    if (!(x > 0.0 && x < 1.0)) {
        throw std::domain_error(std::string(name) + " must be in (0, 1), got " +
                                std::to_string(x));
    }
}

// Ceiling with a snap window: a ratio within kIntegerSnapTolerance of an
// integer counts as that integer.
long snapped_ceiling(double x) {
    return static_cast<long>(std::ceil(x - kIntegerSnapTolerance));
}

ExactTau exact_tau_from_ratio(double log_ratio) {
    ExactTau tau;
    tau.real_value = log_ratio;
    tau.iterations = snapped_ceiling(log_ratio);
    tau.paper_convention = 1.0 + log_ratio;
    return tau;
}

}  // namespace

double hitting_time_drift_bound(double h0, double h1) {
    if (!(h0 > 0.0) || !(h1 > 0.0)) {
        throw std::domain_error("drift bound terms must be positive");
    }
    return h0 * h1;
}

double truncation_iteration_bound(double d0, double mu) {
    require_open_unit(d0, "d0");
    require_open_unit(mu, "mu");
    return mu * d0 / ((1.0 - mu) * (1.0 - d0)) + 1.0;
}

double tournament_iteration_bound(double d0) {
    require_open_unit(d0, "d0");
    return d0 / (1.0 - d0) + 1.0;
}

double truncation_d_closed_form(double d0, double mu, int n) {
    if (!(d0 >= 0.0 && d0 < 1.0)) {
        throw std::domain_error("d0 must be in [0, 1)");
    }
    require_open_unit(mu, "mu");
    if (n < 0) throw std::domain_error("n must be nonnegative");
    const double d = 1.0 - (1.0 - d0) * std::pow(mu, -static_cast<double>(n));
    return std::max(0.0, d);
}

double tournament_d_closed_form(double d0, int n) {
    if (!(d0 >= 0.0 && d0 < 1.0)) {
        throw std::domain_error("d0 must be in [0, 1)");
    }
    if (n < 0) throw std::domain_error("n must be nonnegative");
    const double d = 1.0 - (1.0 - d0) * std::exp2(static_cast<double>(n));
    return std::max(0.0, d);
}

ExactTau truncation_exact_tau(double d0, double mu) {
    require_open_unit(d0, "d0");
    require_open_unit(mu, "mu");
    return exact_tau_from_ratio(std::log1p(-d0) / std::log(mu));
}

ExactTau tournament_exact_tau(double d0) {
    require_open_unit(d0, "d0");
    return exact_tau_from_ratio(std::log1p(-d0) / std::log(0.5));
}

DriftBoundTerms truncation_drift_terms(double d0, double mu) {
    require_open_unit(d0, "d0");
    require_open_unit(mu, "mu");
    return DriftBoundTerms{d0, mu / ((1.0 - mu) * (1.0 - d0))};
}

DriftBoundTerms tournament_drift_terms(double d0) {
    require_open_unit(d0, "d0");
    return DriftBoundTerms{d0, 1.0 / (1.0 - d0)};
}

BoundReport make_bound_report(double d0,
                              const SelectionSchema& schema,
                              std::optional<int> engine_tau) {
    BoundReport report;
    report.d0 = d0;
    report.engine_tau = engine_tau;
    if (schema.kind == SelectionKind::Truncation) report.mu = schema.mu;

    if (d0 == 0.0) {
        report.exact_tau_real = 0.0;
        report.exact_tau_iterations = 0;
        report.paper_convention_iterations = 1.0;
        report.note = "initial distribution is already optimal";
        return report;
    }

    switch (schema.kind) {
        case SelectionKind::Truncation: {
            const ExactTau tau = truncation_exact_tau(d0, schema.mu);
            report.upper_bound = truncation_iteration_bound(d0, schema.mu);
            report.exact_tau_real = tau.real_value;
            report.exact_tau_iterations = tau.iterations;
            report.paper_convention_iterations = tau.paper_convention;
            break;
        }
        case SelectionKind::TournamentPaper: {
            const ExactTau tau = tournament_exact_tau(d0);
            report.upper_bound = tournament_iteration_bound(d0);
            report.exact_tau_real = tau.real_value;
            report.exact_tau_iterations = tau.iterations;
            report.paper_convention_iterations = tau.paper_convention;
            break;
        }
        case SelectionKind::TournamentFair: {
            report.note =
                "no closed form for fair ties; exact tau unbounded, "
                "overlay d(n) = d0^(2^n)";
            break;
        }
    }
    return report;
}

}  // namespace edalab
