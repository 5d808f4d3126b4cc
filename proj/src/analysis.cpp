#include "fracsync/analysis.hpp"

#include <cmath>

#include "fracsync/errors.hpp"

namespace fracsync {

StabilityVerdict matignon_verdict(std::complex<double> lambda, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("matignon_verdict requires alpha in (0, 1]");
    if (lambda == std::complex<double>(0.0, 0.0)) return StabilityVerdict::Marginal;
    const double gap = std::fabs(std::arg(lambda)) - alpha * M_PI / 2.0;
    if (std::fabs(gap) <= 1e-12) return StabilityVerdict::Marginal;
    return gap > 0.0 ? StabilityVerdict::Stable : StabilityVerdict::Unstable;
}

StabilityReport stability_report(const std::vector<std::complex<double>>& lambdas,
                                 const std::vector<double>& alphas) {
    if (lambdas.size() != alphas.size() || lambdas.empty())
        throw DomainError("stability_report requires matching non-empty lists");
    StabilityReport report;
    bool any_unstable = false, any_marginal = false;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const StabilityVerdict v = matignon_verdict(lambdas[i], alphas[i]);
        report.components.push_back({lambdas[i], alphas[i], v});
        any_unstable |= v == StabilityVerdict::Unstable;
        any_marginal |= v == StabilityVerdict::Marginal;
    }
    report.overall = any_unstable ? StabilityVerdict::Unstable
                     : any_marginal ? StabilityVerdict::Marginal
                                    : StabilityVerdict::Stable;
    return report;
}

ConvergenceClassification classify_error(const Trajectory& traj, double tolerance,
                                         double tail_fraction,
                                         double divergence_threshold) {
    if (traj.rows() == 0) throw DomainError("classify_error requires a non-empty trajectory");
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
        throw DomainError("classify_error requires tail_fraction in (0, 1]");

    const std::size_t rows = traj.rows();
    std::size_t start = rows - std::size_t(std::ceil(double(rows) * tail_fraction));
    if (start >= rows) start = rows - 1;

    double sup = 0.0;
    for (std::size_t r = start; r < rows; ++r)
        for (std::size_t c = 0; c < traj.dim; ++c) {
            const double a = std::fabs(traj.state(r, c));
            if (a > sup) sup = a;
        }

    ConvergenceClassification out;
    out.tail_sup = sup;
    out.tolerance = tolerance;
    out.tail_fraction = tail_fraction;
    if (!traj.completed() || sup > divergence_threshold)
        out.verdict = ConvergenceVerdict::Diverged;
    else if (sup < tolerance)
        out.verdict = ConvergenceVerdict::ConvergedToZero;
    else
        out.verdict = ConvergenceVerdict::BoundedNonzero;
    return out;
}

StabilityReport proposition_audit(const CouplingScheme& scheme) {
    const ClosedLoopDiagonal closed = closed_loop_of(scheme);
    std::vector<std::complex<double>> lambdas(closed.lambda.begin(), closed.lambda.end());
    return stability_report(lambdas, closed.orders);
}

std::string verdict_name(StabilityVerdict verdict) {
    switch (verdict) {
        case StabilityVerdict::Stable: return "stable";
        case StabilityVerdict::Unstable: return "unstable";
        case StabilityVerdict::Marginal: return "marginal";
    }
    return "unknown";
}

std::string verdict_name(ConvergenceVerdict verdict) {
    switch (verdict) {
        case ConvergenceVerdict::ConvergedToZero: return "converged-to-zero";
        case ConvergenceVerdict::BoundedNonzero: return "bounded-nonzero";
        case ConvergenceVerdict::Diverged: return "diverged";
    }
    return "unknown";
}

}  // namespace fracsync
