#pragma once

#include <complex>
#include <string>
#include <vector>

#include "fracsync/coupling.hpp"
#include "fracsync/trajectory.hpp"

namespace fracsync {

enum class StabilityVerdict { Stable, Unstable, Marginal };

struct StabilityReport {
    struct Component {
        std::complex<double> lambda;
        double alpha = 0.0;
        StabilityVerdict verdict = StabilityVerdict::Marginal;
    };
    std::vector<Component> components;
    StabilityVerdict overall = StabilityVerdict::Marginal;
};

// Matignon condition for D^alpha e = lambda e: stable iff |arg(lambda)| > alpha*pi/2.
// lambda = 0 and boundary cases within 1e-12 report marginal.
StabilityVerdict matignon_verdict(std::complex<double> lambda, double alpha);

StabilityReport stability_report(const std::vector<std::complex<double>>& lambdas,
                                 const std::vector<double>& alphas);

enum class ConvergenceVerdict { ConvergedToZero, BoundedNonzero, Diverged };

struct ConvergenceClassification {
    ConvergenceVerdict verdict = ConvergenceVerdict::BoundedNonzero;
    double tail_sup = 0.0;
    double tolerance = 0.0;
    double tail_fraction = 0.0;
};

// Sup of the max-norm over the trailing tail_fraction of the grid rows.
ConvergenceClassification classify_error(const Trajectory& traj, double tolerance,
                                         double tail_fraction = 0.25,
                                         double divergence_threshold = 1e12);

// Matignon verdicts for the scheme's claimed closed loop. Depends only on the
// scheme, never on initial conditions.
StabilityReport proposition_audit(const CouplingScheme& scheme);

std::string verdict_name(StabilityVerdict verdict);
std::string verdict_name(ConvergenceVerdict verdict);

}  // namespace fracsync
