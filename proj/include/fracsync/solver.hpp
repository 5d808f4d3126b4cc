#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracsync/trajectory.hpp"

namespace fracsync {

// Vector field callback: writes dx (same dimension as x).
using Field = std::function<void(double t, std::span<const double> x,
                                 std::span<double> dx)>;

enum class ExecPolicy {
    Auto,       // Parallel when OpenMP has threads to offer, else Serial
    Serial,     // blocked kernel, single thread
    Parallel,   // blocked kernel, OpenMP threads
    Reference,  // natural-order serial kernel (testing)
};

struct SolverConfig {
    double step_h = 0.005;
    std::size_t n_steps = 0;
    int corrector_sweeps = 1;
    double divergence_threshold = 1e12;
    std::size_t memory_window = 0;  // 0 = full history
    ExecPolicy exec = ExecPolicy::Auto;
};

// Adams-Bashforth-Moulton predictor-corrector for incommensurate-order Caputo
// systems D^{alpha_i} x_i = f_i(t, x), alpha_i in (0, 1].
Trajectory abm_solve(const Field& field, const std::vector<double>& orders,
                     const std::vector<double>& x0, const SolverConfig& config);

}  // namespace fracsync
