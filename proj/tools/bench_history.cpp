// Benchmark for the history-convolution kernel behind abm_solve: natural-order
// reference vs blocked serial vs blocked OpenMP execution on one long
// three-component solve.  Also verifies that serial and parallel runs are
// bitwise identical and that both stay within tolerance of the reference.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracsync/solver.hpp"
#include "fracsync/trajectory.hpp"

#if FRACSYNC_HAVE_OPENMP
#include <omp.h>
#endif

namespace {

using namespace fracsync;

Trajectory run_policy(ExecPolicy exec, std::size_t steps, std::size_t window,
                      double& seconds) {
    const Field field = [](double, std::span<const double> x, std::span<double> dx) {
        dx[0] = -1.0 * x[0];
        dx[1] = -0.8 * x[1];
        dx[2] = -0.5 * x[2];
    };
    SolverConfig cfg;
    cfg.step_h = 0.001;
    cfg.n_steps = steps;
    cfg.memory_window = window;
    cfg.exec = exec;
    const auto start = std::chrono::steady_clock::now();
    Trajectory traj = abm_solve(field, {0.9, 0.5, 0.6}, {1.0, 1.0, 1.0}, cfg);
    const auto stop = std::chrono::steady_clock::now();
    seconds = std::chrono::duration<double>(stop - start).count();
    return traj;
}

double max_abs_diff(const Trajectory& a, const Trajectory& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.states.size(); ++i)
        worst = std::max(worst, std::fabs(a.states[i] - b.states[i]));
    return worst;
}

bool bitwise_equal(const Trajectory& a, const Trajectory& b) {
    if (a.states.size() != b.states.size()) return false;
    for (std::size_t i = 0; i < a.states.size(); ++i)
        if (a.states[i] != b.states[i]) return false;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t steps = 20000;
    std::size_t window = 0;
    CLI::App app{"History-kernel benchmark: reference vs blocked serial vs OpenMP"};
    app.add_option("--steps", steps, "Number of solver steps (default 20000)");
    app.add_option("--window", window, "Memory window, 0 = full history (default 0)");
    CLI11_PARSE(app, argc, argv);

    int threads = 1;
#if FRACSYNC_HAVE_OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("steps=%zu window=%zu omp_max_threads=%d\n", steps, window, threads);

    double t_ref = 0.0, t_ser = 0.0, t_par = 0.0;
    const Trajectory ref = run_policy(ExecPolicy::Reference, steps, window, t_ref);
    const Trajectory ser = run_policy(ExecPolicy::Serial, steps, window, t_ser);
    const Trajectory par = run_policy(ExecPolicy::Parallel, steps, window, t_par);

    std::printf("reference  %8.3f s  final=(%.17g, %.17g, %.17g)\n", t_ref,
                ref.states[ref.states.size() - 3], ref.states[ref.states.size() - 2],
                ref.states[ref.states.size() - 1]);
    std::printf("serial     %8.3f s  max|delta| vs reference = %.3e\n", t_ser,
                max_abs_diff(ser, ref));
    std::printf("parallel   %8.3f s  max|delta| vs reference = %.3e\n", t_par,
                max_abs_diff(par, ref));

    if (!bitwise_equal(ser, par)) {
        std::printf("FAIL: serial and parallel runs are not bitwise identical\n");
        return 1;
    }
    std::printf("serial and parallel runs are bitwise identical\n");
    return 0;
}
