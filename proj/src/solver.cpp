#include "fracsync/solver.hpp"

#include <cmath>
#include <cstddef>

#ifdef FRACSYNC_HAVE_OPENMP
#include <omp.h>
#endif

#include "fracsync/errors.hpp"
#include "fracsync/gamma.hpp"
#include "fracsync/history_kernel.hpp"

namespace fracsync {

namespace {

// Per-order weight tables. pred_w[d] and corr_w[d] are indexed by the distance
// d = n - j between the step being built and the history sample.
struct AlphaCache {
    double alpha = 0.0;
    double scale_pred = 0.0;  // h^a / Gamma(a+1)
    double scale_corr = 0.0;  // h^a / Gamma(a+2)
    std::vector<double> pow_a;    // d^a
    std::vector<double> pow_a1;   // d^(a+1)
    std::vector<double> pred_w;   // pow_a[d+1] - pow_a[d]
    std::vector<double> corr_w;   // pow_a1[d+2] + pow_a1[d] - 2*pow_a1[d+1]

    void build(double a, double h, std::size_t n_steps) {
        alpha = a;
        const double ha = std::pow(h, a);
        scale_pred = ha / gamma_fn(a + 1.0);
        scale_corr = ha / gamma_fn(a + 2.0);
        const std::size_t top = n_steps + 2;
        pow_a.resize(top);
        pow_a1.resize(top);
        for (std::size_t d = 0; d < top; ++d) {
            pow_a[d] = std::pow(double(d), a);
            pow_a1[d] = std::pow(double(d), a + 1.0);
        }
        pred_w.resize(top - 1);
        for (std::size_t d = 0; d + 1 < top; ++d) pred_w[d] = pow_a[d + 1] - pow_a[d];
        corr_w.resize(top - 2);
        for (std::size_t d = 0; d + 2 < top; ++d)
            corr_w[d] = pow_a1[d + 2] + pow_a1[d] - 2.0 * pow_a1[d + 1];
    }

    double a0_weight(std::size_t n) const {
        return pow_a1[n] - (double(n) - alpha) * pow_a[n + 1];
    }
};

bool any_nan(std::span<const double> v) {
    for (double x : v)
        if (std::isnan(x)) return true;
    return false;
}

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) {
        const double a = std::fabs(x);
        if (a > m) m = a;
    }
    return m;
}

}  // namespace

Trajectory abm_solve(const Field& field, const std::vector<double>& orders,
                     const std::vector<double>& x0, const SolverConfig& config) {
    const std::size_t dim = x0.size();
    if (dim == 0) throw DomainError("abm_solve requires a non-empty state");
    if (orders.size() != dim)
        throw DomainError("abm_solve: orders and state dimensions differ");
    for (double a : orders)
        if (!(a > 0.0 && a <= 1.0))
            throw DomainError("abm_solve requires every order in (0, 1]");
    for (double v : x0)
        if (!std::isfinite(v)) throw DomainError("abm_solve requires finite x0");
    if (!(config.step_h > 0.0)) throw ConfigError("SolverConfig: step_h must be > 0");
    if (config.n_steps == 0) throw ConfigError("SolverConfig: n_steps must be >= 1");
    if (config.corrector_sweeps < 1)
        throw ConfigError("SolverConfig: corrector_sweeps must be >= 1");
    if (!(config.divergence_threshold > 0.0))
        throw ConfigError("SolverConfig: divergence_threshold must be > 0");

    const double h = config.step_h;
    const std::size_t n_steps = config.n_steps;
    const std::size_t window = config.memory_window;  // 0 = full

    bool parallel = false;
    bool reference = false;
    switch (config.exec) {
        case ExecPolicy::Serial: break;
        case ExecPolicy::Reference: reference = true; break;
        case ExecPolicy::Parallel: parallel = true; break;
        case ExecPolicy::Auto:
#ifdef FRACSYNC_HAVE_OPENMP
            parallel = omp_get_max_threads() > 1;
#endif
            break;
    }

    // One weight table per distinct order.
    std::vector<AlphaCache> caches;
    std::vector<std::size_t> cache_of(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t idx = caches.size();
        for (std::size_t c = 0; c < caches.size(); ++c)
            if (caches[c].alpha == orders[i]) {
                idx = c;
                break;
            }
        if (idx == caches.size()) {
            caches.emplace_back();
            caches.back().build(orders[i], h, n_steps);
        }
        cache_of[i] = idx;
    }

    Trajectory traj;
    traj.step_h = h;
    traj.dim = dim;
    traj.times.reserve(n_steps + 1);
    traj.states.reserve((n_steps + 1) * dim);
    traj.times.push_back(0.0);
    traj.states.insert(traj.states.end(), x0.begin(), x0.end());

    // Per-component derivative history, contiguous for the kernel.
    std::vector<std::vector<double>> fhist(dim);
    for (auto& fh : fhist) fh.reserve(n_steps + 1);

    std::vector<double> deriv(dim), xp(dim), base(dim), cur(dim);
    std::vector<double> scratch(2 * kernel_num_blocks(n_steps + 1));

    field(0.0, std::span<const double>(x0), std::span<double>(deriv));
    if (any_nan(deriv)) throw NumericError("field produced NaN", 0);
    bool pending_inf = !all_finite(deriv);
    for (std::size_t i = 0; i < dim; ++i) fhist[i].push_back(deriv[i]);

    for (std::size_t n = 0; n < n_steps; ++n) {
        const std::size_t step = n + 1;
        if (pending_inf) {
            traj.status = Trajectory::Status::Diverged;
            traj.diverged_at = step;
            return traj;
        }
        const double t_next = double(step) * h;

        const std::size_t pred_count = window == 0 ? n + 1 : std::min(n + 1, window);
        const std::size_t corr_count = window == 0 ? n : std::min(n, window);
        const bool keep_a0 = window == 0 || n < window;

        for (std::size_t i = 0; i < dim; ++i) {
            const AlphaCache& c = caches[cache_of[i]];
            double pred_s = 0.0, corr_s = 0.0;
            if (reference)
                reference_dots(fhist[i].data(), n, c.pred_w.data(), c.corr_w.data(),
                               pred_count, corr_count, pred_s, corr_s);
            else
                blocked_dots(fhist[i].data(), n, c.pred_w.data(), c.corr_w.data(),
                             pred_count, corr_count, parallel, scratch.data(),
                             pred_s, corr_s);
            xp[i] = x0[i] + c.scale_pred * pred_s;
            const double head = keep_a0 ? c.a0_weight(n) * fhist[i][0] : 0.0;
            base[i] = x0[i] + c.scale_corr * (head + corr_s);
        }

        if (!all_finite(xp)) {
            traj.status = Trajectory::Status::Diverged;
            traj.diverged_at = step;
            return traj;
        }

        cur = xp;
        for (int s = 0; s < config.corrector_sweeps; ++s) {
            field(t_next, std::span<const double>(cur), std::span<double>(deriv));
            if (any_nan(deriv)) throw NumericError("field produced NaN", step);
            if (!all_finite(deriv)) {
                traj.status = Trajectory::Status::Diverged;
                traj.diverged_at = step;
                return traj;
            }
            for (std::size_t i = 0; i < dim; ++i)
                cur[i] = base[i] + caches[cache_of[i]].scale_corr * deriv[i];
        }

        if (!all_finite(cur)) {
            traj.status = Trajectory::Status::Diverged;
            traj.diverged_at = step;
            return traj;
        }

        field(t_next, std::span<const double>(cur), std::span<double>(deriv));
        if (any_nan(deriv)) throw NumericError("field produced NaN", step);
        pending_inf = !all_finite(deriv);

        traj.times.push_back(t_next);
        traj.states.insert(traj.states.end(), cur.begin(), cur.end());
        for (std::size_t i = 0; i < dim; ++i) fhist[i].push_back(deriv[i]);

        if (max_abs(std::span<const double>(cur)) > config.divergence_threshold) {
            traj.status = Trajectory::Status::Diverged;
            traj.diverged_at = step;
            return traj;
        }
    }

    return traj;
}

}  // namespace fracsync
