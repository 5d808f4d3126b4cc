#include "fracsync/rl_integral.hpp"

#include <cmath>

#include "fracsync/errors.hpp"
#include "fracsync/gamma.hpp"

namespace fracsync {

std::vector<double> rl_integral(double beta, const std::vector<double>& samples,
                                double step_h) {
    if (samples.empty()) throw DomainError("rl_integral requires a non-empty series");
    if (!(beta > 0.0)) throw DomainError("rl_integral requires beta > 0");
    if (!(step_h > 0.0)) throw DomainError("rl_integral requires step_h > 0");

    const std::size_t n = samples.size();
    // W[d] = (d+1)^beta - d^beta, so that
    //   I^beta x(t_m) ~= h^beta / Gamma(beta+1) * sum_{j<m} W[m-1-j] x_j
    std::vector<double> w(n);
    double prev = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
        const double next = std::pow(double(d + 1), beta);
        w[d] = next - prev;
        prev = next;
    }

    const double scale = std::pow(step_h, beta) / gamma_fn(beta + 1.0);
    std::vector<double> out(n, 0.0);
    for (std::size_t m = 1; m < n; ++m) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) acc += w[m - 1 - j] * samples[j];
        out[m] = scale * acc;
    }
    return out;
}

}  // namespace fracsync
