#include "fracsync/gamma.hpp"

#include <cmath>

#include "fracsync/errors.hpp"

namespace fracsync {

namespace {

// Lanczos approximation, g = 607/128, 15 coefficients (Godfrey's set).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

double lanczos_gamma(double x) {
    // valid for x >= 0.5
    double a = kLanczos[0];
    for (int i = 1; i < 15; ++i) a += kLanczos[i] / (x - 1.0 + i);
    const double t = x + kLanczosG - 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, x - 0.5) * std::exp(-t) * a;
}

}  // namespace

double gamma_fn(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw DomainError("gamma_fn requires a finite positive argument");
    if (x < 0.5) return lanczos_gamma(x + 1.0) / x;
    return lanczos_gamma(x);
}

}  // namespace fracsync
