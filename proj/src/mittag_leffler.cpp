#include "fracsync/mittag_leffler.hpp"

#include <cmath>

#include "fracsync/errors.hpp"

namespace fracsync {

double mittag_leffler(double alpha, double z) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("mittag_leffler requires alpha in (0, 1]");
    if (!std::isfinite(z)) throw DomainError("mittag_leffler requires finite z");
    if (z == 0.0) return 1.0;

    const double ln_abs_z = std::log(std::fabs(z));
    const bool negative = z < 0.0;
    double sum = 1.0;  // k = 0 term
    for (int k = 1; k <= 10000; ++k) {
        double term = std::exp(k * ln_abs_z - std::lgamma(alpha * k + 1.0));
        if (negative && (k & 1)) term = -term;
        sum += term;
        if (std::fabs(term) <= 1e-16 * std::fabs(sum) || term == 0.0) return sum;
    }
    throw ConvergenceError("mittag_leffler series did not converge within 10000 terms");
}

}  // namespace fracsync
