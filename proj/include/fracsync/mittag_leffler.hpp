#pragma once

namespace fracsync {

// One-parameter Mittag-Leffler function E_alpha(z) = sum_k z^k / Gamma(alpha*k + 1),
// alpha in (0, 1]. Series is truncated once the running term drops below 1e-16
// relative to the partial sum; more than 10,000 terms raises ConvergenceError.
double mittag_leffler(double alpha, double z);

}  // namespace fracsync
