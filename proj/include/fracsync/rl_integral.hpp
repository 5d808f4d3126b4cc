#pragma once

#include <vector>

namespace fracsync {

// Riemann-Liouville fractional integral I^beta of a uniformly sampled series,
// product-rectangle (left endpoint) quadrature. Test oracle for the solver
// weights; not used on the main solve path.
std::vector<double> rl_integral(double beta, const std::vector<double>& samples,
                                double step_h);

}  // namespace fracsync
