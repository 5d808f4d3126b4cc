#pragma once

#include <cstddef>

namespace fracsync {

// Fixed block length for the deterministic partial-sum kernel. Results are
// identical for any thread count because block boundaries and the final
// accumulation order never depend on scheduling.
inline constexpr std::size_t kKernelBlock = 2048;

// Both kernels compute the reversed history dot products used by one ABM step,
// where hist[r] is the stored derivative sample at grid row r:
//   pred = sum_{d < pred_count} pred_w[d] * hist[n - d]
//   corr = sum_{d < corr_count} corr_w[d] * hist[n - d]
// with corr_count <= pred_count <= n + 1.

// Plain natural-order loop; reference implementation kept for testing.
void reference_dots(const double* hist, std::size_t n, const double* pred_w,
                    const double* corr_w, std::size_t pred_count,
                    std::size_t corr_count, double& pred_out, double& corr_out);

// Blocked four-lane kernel. scratch must hold 2 * kernel_num_blocks(pred_count)
// doubles. When parallel is true the blocks are distributed over OpenMP
// threads; the summation order is the same either way.
void blocked_dots(const double* hist, std::size_t n, const double* pred_w,
                  const double* corr_w, std::size_t pred_count,
                  std::size_t corr_count, bool parallel, double* scratch,
                  double& pred_out, double& corr_out);

inline std::size_t kernel_num_blocks(std::size_t count) {
    return (count + kKernelBlock - 1) / kKernelBlock;
}

}  // namespace fracsync
