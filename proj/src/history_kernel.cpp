#include "fracsync/history_kernel.hpp"

namespace fracsync {

void reference_dots(const double* hist, std::size_t n, const double* pred_w,
                    const double* corr_w, std::size_t pred_count,
                    std::size_t corr_count, double& pred_out, double& corr_out) {
    double p = 0.0, c = 0.0;
    for (std::size_t d = 0; d < pred_count; ++d) {
        const double v = hist[n - d];
        p += pred_w[d] * v;
        if (d < corr_count) c += corr_w[d] * v;
    }
    pred_out = p;
    corr_out = c;
}

namespace {

// One block of the four-lane partial sums: d in [lo, hi), corrector terms only
// below hc. Lane layout is fixed by position, so the result depends only on
// the inputs, never on scheduling.
inline void block_partials(const double* hist, std::size_t n, const double* pred_w,
                           const double* corr_w, std::size_t lo, std::size_t hi,
                           std::size_t hc, double& pred_part, double& corr_part) {
    double p0 = 0.0, p1 = 0.0, p2 = 0.0, p3 = 0.0;
    double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;
    std::size_t d = lo;
    const double* hp = hist + (n - lo);
    for (; d + 4 <= hc; d += 4, hp -= 4) {
        const double v0 = hp[0];
        const double v1 = hp[-1];
        const double v2 = hp[-2];
        const double v3 = hp[-3];
        p0 += pred_w[d] * v0;
        c0 += corr_w[d] * v0;
        p1 += pred_w[d + 1] * v1;
        c1 += corr_w[d + 1] * v1;
        p2 += pred_w[d + 2] * v2;
        c2 += corr_w[d + 2] * v2;
        p3 += pred_w[d + 3] * v3;
        c3 += corr_w[d + 3] * v3;
    }
    for (; d < hc; ++d, --hp) {
        const double v = hp[0];
        p0 += pred_w[d] * v;
        c0 += corr_w[d] * v;
    }
    for (; d < hi; ++d, --hp) {
        p0 += pred_w[d] * hp[0];
    }
    pred_part = (p0 + p1) + (p2 + p3);
    corr_part = (c0 + c1) + (c2 + c3);
}

}  // namespace

void blocked_dots(const double* hist, std::size_t n, const double* pred_w,
                  const double* corr_w, std::size_t pred_count,
                  std::size_t corr_count, bool parallel, double* scratch,
                  double& pred_out, double& corr_out) {
    const std::size_t nblocks = kernel_num_blocks(pred_count);
    if (nblocks == 0) {
        pred_out = 0.0;
        corr_out = 0.0;
        return;
    }

    if (parallel) {
#ifdef FRACSYNC_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long b = 0; b < static_cast<long>(nblocks); ++b) {
            const std::size_t lo = static_cast<std::size_t>(b) * kKernelBlock;
            const std::size_t hi = lo + kKernelBlock < pred_count ? lo + kKernelBlock
                                                                  : pred_count;
            const std::size_t hc = hi < corr_count ? hi : corr_count;
            block_partials(hist, n, pred_w, corr_w, lo, hi, hc < lo ? lo : hc,
                           scratch[2 * b], scratch[2 * b + 1]);
        }
    } else {
        for (std::size_t b = 0; b < nblocks; ++b) {
            const std::size_t lo = b * kKernelBlock;
            const std::size_t hi = lo + kKernelBlock < pred_count ? lo + kKernelBlock
                                                                  : pred_count;
            const std::size_t hc = hi < corr_count ? hi : corr_count;
            block_partials(hist, n, pred_w, corr_w, lo, hi, hc < lo ? lo : hc,
                           scratch[2 * b], scratch[2 * b + 1]);
        }
    }

    double p = 0.0, c = 0.0;
    for (std::size_t b = 0; b < nblocks; ++b) {
        p += scratch[2 * b];
        c += scratch[2 * b + 1];
    }
    pred_out = p;
    corr_out = c;
}

}  // namespace fracsync
