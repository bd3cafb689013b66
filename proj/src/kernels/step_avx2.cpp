// Compiled with -mavx2 only; dispatch guarantees the CPU supports it.
#include "pmwave/kernels.hpp"

#include <immintrin.h>

namespace pmwave::kernels::avx2 {

void update_row(const double* south, const double* centre, const double* north, double* out,
                std::size_t n_x, double advection, const StepCoefficients& k) {
    if (n_x < 3) {
        return;
    }
    const std::size_t last = n_x - 1;  // exclusive end of the interior

    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d vdx2 = _mm256_set1_pd(k.dx2);
    const __m256d vdy2 = _mm256_set1_pd(k.dy2);
    const __m256d vdx = _mm256_set1_pd(k.dx);
    const __m256d vtwo_dx = _mm256_set1_pd(k.two_dx);
    const __m256d vtwo_dy = _mm256_set1_pd(k.two_dy);
    const __m256d vm = _mm256_set1_pd(k.m);
    const __m256d vdt = _mm256_set1_pd(k.dt);
    const __m256d vadv = _mm256_set1_pd(advection);

    std::size_t i = 1;
    for (; i + 4 <= last; i += 4) {
        const __m256d p = _mm256_loadu_pd(centre + i);
        const __m256d e = _mm256_loadu_pd(centre + i + 1);
        const __m256d w = _mm256_loadu_pd(centre + i - 1);
        const __m256d n = _mm256_loadu_pd(north + i);
        const __m256d s = _mm256_loadu_pd(south + i);

        const __m256d two_p = _mm256_mul_pd(two, p);
        const __m256d dxx = _mm256_div_pd(_mm256_sub_pd(_mm256_add_pd(e, w), two_p), vdx2);
        const __m256d dyy = _mm256_div_pd(_mm256_sub_pd(_mm256_add_pd(n, s), two_p), vdy2);
        const __m256d upwind = _mm256_div_pd(_mm256_sub_pd(p, w), vdx);
        const __m256d gx = _mm256_div_pd(_mm256_sub_pd(e, w), vtwo_dx);
        const __m256d gy = _mm256_div_pd(_mm256_sub_pd(n, s), vtwo_dy);

        const __m256d diffusion = _mm256_mul_pd(_mm256_mul_pd(vm, p), _mm256_add_pd(dxx, dyy));
        const __m256d grad2 = _mm256_add_pd(_mm256_mul_pd(gx, gx), _mm256_mul_pd(gy, gy));
        const __m256d rhs =
            _mm256_add_pd(_mm256_sub_pd(diffusion, _mm256_mul_pd(vadv, upwind)), grad2);
        _mm256_storeu_pd(out + i, _mm256_add_pd(p, _mm256_mul_pd(vdt, rhs)));
    }

    // Tail: identical scalar arithmetic.
    for (; i < last; ++i) {
        const double p = centre[i];
        const double e = centre[i + 1];
        const double w = centre[i - 1];
        const double nn = north[i];
        const double ss = south[i];
        const double dxx = (e + w - 2.0 * p) / k.dx2;
        const double dyy = (nn + ss - 2.0 * p) / k.dy2;
        const double upwind = (p - w) / k.dx;
        const double gx = (e - w) / k.two_dx;
        const double gy = (nn - ss) / k.two_dy;
        const double rhs = k.m * p * (dxx + dyy) - advection * upwind + (gx * gx + gy * gy);
        out[i] = p + k.dt * rhs;
    }
}

}  // namespace pmwave::kernels::avx2
