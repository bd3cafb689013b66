#include "pmwave/kernels.hpp"

namespace pmwave::kernels {

StepCoefficients make_coefficients(double m, double dt, double dx, double dy) {
    return StepCoefficients{m, dt, dx, dx * dx, dy * dy, 2.0 * dx, 2.0 * dy};
}

namespace scalar {

void update_row(const double* south, const double* centre, const double* north, double* out,
                std::size_t n_x, double advection, const StepCoefficients& k) {
    for (std::size_t i = 1; i + 1 < n_x; ++i) {
        const double p = centre[i];
        const double e = centre[i + 1];
        const double w = centre[i - 1];
        const double n = north[i];
        const double s = south[i];
        const double dxx = (e + w - 2.0 * p) / k.dx2;
        const double dyy = (n + s - 2.0 * p) / k.dy2;
        const double upwind = (p - w) / k.dx;
        const double gx = (e - w) / k.two_dx;
        const double gy = (n - s) / k.two_dy;
        const double rhs = k.m * p * (dxx + dyy) - advection * upwind + (gx * gx + gy * gy);
        out[i] = p + k.dt * rhs;
    }
}

}  // namespace scalar
}  // namespace pmwave::kernels
