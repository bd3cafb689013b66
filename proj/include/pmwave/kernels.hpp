#pragma once

#include <cstddef>
#include <string_view>

// Row kernels for the interior update of the explicit scheme
//
//   P' = P + dt [ m P (Dxx P + Dyy P) - (c + alpha(y_j)) Dx^- P + (Dx P)^2 + (Dy P)^2 ]
//
// evaluated wholly from the old field. Each variant performs exactly the same
// sequence of IEEE operations, so their outputs are bitwise identical.

namespace pmwave::kernels {

struct StepCoefficients {
    double m;       // diffusion exponent
    double dt;      // time step
    double dx;      // for the upwind difference
    double dx2;     // dx * dx
    double dy2;     // dy * dy
    double two_dx;  // 2 dx
    double two_dy;  // 2 dy
};

StepCoefficients make_coefficients(double m, double dt, double dx, double dy);

// Updates out[k] for k in [1, n_x - 2] from the rows south (j-1), centre (j)
// and north (j+1). advection is c + alpha(y_j). out[0] and out[n_x-1] are
// not touched.
using RowUpdateFn = void (*)(const double* south, const double* centre, const double* north,
                             double* out, std::size_t n_x, double advection,
                             const StepCoefficients& k);

namespace scalar {
void update_row(const double* south, const double* centre, const double* north, double* out,
                std::size_t n_x, double advection, const StepCoefficients& k);
}

#if defined(PMWAVE_HAVE_AVX2)
namespace avx2 {
void update_row(const double* south, const double* centre, const double* north, double* out,
                std::size_t n_x, double advection, const StepCoefficients& k);
}
#endif

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

// True when the variant is compiled in and the CPU supports it.
bool isa_available(Isa isa);

// Best available variant on this machine.
Isa detected_isa();

// Variant used by the solver. Defaults to detected_isa(); the environment
// variable PMWAVE_ISA=scalar forces the reference kernel.
Isa active_isa();
void set_active_isa(Isa isa);  // throws if unavailable

RowUpdateFn row_update(Isa isa);

}  // namespace pmwave::kernels
