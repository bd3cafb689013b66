#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmwave/flows.hpp"
#include "pmwave/grid.hpp"

namespace pmwave {

struct SolverConfig {
    double m = 1.1;
    double c = 0.4;
    double tau = 0.0;  // initial interface position; <= 0 means x_max / 2
    double t_max = 0.0;
    double cfl_safety = 1.0;
    std::vector<double> snapshot_times;
};

// Raised when the explicit update produces NaN/Inf.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws std::invalid_argument on c <= c_star, tau outside (0, x_max),
// m <= 0, cfl_safety outside (0, 1], negative t_max or unsorted snapshot
// times.
void validate(const SolverConfig& cfg, const GridSpec& grid, const FlowProfile& flow);

double effective_tau(const SolverConfig& cfg, const GridSpec& grid);

struct StepRecord {
    long n = 0;
    double t = 0.0;
    double dt = 0.0;
    double max_p = 0.0;
    long clamp_count = 0;
};

// P^0_{i,j} = c [x_i - tau]^+
PressureField initial_datum(const GridSpec& grid, const SolverConfig& cfg);

// 1 / [ 2 (1/dx^2 + 1/dy^2) m max P + (c + |alpha|_inf) / dx ]
double cfl_bound(const PressureField& p, double m, double c, double alpha_sup);

// cfl_safety times cfl_bound.
double cfl_dt(const PressureField& p, const SolverConfig& cfg, const FlowProfile& flow);

// Per-row advection speeds c + alpha(y_j), j = 1..n_y-1.
std::vector<double> advection_speeds(const GridSpec& grid, const FlowProfile& flow, double c);

// One explicit step: interior update, Dirichlet column i = 1, Neumann column
// i = n_x, then clamp of negative values. `next` must be on the same grid as
// `p` and must not alias it. Throws std::invalid_argument when dt exceeds the
// CFL bound and NumericalError on non-finite output. n and t of the returned
// record are left at zero.
StepRecord step_into(const PressureField& p, PressureField& next, const SolverConfig& cfg,
                     const FlowProfile& flow, double dt);

struct StepResult {
    PressureField field;
    StepRecord record;
};

StepResult step(const PressureField& p, const SolverConfig& cfg, const FlowProfile& flow,
                double dt);

// Coefficients of the update with the gradient-squared term dropped, written
// as a linear combination of the old values around (i, j).
struct LinearWeights {
    double centre;
    double east;
    double west;
    double north;
    double south;
};

LinearWeights linear_weights(const PressureField& p, int i, int j, double m, double advection,
                             double dt);

using StepObserver =
    std::function<void(const PressureField& prev, const PressureField& next, const StepRecord&)>;

struct RunOptions {
    bool keep_log = true;
};

struct RunResult {
    PressureField field;
    std::vector<StepRecord> log;
    long steps = 0;
    double t = 0.0;
};

// Advances from the initial datum until the first t >= t_max. Observers are
// called after every step, in order, with the previous and new fields.
RunResult run(const GridSpec& grid, const SolverConfig& cfg, const FlowProfile& flow,
              const std::vector<StepObserver>& observers = {}, RunOptions options = {});

// Same, starting from a given field at time t0.
RunResult run_from(PressureField initial, double t0, const SolverConfig& cfg,
                   const FlowProfile& flow, const std::vector<StepObserver>& observers = {},
                   RunOptions options = {});

}  // namespace pmwave
