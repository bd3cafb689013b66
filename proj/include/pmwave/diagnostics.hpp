#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "pmwave/grid.hpp"
#include "pmwave/solver.hpp"

// Long-time behaviour in the slowly drifting frame x + X*(t).
//
// The marker p~(t) = p(t, x_max, y0) evolves like c dX*/dt because the slope
// at the right boundary is pinned to c. Once the drift is known, the
// corrected residual |dp/dt - dp/dx dX*/dt|_inf measures convergence to the
// wave profile even though |dp/dt| itself plateaus.

namespace pmwave {

// (P_next - P_prev) / dt, nodewise. Throws on grid mismatch or dt <= 0.
GridField residual_field(const PressureField& prev, const PressureField& next, double dt);

struct Norms {
    double l2 = 0.0;
    double linf = 0.0;
};

// L2 with the trapezoidal rule in x (half weight on the boundary columns)
// and uniform weight dy over the periodic rows, so a constant field on
// [0, L] x T^1 has l2 = sqrt(L) |value|.
Norms norms(const GridField& r);

// Least-squares slope of p~ against t over the trailing `window` samples,
// divided by c. Throws std::invalid_argument with fewer than `window`
// samples or window < 2.
double drift_rate(std::span<const double> t, std::span<const double> p_tilde, double c,
                  std::size_t window);

// L_inf over interior columns of |(P_next - P_prev)/dt - Dx P_prev * drift|.
double corrected_residual(const PressureField& prev, const PressureField& next, double dt,
                          double drift);

struct ResidualReport {
    double t = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
    double drift_rate = 0.0;
    double e_corr = 0.0;
};

enum class Verdict { converged, drifting_converged, not_converged };

std::string_view verdict_name(Verdict v);

struct MonitorSettings {
    std::size_t decay_window = 20;  // reports
    double factor = 10.0;           // required e_corr decrease across the window
    double plateau_tol = 0.2;       // relative change of linf counted as flat
    double abs_tol = 1e-8;          // linf below this is plain convergence
};

// Needs at least 2 * decay_window reports (std::invalid_argument otherwise).
// converged: latest linf < abs_tol.
// drifting-converged: e_corr fell by >= factor over the last decay_window
//   reports while linf changed by less than plateau_tol relatively.
Verdict convergence_monitor(std::span<const ResidualReport> reports, const MonitorSettings& s);

// Tracks the marker p(t, x_max, y0) every `stride` steps.
class DriftTracker {
public:
    DriftTracker(int marker_row, int stride, std::size_t window);

    void observe(const PressureField& next, const StepRecord& rec);

    std::size_t samples() const { return t_.size(); }
    std::span<const double> times() const { return t_; }
    std::span<const double> marker() const { return p_; }

    // Drift over the trailing window; uses every available sample while
    // fewer than `window` exist. Returns 0 with fewer than two samples.
    double rate(double c) const;

private:
    int row_;
    int stride_;
    std::size_t window_;
    std::vector<double> t_;
    std::vector<double> p_;
};

// Samples ResidualReports every `interval` time units during a run.
class ResidualSampler {
public:
    ResidualSampler(double interval, double c, DriftTracker& drift);

    void observe(const PressureField& prev, const PressureField& next, const StepRecord& rec);

    const std::vector<ResidualReport>& reports() const { return reports_; }

private:
    double interval_;
    double c_;
    double next_time_;
    DriftTracker& drift_;
    std::vector<ResidualReport> reports_;
};

}  // namespace pmwave
