#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmwave/flows.hpp"
#include "pmwave/grid.hpp"

// Free-boundary analysis of a (near-)stationary pressure field:
//  * interface detection from the spike of the second x-difference and the
//    one-sided slope on the hot side,
//  * descent along epsilon-levelsets {p = eps} checking that eps-scaled second
//    derivatives vanish (H1) and that the slope stays bounded below (H2),
//  * the forcing g(y) = (c + alpha(y)) / f(y) - 1 of |I'(y)|^2 = g(y), and
//  * corner classification at the maxima of the interface.

namespace pmwave {

struct InterfaceTrace {
    int offset = 5;                        // s, cells into the hot side
    std::vector<int> fb_index;             // I(j), j = 1..rows
    std::vector<double> fb_x;              // x_{I(j)}
    std::vector<double> slope_gamma_plus;  // forward difference s cells right of I(j)
    std::vector<std::string> warnings;

    double min_slope() const;
};

// I(j) = argmax over i in [2, n_x-1] of diff2_xx (ties to the smallest i),
// then the slope s cells into the hot side. Interfaces within s + 2 cells of
// either boundary produce a warning. Throws std::out_of_range when
// I(j) + s + 1 > n_x for some row.
InterfaceTrace detect_interface(const PressureField& p, int s = 5);

// (P(I+s+1, j) - P(I+s, j)) / dx per row.
std::vector<double> slope_at_interface(const PressureField& p, const std::vector<int>& fb_index,
                                       int s);

struct LevelsetRow {
    std::optional<int> index;  // I_eps(j); empty when no node reaches eps
    double x = 0.0;            // X_eps(y_j)
};

// I_eps(j) = min { i : P(i, j) >= eps }. Throws for eps <= 0.
std::vector<LevelsetRow> levelset_trace(const PressureField& p, double eps);

struct LevelsetDerivatives {
    bool valid = false;  // false when missing or adjacent to a boundary column
    double px = 0.0;     // centered Dx
    double pxx = 0.0;    // Dxx
    double pxy = 0.0;    // cross stencil
};

std::vector<LevelsetDerivatives> levelset_derivatives(const PressureField& p,
                                                      const std::vector<LevelsetRow>& levelset);

// Geometric ladder from eps_max down to eps_min with `count` rungs.
std::vector<double> geometric_ladder(double eps_max, double eps_min, int count);

// Smallest levelset value that clears the numerical boundary layer.
double levelset_floor(double c, double dx);

struct LevelsetRung {
    double eps = 0.0;
    std::vector<LevelsetRow> rows;
    std::vector<LevelsetDerivatives> derivs;
    double sup_eps_pxx = 0.0;  // sup_y eps |pxx|
    double sup_eps_pxy = 0.0;  // sup_y eps |pxy|
    double min_px = 0.0;       // min_y px
    int missing = 0;           // rows without a valid levelset
};

struct H1H2Settings {
    double floor = 0.0;         // rungs below are discarded
    int h1_min_rungs = 8;       // strictly decreasing over at least this many leading rungs
    double h2_threshold = 0.0;  // min_y px must stay >= this on every rung
    double h1_zero_tol = 1e-10;  // sup-norms at or below count as already vanished
};

struct LevelsetReport {
    std::vector<LevelsetRung> rungs;  // decreasing eps, all >= floor
    std::vector<double> f;            // px at the smallest rung, per row
    std::vector<double> g;            // (c + alpha) / f - 1, per row (empty if f invalid)
    int h1_decreasing_rungs = 0;      // leading rungs with strictly decreasing H1 sup-norms
                                      // (pairs that both vanished also count)
    bool h1_pass = false;
    bool h2_pass = false;
};

LevelsetReport h1_h2_report(const PressureField& p, const std::vector<double>& eps_ladder,
                            const FlowProfile& flow, double c, const H1H2Settings& settings);

// g(y_j) = (c + alpha(y_j)) / f(y_j) - 1. Throws std::invalid_argument when
// any f <= 0.
std::vector<double> hj_forcing(const std::vector<double>& f, const GridSpec& grid,
                               const FlowProfile& flow, double c);

enum class CornerVerdict { corner, smooth, inconclusive };

std::string_view corner_verdict_name(CornerVerdict v);

struct CornerSettings {
    int window = 5;             // +/- rows around a maximum
    double kappa = 0.1;         // corner when min g over the window > kappa * max g
    double zero_fraction = 0.02;  // zero tolerance as a fraction of max g
};

struct InterfaceMaximum {
    double row = 0.0;  // 1-based row; plateau centre, may be half-integer
    double y = 0.0;
    double fb_x = 0.0;
    double min_g = 0.0;
    CornerVerdict verdict = CornerVerdict::inconclusive;
};

struct CornerReport {
    std::vector<double> zeros_of_g;  // y where g enters the zero band (one per run)
    std::vector<InterfaceMaximum> maxima;
    double max_g = 0.0;
    double zero_tol = 0.0;

    int corner_count() const;
};

// Local maxima of the periodic sequence fb_x (plateaus of equal values are
// merged and a constant sequence has none), each labelled from g over a
// +/- window neighbourhood.
CornerReport classify_corners(const std::vector<double>& fb_x, const std::vector<double>& g,
                              const GridSpec& grid, const CornerSettings& settings = {});

// Periodic local extrema helpers shared with the acceptance checks.
// Return plateau-centre rows (1-based, possibly half-integer).
std::vector<double> periodic_maxima(const std::vector<double>& v);
std::vector<double> periodic_minima(const std::vector<double>& v);

}  // namespace pmwave
