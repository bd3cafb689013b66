#include "pmwave/free_boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pmwave {

double InterfaceTrace::min_slope() const {
    if (slope_gamma_plus.empty()) {
        return 0.0;
    }
    return *std::min_element(slope_gamma_plus.begin(), slope_gamma_plus.end());
}

InterfaceTrace detect_interface(const PressureField& p, int s) {
    const GridSpec& g = p.grid();
    if (s < 0) {
        throw std::invalid_argument("detect_interface: offset s must be nonnegative");
    }
    InterfaceTrace trace;
    trace.offset = s;
    const double dx2 = g.dx() * g.dx();
    for (int j = 1; j <= g.rows(); ++j) {
        const auto row = p.row(j);
        int best = 2;
        double best_val = -std::numeric_limits<double>::infinity();
        for (int i = 2; i <= g.n_x() - 1; ++i) {
            const auto k = static_cast<std::size_t>(i - 1);
            const double d2 = (row[k + 1] + row[k - 1] - 2.0 * row[k]) / dx2;
            if (d2 > best_val) {
                best_val = d2;
                best = i;
            }
        }
        trace.fb_index.push_back(best);
        trace.fb_x.push_back(g.x(best));
        if (best <= s + 2 + 1 || best >= g.n_x() - (s + 2)) {
            std::ostringstream os;
            os << "row " << j << ": interface at column " << best << " is within " << s + 2
               << " cells of the domain boundary";
            trace.warnings.push_back(os.str());
        }
    }
    trace.slope_gamma_plus = slope_at_interface(p, trace.fb_index, s);
    return trace;
}

std::vector<double> slope_at_interface(const PressureField& p, const std::vector<int>& fb_index,
                                       int s) {
    const GridSpec& g = p.grid();
    if (static_cast<int>(fb_index.size()) != g.rows()) {
        throw std::invalid_argument("slope_at_interface: one index per row expected");
    }
    std::vector<double> slope;
    slope.reserve(fb_index.size());
    for (int j = 1; j <= g.rows(); ++j) {
        const int i0 = fb_index[static_cast<std::size_t>(j - 1)];
        if (i0 < 1 || i0 + s + 1 > g.n_x()) {
            std::ostringstream os;
            os << "slope_at_interface: row " << j << " interface column " << i0 << " with offset "
               << s << " runs past column " << g.n_x();
            throw std::out_of_range(os.str());
        }
        slope.push_back((p(i0 + s + 1, j) - p(i0 + s, j)) / g.dx());
    }
    return slope;
}

std::vector<LevelsetRow> levelset_trace(const PressureField& p, double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("levelset_trace: eps must be positive");
    }
    const GridSpec& g = p.grid();
    std::vector<LevelsetRow> out(static_cast<std::size_t>(g.rows()));
    for (int j = 1; j <= g.rows(); ++j) {
        const auto row = p.row(j);
        const auto it = std::find_if(row.begin(), row.end(), [eps](double v) { return v >= eps; });
        if (it != row.end()) {
            const int i = static_cast<int>(it - row.begin()) + 1;
            out[static_cast<std::size_t>(j - 1)] = LevelsetRow{i, g.x(i)};
        }
    }
    return out;
}

std::vector<LevelsetDerivatives> levelset_derivatives(const PressureField& p,
                                                      const std::vector<LevelsetRow>& levelset) {
    const GridSpec& g = p.grid();
    if (static_cast<int>(levelset.size()) != g.rows()) {
        throw std::invalid_argument("levelset_derivatives: one entry per row expected");
    }
    std::vector<LevelsetDerivatives> out(levelset.size());
    for (int j = 1; j <= g.rows(); ++j) {
        const auto& ls = levelset[static_cast<std::size_t>(j - 1)];
        if (!ls.index || *ls.index < 2 || *ls.index > g.n_x() - 1) {
            continue;
        }
        const int i = *ls.index;
        auto& d = out[static_cast<std::size_t>(j - 1)];
        d.valid = true;
        d.px = diff_centered_x(p, i, j);
        d.pxx = diff2_xx(p, i, j);
        d.pxy = diff2_xy(p, i, j);
    }
    return out;
}

std::vector<double> geometric_ladder(double eps_max, double eps_min, int count) {
    if (!(eps_max > 0.0) || !(eps_min > 0.0) || eps_min > eps_max || count < 1) {
        throw std::invalid_argument("geometric_ladder: need eps_max >= eps_min > 0, count >= 1");
    }
    if (count == 1) {
        return {eps_max};
    }
    std::vector<double> ladder;
    const double ratio = std::pow(eps_min / eps_max, 1.0 / (count - 1));
    for (int k = 0; k < count; ++k) {
        ladder.push_back(k + 1 == count ? eps_min : eps_max * std::pow(ratio, k));
    }
    return ladder;
}

double levelset_floor(double c, double dx) {
    return 4.0 * c * dx;
}

LevelsetReport h1_h2_report(const PressureField& p, const std::vector<double>& eps_ladder,
                            const FlowProfile& flow, double c, const H1H2Settings& settings) {
    if (!std::is_sorted(eps_ladder.rbegin(), eps_ladder.rend())) {
        throw std::invalid_argument("h1_h2_report: ladder must be sorted decreasingly");
    }
    LevelsetReport rep;
    for (double eps : eps_ladder) {
        if (eps < settings.floor) {
            continue;
        }
        LevelsetRung rung;
        rung.eps = eps;
        rung.rows = levelset_trace(p, eps);
        rung.derivs = levelset_derivatives(p, rung.rows);
        rung.min_px = std::numeric_limits<double>::infinity();
        for (const auto& d : rung.derivs) {
            if (!d.valid) {
                ++rung.missing;
                continue;
            }
            rung.sup_eps_pxx = std::max(rung.sup_eps_pxx, eps * std::abs(d.pxx));
            rung.sup_eps_pxy = std::max(rung.sup_eps_pxy, eps * std::abs(d.pxy));
            rung.min_px = std::min(rung.min_px, d.px);
        }
        if (rung.missing == static_cast<int>(rung.derivs.size())) {
            rung.min_px = 0.0;
        }
        rep.rungs.push_back(std::move(rung));
    }
    if (rep.rungs.empty()) {
        return rep;
    }

    int dec = 1;
    for (std::size_t k = 0; k + 1 < rep.rungs.size(); ++k) {
        const auto& a = rep.rungs[k];
        const auto& b = rep.rungs[k + 1];
        const double z = settings.h1_zero_tol;
        const auto down = [z](double before, double after) {
            return after < before || (after <= z && before <= z);
        };
        if (down(a.sup_eps_pxx, b.sup_eps_pxx) && down(a.sup_eps_pxy, b.sup_eps_pxy)) {
            ++dec;
        } else {
            break;
        }
    }
    rep.h1_decreasing_rungs = dec;
    const int needed = std::min<int>(settings.h1_min_rungs, static_cast<int>(rep.rungs.size()));
    rep.h1_pass = rep.rungs.size() >= 2 && dec >= needed &&
                  std::all_of(rep.rungs.begin(), rep.rungs.end(),
                              [](const LevelsetRung& r) { return r.missing == 0; });

    rep.h2_pass = std::all_of(rep.rungs.begin(), rep.rungs.end(), [&](const LevelsetRung& r) {
        return r.missing == 0 && r.min_px >= settings.h2_threshold && r.min_px > 0.0;
    });

    const auto& smallest = rep.rungs.back();
    if (smallest.missing == 0) {
        rep.f.reserve(smallest.derivs.size());
        for (const auto& d : smallest.derivs) {
            rep.f.push_back(d.px);
        }
        if (std::all_of(rep.f.begin(), rep.f.end(), [](double v) { return v > 0.0; })) {
            rep.g = hj_forcing(rep.f, p.grid(), flow, c);
        }
    }
    return rep;
}

std::vector<double> hj_forcing(const std::vector<double>& f, const GridSpec& grid,
                               const FlowProfile& flow, double c) {
    if (static_cast<int>(f.size()) != grid.rows()) {
        throw std::invalid_argument("hj_forcing: one slope per row expected");
    }
    std::vector<double> g(f.size());
    for (int j = 1; j <= grid.rows(); ++j) {
        const double fj = f[static_cast<std::size_t>(j - 1)];
        if (!(fj > 0.0)) {
            std::ostringstream os;
            os << "hj_forcing: nonpositive slope " << fj << " at row " << j;
            throw std::invalid_argument(os.str());
        }
        g[static_cast<std::size_t>(j - 1)] = (c + eval_flow(flow, grid.y(j))) / fj - 1.0;
    }
    return g;
}

std::string_view corner_verdict_name(CornerVerdict v) {
    switch (v) {
    case CornerVerdict::corner:
        return "corner";
    case CornerVerdict::smooth:
        return "smooth";
    case CornerVerdict::inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

int CornerReport::corner_count() const {
    return static_cast<int>(std::count_if(maxima.begin(), maxima.end(), [](const auto& m) {
        return m.verdict == CornerVerdict::corner;
    }));
}

namespace {

struct Run {
    std::size_t start;
    std::size_t length;
    double value;
};

// Maximal runs of equal values of a periodic sequence, starting at a run
// boundary. Empty when the sequence is constant.
std::vector<Run> periodic_runs(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<Run> runs;
    if (n == 0) {
        return runs;
    }
    std::size_t start = n;
    for (std::size_t k = 0; k < n; ++k) {
        if (v[k] != v[(k + n - 1) % n]) {
            start = k;
            break;
        }
    }
    if (start == n) {
        return runs;
    }
    std::size_t k = 0;
    while (k < n) {
        const std::size_t s = (start + k) % n;
        std::size_t len = 1;
        while (k + len < n && v[(start + k + len) % n] == v[s]) {
            ++len;
        }
        runs.push_back(Run{s, len, v[s]});
        k += len;
    }
    return runs;
}

template <typename Cmp>
std::vector<double> periodic_extrema(const std::vector<double>& v, Cmp better) {
    const auto runs = periodic_runs(v);
    std::vector<double> out;
    const std::size_t r = runs.size();
    const double n = static_cast<double>(v.size());
    for (std::size_t k = 0; k < r; ++k) {
        const auto& prev = runs[(k + r - 1) % r];
        const auto& next = runs[(k + 1) % r];
        if (better(runs[k].value, prev.value) && better(runs[k].value, next.value)) {
            double centre = static_cast<double>(runs[k].start) +
                            0.5 * static_cast<double>(runs[k].length - 1);
            if (centre >= n) {
                centre -= n;
            }
            out.push_back(centre + 1.0);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<double> periodic_maxima(const std::vector<double>& v) {
    return periodic_extrema(v, [](double a, double b) { return a > b; });
}

std::vector<double> periodic_minima(const std::vector<double>& v) {
    return periodic_extrema(v, [](double a, double b) { return a < b; });
}

CornerReport classify_corners(const std::vector<double>& fb_x, const std::vector<double>& g,
                              const GridSpec& grid, const CornerSettings& settings) {
    if (fb_x.size() != g.size() || static_cast<int>(g.size()) != grid.rows()) {
        throw std::invalid_argument("classify_corners: trace and forcing must cover every row");
    }
    CornerReport rep;
    const int n = grid.rows();
    rep.max_g = *std::max_element(g.begin(), g.end());
    rep.zero_tol = settings.zero_fraction * std::max(rep.max_g, 0.0);

    for (int k = 0; k < n; ++k) {
        const bool in_band = g[static_cast<std::size_t>(k)] <= rep.zero_tol;
        const bool prev_in_band = g[static_cast<std::size_t>((k + n - 1) % n)] <= rep.zero_tol;
        if (in_band && !prev_in_band) {
            rep.zeros_of_g.push_back(grid.y(k + 1));
        }
    }

    for (double centre : periodic_maxima(fb_x)) {
        InterfaceMaximum mx;
        mx.row = centre;
        mx.y = (centre - 1.0) * grid.dy();
        const int lo = static_cast<int>(std::floor(centre - settings.window));
        const int hi = static_cast<int>(std::ceil(centre + settings.window));
        const int top = wrap_row(static_cast<int>(std::floor(centre)), grid);
        mx.fb_x = fb_x[static_cast<std::size_t>(top - 1)];
        mx.min_g = std::numeric_limits<double>::infinity();
        for (int r = lo; r <= hi; ++r) {
            mx.min_g = std::min(mx.min_g, g[static_cast<std::size_t>(wrap_row(r, grid) - 1)]);
        }
        if (rep.max_g > 0.0 && mx.min_g > settings.kappa * rep.max_g) {
            mx.verdict = CornerVerdict::corner;
        } else if (mx.min_g < rep.zero_tol) {
            mx.verdict = CornerVerdict::smooth;
        } else {
            mx.verdict = CornerVerdict::inconclusive;
        }
        rep.maxima.push_back(mx);
    }
    return rep;
}

}  // namespace pmwave
