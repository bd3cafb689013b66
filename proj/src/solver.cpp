#include "pmwave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pmwave/kernels.hpp"

namespace pmwave {

void validate(const SolverConfig& cfg, const GridSpec& grid, const FlowProfile& flow) {
    if (!(cfg.m > 0.0)) {
        throw std::invalid_argument("m must be positive");
    }
    if (!(cfg.c > flow.c_star())) {
        std::ostringstream os;
        os << "wave speed c = " << cfg.c << " is not admissible: it must exceed c_star = "
           << flow.c_star() << " of flow '" << flow.name() << "'";
        throw std::invalid_argument(os.str());
    }
    const double tau = effective_tau(cfg, grid);
    if (!(tau > 0.0 && tau < grid.x_max())) {
        throw std::invalid_argument("tau must lie in (0, x_max)");
    }
    if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) {
        throw std::invalid_argument("cfl_safety must lie in (0, 1]");
    }
    if (!(cfg.t_max >= 0.0)) {
        throw std::invalid_argument("t_max must be nonnegative");
    }
    if (!std::is_sorted(cfg.snapshot_times.begin(), cfg.snapshot_times.end())) {
        throw std::invalid_argument("snapshot_times must be sorted");
    }
}

double effective_tau(const SolverConfig& cfg, const GridSpec& grid) {
    return cfg.tau > 0.0 ? cfg.tau : 0.5 * grid.x_max();
}

PressureField initial_datum(const GridSpec& grid, const SolverConfig& cfg) {
    const double tau = effective_tau(cfg, grid);
    PressureField p(grid);
    for (int j = 1; j <= grid.rows(); ++j) {
        auto row = p.row(j);
        for (int i = 1; i <= grid.n_x(); ++i) {
            row[static_cast<std::size_t>(i - 1)] = cfg.c * std::max(grid.x(i) - tau, 0.0);
        }
    }
    return p;
}

double cfl_bound(const PressureField& p, double m, double c, double alpha_sup) {
    const GridSpec& g = p.grid();
    const double inv = 1.0 / (g.dx() * g.dx()) + 1.0 / (g.dy() * g.dy());
    const double denom = 2.0 * inv * m * std::max(p.max(), 0.0) + (c + alpha_sup) / g.dx();
    return 1.0 / denom;
}

double cfl_dt(const PressureField& p, const SolverConfig& cfg, const FlowProfile& flow) {
    return cfg.cfl_safety * cfl_bound(p, cfg.m, cfg.c, flow.alpha_sup());
}

std::vector<double> advection_speeds(const GridSpec& grid, const FlowProfile& flow, double c) {
    std::vector<double> a(static_cast<std::size_t>(grid.rows()));
    for (int j = 1; j <= grid.rows(); ++j) {
        a[static_cast<std::size_t>(j - 1)] = c + eval_flow(flow, grid.y(j));
    }
    return a;
}

namespace {

StepRecord step_with(const PressureField& p, PressureField& next, const SolverConfig& cfg,
                     const std::vector<double>& advection, double alpha_sup, double dt) {
    const GridSpec& g = p.grid();
    if (!(next.grid() == g)) {
        throw std::invalid_argument("step: output field is on a different grid");
    }
    if (&next == &p) {
        throw std::invalid_argument("step: output must not alias the input");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("step: dt must be positive");
    }
    const double bound = cfl_bound(p, cfg.m, cfg.c, alpha_sup);
    if (dt > bound) {
        std::ostringstream os;
        os << "step: dt = " << dt << " exceeds the CFL bound " << bound;
        throw std::invalid_argument(os.str());
    }

    const auto k = kernels::make_coefficients(cfg.m, dt, g.dx(), g.dy());
    const auto update = kernels::row_update(kernels::active_isa());
    const auto n_x = static_cast<std::size_t>(g.n_x());
    const double edge = cfg.c * g.dx();

    for (int j = 1; j <= g.rows(); ++j) {
        auto out = next.row(j);
        update(p.row(j - 1).data(), p.row(j).data(), p.row(j + 1).data(), out.data(), n_x,
               advection[static_cast<std::size_t>(j - 1)], k);
        out[0] = 0.0;
        out[n_x - 1] = out[n_x - 2] + edge;
    }

    StepRecord rec;
    rec.dt = dt;
    double max_p = 0.0;
    bool finite = true;
    for (double& v : next.values()) {
        if (!std::isfinite(v)) {
            finite = false;
        } else if (v < 0.0) {
            v = 0.0;
            ++rec.clamp_count;
        }
        max_p = std::max(max_p, v);
    }
    if (!finite) {
        throw NumericalError("step: non-finite pressure value produced");
    }
    rec.max_p = max_p;
    return rec;
}

}  // namespace

StepRecord step_into(const PressureField& p, PressureField& next, const SolverConfig& cfg,
                     const FlowProfile& flow, double dt) {
    return step_with(p, next, cfg, advection_speeds(p.grid(), flow, cfg.c), flow.alpha_sup(), dt);
}

StepResult step(const PressureField& p, const SolverConfig& cfg, const FlowProfile& flow,
                double dt) {
    PressureField next(p.grid());
    const StepRecord rec = step_into(p, next, cfg, flow, dt);
    return StepResult{std::move(next), rec};
}

LinearWeights linear_weights(const PressureField& p, int i, int j, double m, double advection,
                             double dt) {
    const GridSpec& g = p.grid();
    const double dx2 = g.dx() * g.dx();
    const double dy2 = g.dy() * g.dy();
    const double mp = m * p(i, j);
    LinearWeights w{};
    w.centre = 1.0 - dt * ((2.0 / dx2 + 2.0 / dy2) * mp + advection / g.dx());
    w.east = dt * mp / dx2;
    w.west = dt * (mp / dx2 + advection / g.dx());
    w.north = dt * mp / dy2;
    w.south = dt * mp / dy2;
    return w;
}

RunResult run(const GridSpec& grid, const SolverConfig& cfg, const FlowProfile& flow,
              const std::vector<StepObserver>& observers, RunOptions options) {
    return run_from(initial_datum(grid, cfg), 0.0, cfg, flow, observers, options);
}

RunResult run_from(PressureField initial, double t0, const SolverConfig& cfg,
                   const FlowProfile& flow, const std::vector<StepObserver>& observers,
                   RunOptions options) {
    const GridSpec grid = initial.grid();
    validate(cfg, grid, flow);
    const auto advection = advection_speeds(grid, flow, cfg.c);

    PressureField current = std::move(initial);
    PressureField next(grid);
    RunResult result{PressureField(grid), {}, 0, t0};

    double t = t0;
    long n = 0;
    while (t < cfg.t_max) {
        const double dt = cfg.cfl_safety * cfl_bound(current, cfg.m, cfg.c, flow.alpha_sup());
        StepRecord rec = step_with(current, next, cfg, advection, flow.alpha_sup(), dt);
        ++n;
        t += dt;
        rec.n = n;
        rec.t = t;
        for (const auto& obs : observers) {
            obs(current, next, rec);
        }
        if (options.keep_log) {
            result.log.push_back(rec);
        }
        std::swap(current, next);
    }
    result.field = std::move(current);
    result.steps = n;
    result.t = t;
    return result;
}

}  // namespace pmwave
