#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "pmwave/solver.hpp"

using namespace pmwave;

namespace {

SolverConfig make_cfg(double m, double c, double tau) {
    SolverConfig cfg;
    cfg.m = m;
    cfg.c = c;
    cfg.tau = tau;
    return cfg;
}

// Random nonnegative field with patches of exact zeros, the hard case for
// positivity.
GridField random_field(const GridSpec& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double scale = 4.0 * u(rng);
    const double zero_fraction = u(rng);
    GridField p(g);
    for (double& v : p.values()) {
        v = u(rng) < zero_fraction ? 0.0 : scale * u(rng);
    }
    return p;
}

// Diffusion-advection part of the update (no gradient-squared term), from
// the stencil weights.
GridField linear_step(const GridField& p, double m, const std::vector<double>& adv, double dt) {
    const GridSpec& g = p.grid();
    GridField out(g);
    for (int j = 1; j <= g.rows(); ++j) {
        for (int i = 2; i < g.n_x(); ++i) {
            const auto w = linear_weights(p, i, j, m, adv[static_cast<std::size_t>(j - 1)], dt);
            out(i, j) = w.centre * p(i, j) + w.east * p(i + 1, j) + w.west * p(i - 1, j) +
                        w.north * p(i, j + 1) + w.south * p(i, j - 1);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("initial datum") {
    const GridSpec g(4.0, 41, 9);  // dx = 0.1
    const auto cfg = make_cfg(1.1, 0.6, 2.0);
    const auto p = initial_datum(g, cfg);
    for (int j = 1; j <= g.rows(); ++j) {
        CHECK(p(21, j) == 0.0);  // x = tau
        CHECK(p(31, j) == doctest::Approx(0.6).epsilon(1e-14));
        CHECK(p(5, j) == 0.0);
        CHECK(p(41, j) == doctest::Approx(1.2).epsilon(1e-14));
    }
    CHECK(effective_tau(make_cfg(1.0, 0.6, 0.0), g) == 2.0);
}

TEST_CASE("CFL bound") {
    const GridSpec g(1.0, 11, 11);  // dx = dy = 0.1
    GridField zero(g);
    CHECK(cfl_bound(zero, 1.0, 0.6, 0.5) == doctest::Approx(0.1 / 1.1).epsilon(1e-14));

    GridField two(g);
    two(4, 4) = 2.0;
    CHECK(cfl_bound(two, 1.0, 0.6, 0.5) == doctest::Approx(1.0 / 811.0).epsilon(1e-14));

    auto cfg = make_cfg(1.0, 0.6, 0.5);
    cfg.cfl_safety = 0.5;
    const auto a1 = FlowProfile::from_name("alpha1");
    CHECK(cfl_dt(two, cfg, a1) == doctest::Approx(0.5 / 811.0).epsilon(1e-12));

    // diffusion dominated: doubling max P about halves dt
    GridField big(g);
    big(4, 4) = 100.0;
    GridField bigger(g);
    bigger(4, 4) = 200.0;
    const double ratio = cfl_bound(bigger, 1.0, 0.6, 0.5) / cfl_bound(big, 1.0, 0.6, 0.5);
    CHECK(ratio == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("config validation") {
    const GridSpec g(4.0, 41, 9);
    const auto a2 = FlowProfile::from_name("alpha2");
    CHECK_NOTHROW(validate(make_cfg(1.1, 0.4, 2.0), g, a2));
    CHECK_THROWS_AS(validate(make_cfg(1.1, 0.3, 2.0), g, a2), std::invalid_argument);
    CHECK_THROWS_AS(validate(make_cfg(1.1, 0.4, 4.0), g, a2), std::invalid_argument);
    CHECK_THROWS_AS(validate(make_cfg(0.0, 0.4, 2.0), g, a2), std::invalid_argument);
    auto cfg = make_cfg(1.1, 0.4, 2.0);
    cfg.cfl_safety = 1.5;
    CHECK_THROWS_AS(validate(cfg, g, a2), std::invalid_argument);
    cfg.cfl_safety = 1.0;
    cfg.snapshot_times = {2.0, 1.0};
    CHECK_THROWS_AS(validate(cfg, g, a2), std::invalid_argument);
}

TEST_CASE("step rejects a time step above the CFL bound") {
    const GridSpec g(4.0, 41, 9);
    const auto cfg = make_cfg(1.1, 0.6, 2.0);
    const auto flow = FlowProfile::from_name("alpha1");
    const auto p = initial_datum(g, cfg);
    const double dt = cfl_dt(p, cfg, flow);
    CHECK_NOTHROW(step(p, cfg, flow, dt));
    CHECK_THROWS_AS(step(p, cfg, flow, dt * 1.0001), std::invalid_argument);
    PressureField same = p;
    CHECK_THROWS_AS(step_into(same, same, cfg, flow, dt), std::invalid_argument);
}

TEST_CASE("single hot node against a hand-written update") {
    const GridSpec g(1.0, 11, 11);
    GridField p(g);
    const double h = 0.3;
    p(5, 4) = h;
    const auto cfg = make_cfg(0.7, 0.25, 0.5);
    const auto flow = FlowProfile::from_name("zero");
    const double dt = cfl_dt(p, cfg, flow);
    const auto out = step(p, cfg, flow, dt).field;
    const double dx = g.dx();
    const double dy = g.dy();

    auto node = [&](int i, int j) {
        const double c = p(i, j), e = p(i + 1, j), w = p(i - 1, j), n = p(i, j + 1),
                     s = p(i, j - 1);
        const double lap = (e + w - 2.0 * c) / (dx * dx) + (n + s - 2.0 * c) / (dy * dy);
        const double gx = (e - w) / (2.0 * dx);
        const double gy = (n - s) / (2.0 * dy);
        return c + dt * (cfg.m * c * lap - cfg.c * (c - w) / dx + gx * gx + gy * gy);
    };
    for (int j = 1; j <= g.rows(); ++j) {
        for (int i = 2; i < g.n_x(); ++i) {
            CHECK(out(i, j) == doctest::Approx(std::max(node(i, j), 0.0)).epsilon(1e-13));
        }
    }
    // mass reaches the neighbours through the gradient terms and advection only
    CHECK(out(6, 4) > 0.0);
    CHECK(out(4, 4) > 0.0);
    CHECK(out(5, 5) > 0.0);
    CHECK(out(7, 4) == 0.0);
}

TEST_CASE("boundary columns") {
    const GridSpec g(4.0, 41, 9);
    const auto cfg = make_cfg(1.1, 0.6, 2.0);
    const auto flow = FlowProfile::from_name("alpha1");
    auto p = initial_datum(g, cfg);
    for (int n = 0; n < 20; ++n) {
        p = step(p, cfg, flow, cfl_dt(p, cfg, flow)).field;
        for (int j = 1; j <= g.rows(); ++j) {
            CHECK(p(1, j) == 0.0);
            CHECK((p(41, j) - p(40, j)) / g.dx() == doctest::Approx(0.6).epsilon(1e-12));
        }
    }
}

TEST_CASE("planar wave is untouched away from the kink") {
    const GridSpec g(4.0, 201, 11);
    const auto cfg = make_cfg(1.1, 0.6, 2.0);  // kink on node 101
    const auto flow = FlowProfile::from_name("zero");
    const auto p = initial_datum(g, cfg);
    const auto out = step(p, cfg, flow, cfl_dt(p, cfg, flow)).field;
    for (int j = 1; j <= g.rows(); ++j) {
        for (int i = 2; i < g.n_x(); ++i) {
            if (std::abs(i - 101) >= 2) {
                CHECK(out(i, j) == doctest::Approx(p(i, j)).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("positivity under the CFL bound") {
    std::mt19937_64 rng(2024);
    const GridSpec g(2.0, 41, 17);
    const auto flow = FlowProfile::from_name("alpha1");
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = random_field(g, rng);
        const auto cfg = make_cfg(0.05 + 2.0 * u(rng), 0.55 + u(rng), 1.0);
        const auto rec = step(p, cfg, flow, cfl_dt(p, cfg, flow)).record;
        CHECK(rec.clamp_count == 0);
    }
}

TEST_CASE("stencil weights are nonnegative under the CFL bound") {
    std::mt19937_64 rng(5);
    const GridSpec g(2.0, 41, 17);
    const auto flow = FlowProfile::from_name("alpha2");
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = random_field(g, rng);
        const auto cfg = make_cfg(1.3, 0.5, 1.0);
        const double dt = cfl_dt(p, cfg, flow);
        const auto adv = advection_speeds(g, flow, cfg.c);
        for (int j = 1; j <= g.rows(); ++j) {
            for (int i = 2; i < g.n_x(); ++i) {
                const auto w = linear_weights(p, i, j, cfg.m, adv[j - 1], dt);
                CHECK(w.centre >= 0.0);
                CHECK(w.east >= 0.0);
                CHECK(w.west >= 0.0);
                CHECK(w.north >= 0.0);
                CHECK(w.south >= 0.0);
            }
        }
    }
}

TEST_CASE("comparison principle for the diffusion-advection step") {
    // The nonlinear coefficient m P makes the map monotone only with half
    // the CFL step: its derivative in P(i,j) contains m Lap P.
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const GridSpec g(2.0, 41, 17);
    const auto flow = FlowProfile::from_name("alpha1");
    const double m = 1.1;
    const double c = 0.6;
    const auto adv = advection_speeds(g, flow, c);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = random_field(g, rng);
        GridField q = p;
        for (double& v : q.values()) {
            v += u(rng) < 0.5 ? 0.0 : u(rng);
        }
        const double dt = 0.5 * std::min(cfl_bound(p, m, c, flow.alpha_sup()),
                                         cfl_bound(q, m, c, flow.alpha_sup()));
        const auto lp = linear_step(p, m, adv, dt);
        const auto lq = linear_step(q, m, adv, dt);
        for (std::size_t k = 0; k < lp.values().size(); ++k) {
            CHECK(lp.values()[k] <= lq.values()[k] + 1e-12);
        }
    }
}

TEST_CASE("run") {
    const GridSpec g(4.0, 81, 11);
    auto cfg = make_cfg(1.1, 0.6, 2.0);
    const auto flow = FlowProfile::from_name("alpha1");

    cfg.t_max = 0.0;
    const auto r0 = run(g, cfg, flow);
    CHECK(r0.steps == 0);
    CHECK(r0.field == initial_datum(g, cfg));

    cfg.t_max = 0.5;
    long calls = 0;
    const auto r1 = run(g, cfg, flow,
                        {[&](const PressureField&, const PressureField&, const StepRecord& rec) {
                            ++calls;
                            CHECK(rec.n == calls);
                            CHECK(rec.clamp_count == 0);
                        }});
    CHECK(calls == r1.steps);
    CHECK(r1.t >= 0.5);
    CHECK(r1.t - r1.log.back().dt < 0.5);
    CHECK(r1.log.size() == static_cast<std::size_t>(r1.steps));

    const auto r2 = run(g, cfg, flow);
    CHECK(r2.field == r1.field);
    CHECK(r2.steps == r1.steps);
}
