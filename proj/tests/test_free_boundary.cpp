#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "pmwave/free_boundary.hpp"

using namespace pmwave;

namespace {

constexpr double pi = std::numbers::pi;

// c [x - phi(y_j)]^+ per row
GridField kinked(const GridSpec& g, double c, const std::vector<double>& phi) {
    GridField p(g);
    for (int j = 1; j <= g.rows(); ++j) {
        for (int i = 1; i <= g.n_x(); ++i) {
            p(i, j) = c * std::max(g.x(i) - phi[j - 1], 0.0);
        }
    }
    return p;
}

GridField planar(const GridSpec& g, double c, double tau) {
    return kinked(g, c, std::vector<double>(static_cast<std::size_t>(g.rows()), tau));
}

}  // namespace

TEST_CASE("interface of a planar field") {
    const GridSpec g(4.0, 201, 21);  // dx = 0.02
    const auto p = planar(g, 0.6, 2.0);  // kink on node 101
    const auto tr = detect_interface(p, 5);
    for (int j = 1; j <= g.rows(); ++j) {
        CHECK(tr.fb_index[j - 1] == 101);
        CHECK(tr.fb_x[j - 1] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(tr.slope_gamma_plus[j - 1] == doctest::Approx(0.6).epsilon(1e-10));
    }
    CHECK(tr.min_slope() == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(tr.warnings.empty());

    // the slope is the same for every offset on a piecewise-linear field
    for (int s = 0; s <= 90; s += 9) {
        const auto sl = slope_at_interface(p, tr.fb_index, s);
        CHECK(sl[3] == doctest::Approx(0.6).epsilon(1e-10));
    }
    CHECK_THROWS_AS(slope_at_interface(p, tr.fb_index, 100), std::out_of_range);
}

TEST_CASE("interface follows a shifted kink") {
    const GridSpec g(4.0, 201, 21);
    std::vector<double> phi;
    for (int j = 1; j <= g.rows(); ++j) {
        phi.push_back(2.0 + 0.1 * std::sin(2 * pi * g.y(j)));
    }
    const auto tr = detect_interface(kinked(g, 0.5, phi), 5);
    for (int j = 1; j <= g.rows(); ++j) {
        CHECK(std::abs(tr.fb_x[j - 1] - phi[j - 1]) <= g.dx());
    }

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.5, 3.0);
    for (int trial = 0; trial < 30; ++trial) {
        for (double& v : phi) v = u(rng);
        const auto t = detect_interface(kinked(g, 0.4, phi), 5);
        for (int j = 1; j <= g.rows(); ++j) {
            CHECK(std::abs(t.fb_x[j - 1] - phi[j - 1]) <= g.dx());
        }
    }
}

TEST_CASE("interface near the boundaries") {
    const GridSpec g(4.0, 201, 11);
    const auto near_left = detect_interface(planar(g, 0.6, 0.08), 5);
    CHECK_FALSE(near_left.warnings.empty());
    CHECK_THROWS_AS(detect_interface(planar(g, 0.6, 3.9), 5), std::out_of_range);
}

TEST_CASE("levelset trace") {
    const GridSpec g(4.0, 201, 11);
    const double c = 0.6;
    const auto p = planar(g, c, 2.0);
    for (double eps : {0.013, 0.05, 0.31}) {
        const auto ls = levelset_trace(p, eps);
        const int want = 101 + static_cast<int>(std::ceil(eps / (c * g.dx())));
        for (const auto& row : ls) {
            REQUIRE(row.index);
            CHECK(*row.index == want);
            CHECK(row.x == doctest::Approx(g.x(want)));
        }
    }
    for (const auto& row : levelset_trace(p, 10.0)) {
        CHECK_FALSE(row.index);
    }
    CHECK_THROWS_AS(levelset_trace(p, 0.0), std::invalid_argument);

    // monotone in eps on an arbitrary field
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    GridField r(g);
    for (double& v : r.values()) v = u(rng);
    const auto hi = levelset_trace(r, 0.9);
    const auto lo = levelset_trace(r, 0.4);
    for (std::size_t k = 0; k < hi.size(); ++k) {
        if (hi[k].index) {
            REQUIRE(lo[k].index);
            CHECK(*hi[k].index >= *lo[k].index);
        }
    }
}

TEST_CASE("levelset derivatives") {
    const GridSpec g(4.0, 201, 11);
    const double c = 0.6;
    const auto p = planar(g, c, 2.0);
    const auto d = levelset_derivatives(p, levelset_trace(p, 0.1));
    for (const auto& v : d) {
        REQUIRE(v.valid);
        CHECK(v.px == doctest::Approx(c).epsilon(1e-10));
        CHECK(std::abs(v.pxx) < 1e-8);
        CHECK(std::abs(v.pxy) < 1e-8);
    }

    // kink half a cell left of node 102; eps = c dx / 4 lands on node 102
    const double dx = g.dx();
    const auto q = planar(g, c, 2.0 + 0.5 * dx);
    const auto ls = levelset_trace(q, 0.25 * c * dx);
    REQUIRE(*ls[0].index == 102);
    const auto dq = levelset_derivatives(q, ls);
    CHECK(dq[0].pxx == doctest::Approx(c / (2 * dx)).epsilon(1e-9));
    CHECK(dq[0].px == doctest::Approx(0.75 * c).epsilon(1e-9));

    // separable smooth field: no cross term
    GridField s(g);
    for (int j = 1; j <= g.rows(); ++j) {
        for (int i = 1; i <= g.n_x(); ++i) {
            s(i, j) = 0.1 * g.x(i) * g.x(i) + 0.01 * std::sin(2 * pi * g.y(j));
        }
    }
    for (const auto& v : levelset_derivatives(s, levelset_trace(s, 0.5))) {
        REQUIRE(v.valid);
        CHECK(std::abs(v.pxy) < 1e-9);
    }

    // a levelset in the first column cannot carry centred stencils
    const auto edge = levelset_derivatives(GridField(g, 1.0), levelset_trace(GridField(g, 1.0), 0.5));
    CHECK_FALSE(edge[0].valid);
}

TEST_CASE("ladder and floor") {
    const auto l = geometric_ladder(0.5, 0.01, 12);
    REQUIRE(l.size() == 12);
    CHECK(l.front() == 0.5);
    CHECK(l.back() == 0.01);
    for (std::size_t k = 1; k < l.size(); ++k) {
        CHECK(l[k] / l[k - 1] == doctest::Approx(std::pow(0.02, 1.0 / 11)).epsilon(1e-12));
    }
    CHECK(levelset_floor(0.4, 0.02) == doctest::Approx(0.032));
    CHECK_THROWS_AS(geometric_ladder(0.01, 0.5, 3), std::invalid_argument);
}

TEST_CASE("H1 and H2 on a planar field") {
    const GridSpec g(4.0, 401, 11);  // dx = 0.01
    const double c = 0.6;
    const auto p = planar(g, c, 1.0);
    H1H2Settings s;
    s.floor = levelset_floor(c, g.dx());
    s.h2_threshold = 0.1 * c;
    const auto zero = FlowProfile::from_name("zero");
    const auto rep = h1_h2_report(p, geometric_ladder(0.5, 0.01, 12), zero, c, s);
    REQUIRE(rep.rungs.size() >= 8);
    for (const auto& r : rep.rungs) {
        CHECK(r.eps >= s.floor);
        CHECK(r.sup_eps_pxx < 1e-10);
        CHECK(r.sup_eps_pxy < 1e-10);
        CHECK(r.min_px == doctest::Approx(c).epsilon(1e-10));
        CHECK(r.missing == 0);
    }
    CHECK(rep.h1_pass);
    CHECK(rep.h2_pass);
    for (double gj : rep.g) {
        CHECK(std::abs(gj) < 1e-10);
    }
}

TEST_CASE("H2 fails on quadratic growth") {
    const GridSpec g(4.0, 401, 11);
    GridField p(g);
    for (int j = 1; j <= g.rows(); ++j) {
        for (int i = 1; i <= g.n_x(); ++i) {
            const double d = std::max(g.x(i) - 1.0, 0.0);
            p(i, j) = d * d;
        }
    }
    const double c = 0.6;
    H1H2Settings s;
    s.floor = levelset_floor(c, g.dx());
    s.h2_threshold = 0.1 * c;
    const auto rep =
        h1_h2_report(p, geometric_ladder(0.5, 0.01, 12), FlowProfile::from_name("zero"), c, s);
    REQUIRE(rep.rungs.size() >= 2);
    // px at {p = eps} is 2 sqrt(eps), up to the levelset rounding of one cell
    CHECK(rep.rungs.back().min_px < 0.5 * rep.rungs.front().min_px);
    // with the bound tied to the top rung the verdict catches the collapse
    s.h2_threshold = 0.5 * rep.rungs.front().min_px;
    CHECK_FALSE(h1_h2_report(p, geometric_ladder(0.5, 0.01, 12), FlowProfile::from_name("zero"), c, s)
                    .h2_pass);
    for (const auto& r : rep.rungs) {
        CHECK(r.min_px >= 2 * std::sqrt(r.eps) - 1e-12);
        CHECK(r.min_px <= 2 * (std::sqrt(r.eps) + g.dx()) + 1e-12);
    }
}

TEST_CASE("forcing") {
    const GridSpec g(1.0, 5, 33);
    const double c = 0.6;
    const auto zero = FlowProfile::from_name("zero");
    const auto a1 = FlowProfile::from_name("alpha1");
    const std::vector<double> flat(32, c);
    for (double v : hj_forcing(flat, g, zero, c)) {
        CHECK(v == 0.0);
    }
    std::vector<double> exact;
    for (int j = 1; j <= g.rows(); ++j) exact.push_back(c + a1(g.y(j)));
    for (double v : hj_forcing(exact, g, a1, c)) {
        CHECK(std::abs(v) < 1e-15);
    }

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> f(32);
        for (double& v : f) v = u(rng);
        const double lambda = u(rng);
        std::vector<double> lf = f;
        for (double& v : lf) v *= lambda;
        const auto g1 = hj_forcing(f, g, a1, c);
        const auto g2 = hj_forcing(lf, g, a1, c);
        for (std::size_t k = 0; k < f.size(); ++k) {
            CHECK(g2[k] == doctest::Approx((g1[k] + 1.0) / lambda - 1.0).epsilon(1e-12));
        }
    }
    std::vector<double> bad = flat;
    bad[5] = 0.0;
    CHECK_THROWS_AS(hj_forcing(bad, g, zero, c), std::invalid_argument);
}

TEST_CASE("periodic extrema") {
    CHECK(periodic_maxima({1, 2, 3, 2, 1, 0}) == std::vector<double>{3.0});
    CHECK(periodic_minima({1, 2, 3, 2, 1, 0}) == std::vector<double>{6.0});
    CHECK(periodic_maxima({5, 1, 1, 2, 2, 1}) == std::vector<double>{1.0, 4.5});
    CHECK(periodic_maxima({2, 2, 2}).empty());
    // plateau across the seam
    CHECK(periodic_maxima({3, 1, 1, 1, 3}) == std::vector<double>{5.5});
}

TEST_CASE("corner classification") {
    const GridSpec g(4.0, 11, 41);  // 40 rows
    std::vector<double> fb(40);
    for (int j = 1; j <= 40; ++j) fb[j - 1] = 2.0 + 0.1 * std::cos(2 * pi * g.y(j));

    // g = 0: no forcing, no corners
    const auto flat = classify_corners(fb, std::vector<double>(40, 0.0), g);
    CHECK(flat.corner_count() == 0);
    REQUIRE(flat.maxima.size() == 1);
    CHECK(flat.maxima[0].row == 1.0);

    // g >= 0.2 except a single zero at the minimum of I (row 21)
    std::vector<double> gf(40, 0.2);
    for (int j = 1; j <= 40; ++j) gf[j - 1] += 0.3 * std::cos(pi * g.y(j)) * std::cos(pi * g.y(j));
    gf[20] = 0.0;
    const auto rep = classify_corners(fb, gf, g);
    CHECK(rep.corner_count() == 1);
    CHECK(rep.maxima[0].verdict == CornerVerdict::corner);
    REQUIRE(rep.zeros_of_g.size() == 1);
    CHECK(rep.zeros_of_g[0] == doctest::Approx(0.5));

    // g vanishing at the maximum as well: smooth there
    gf[0] = 0.0;
    const auto smooth = classify_corners(fb, gf, g);
    CHECK(smooth.corner_count() == 0);
    CHECK(smooth.maxima[0].verdict == CornerVerdict::smooth);
    CHECK(corner_verdict_name(CornerVerdict::smooth) == "smooth");
}
