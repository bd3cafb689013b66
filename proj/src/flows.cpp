#include "pmwave/flows.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pmwave {

namespace {

constexpr int kDenseSamples = 10000;
constexpr double kExtremumTol = 1e-8;

double reduce_unit(double y) {
    double r = y - std::floor(y);
    if (r >= 1.0) {
        r = 0.0;
    }
    return r;
}

// Golden-section search for the minimum of f on [a, b].
template <typename F>
double golden_min(F&& f, double a, double b, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Dense sampling followed by golden-section refinement around the best
// sample. Returns the minimum value of f over one period.
template <typename F>
double periodic_minimum(F&& f) {
    const double h = 1.0 / kDenseSamples;
    int best = 0;
    double best_val = f(0.0);
    for (int k = 1; k < kDenseSamples; ++k) {
        const double v = f(k * h);
        if (v < best_val) {
            best_val = v;
            best = k;
        }
    }
    const double y0 = best * h;
    const double y_ref = golden_min(f, y0 - h, y0 + h, kExtremumTol);
    return std::min(best_val, f(y_ref));
}

}  // namespace

FlowProfile FlowProfile::builtin(FlowKind kind) {
    FlowProfile p;
    p.kind_ = kind;
    switch (kind) {
    case FlowKind::alpha1:
        p.name_ = "alpha1";
        break;
    case FlowKind::alpha2:
        p.name_ = "alpha2";
        break;
    case FlowKind::alpha3:
        p.name_ = "alpha3";
        break;
    case FlowKind::custom:
        throw std::invalid_argument("FlowProfile::builtin: custom flows need samples");
    }
    p.compute_extrema();
    return p;
}

FlowProfile FlowProfile::from_name(std::string_view name) {
    if (name == "alpha1") return builtin(FlowKind::alpha1);
    if (name == "alpha2") return builtin(FlowKind::alpha2);
    if (name == "alpha3") return builtin(FlowKind::alpha3);
    if (name == "zero") return tabulated({0.0, 0.5}, {0.0, 0.0}, "zero");
    throw std::invalid_argument("unknown flow '" + std::string(name) + "'");
}

FlowProfile FlowProfile::tabulated(std::vector<double> y, std::vector<double> alpha,
                                   std::string label) {
    if (y.size() != alpha.size() || y.size() < 2) {
        throw std::invalid_argument("tabulated flow needs at least two (y, alpha) samples");
    }
    for (std::size_t k = 0; k < y.size(); ++k) {
        if (!std::isfinite(y[k]) || !std::isfinite(alpha[k])) {
            throw std::invalid_argument("tabulated flow: non-finite sample");
        }
        if (y[k] < 0.0 || y[k] >= 1.0) {
            throw std::invalid_argument("tabulated flow: y must lie in [0, 1)");
        }
        if (k > 0 && !(y[k] > y[k - 1])) {
            throw std::invalid_argument("tabulated flow: y must be strictly increasing");
        }
    }
    FlowProfile p;
    p.kind_ = FlowKind::custom;
    p.name_ = std::move(label);
    p.table_y_ = std::move(y);
    p.table_alpha_ = std::move(alpha);

    // Exact mean of the periodic piecewise-linear interpolant.
    const auto& ty = p.table_y_;
    const auto& ta = p.table_alpha_;
    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < ty.size(); ++k) {
        integral += 0.5 * (ta[k] + ta[k + 1]) * (ty[k + 1] - ty[k]);
    }
    integral += 0.5 * (ta.back() + ta.front()) * (1.0 + ty.front() - ty.back());
    p.shift_ = integral;

    p.compute_extrema();
    return p;
}

double FlowProfile::evaluate(double y) const {
    using std::numbers::pi;
    switch (kind_) {
    case FlowKind::alpha1:
        return 0.5 * std::sin(2.0 * pi * y);
    case FlowKind::alpha2: {
        const double q = y * (1.0 - y);
        return 10.0 * (q * q - 1.0 / 30.0);
    }
    case FlowKind::alpha3: {
        // first four terms of the sawtooth series, hence the 1/k weights
        double s = 0.0;
        for (int k = 1; k <= 4; ++k) {
            s += std::sin(2.0 * k * pi * y) / k;
        }
        return 0.25 * s;
    }
    case FlowKind::custom:
        break;
    }

    const auto& ty = table_y_;
    const auto& ta = table_alpha_;
    const auto it = std::upper_bound(ty.begin(), ty.end(), y);
    double y0, y1, a0, a1;
    if (it == ty.begin() || it == ty.end()) {
        // Wrap segment between the last sample and the first one shifted by 1.
        y0 = ty.back();
        a0 = ta.back();
        y1 = ty.front() + 1.0;
        a1 = ta.front();
        if (y < y0) {
            y += 1.0;
        }
    } else {
        const auto k = static_cast<std::size_t>(it - ty.begin());
        y0 = ty[k - 1];
        y1 = ty[k];
        a0 = ta[k - 1];
        a1 = ta[k];
    }
    const double w = (y - y0) / (y1 - y0);
    return a0 + w * (a1 - a0) - shift_;
}

double FlowProfile::operator()(double y) const {
    return evaluate(reduce_unit(y));
}

void FlowProfile::compute_extrema() {
    alpha_min_ = periodic_minimum([this](double y) { return (*this)(y); });
    alpha_max_ = -periodic_minimum([this](double y) { return -(*this)(y); });
    alpha_sup_ = std::max(std::abs(alpha_min_), std::abs(alpha_max_));
}

double eval_flow(const FlowProfile& profile, double y) {
    return profile(y);
}

double critical_speed(const FlowProfile& profile) {
    return profile.c_star();
}

double mean_zero_residual(const FlowProfile& profile, int panels) {
    if (panels < 1) {
        throw std::invalid_argument("mean_zero_residual: panels must be positive");
    }
    // Periodic trapezoid: every node carries the same weight h.
    const double h = 1.0 / panels;
    double sum = 0.0;
    for (int k = 0; k < panels; ++k) {
        sum += profile(k * h);
    }
    return std::abs(sum * h);
}

FlowProfile read_flow_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open flow file '" + path + "'");
    }
    std::vector<double> ys;
    std::vector<double> as;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double y = 0.0;
        double a = 0.0;
        if (!(ss >> y >> a)) {
            if (ys.empty() && line_no == 1) {
                continue;  // header
            }
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 'y,alpha'");
        }
        ys.push_back(y);
        as.push_back(a);
    }
    return FlowProfile::tabulated(std::move(ys), std::move(as));
}

}  // namespace pmwave
