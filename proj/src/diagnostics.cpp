#include "pmwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmwave {

GridField residual_field(const PressureField& prev, const PressureField& next, double dt) {
    if (!(prev.grid() == next.grid())) {
        throw std::invalid_argument("residual_field: grid mismatch");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("residual_field: dt must be positive");
    }
    GridField r(prev.grid());
    const auto a = prev.values();
    const auto b = next.values();
    auto out = r.values();
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = (b[k] - a[k]) / dt;
    }
    return r;
}

Norms norms(const GridField& r) {
    const GridSpec& g = r.grid();
    double sum = 0.0;
    double linf = 0.0;
    for (int j = 1; j <= g.rows(); ++j) {
        const auto row = r.row(j);
        for (std::size_t k = 0; k < row.size(); ++k) {
            const double v = row[k];
            const double w = (k == 0 || k + 1 == row.size()) ? 0.5 : 1.0;
            sum += w * v * v;
            linf = std::max(linf, std::abs(v));
        }
    }
    return Norms{std::sqrt(sum * g.dx() * g.dy()), linf};
}

double drift_rate(std::span<const double> t, std::span<const double> p_tilde, double c,
                  std::size_t window) {
    if (t.size() != p_tilde.size()) {
        throw std::invalid_argument("drift_rate: series length mismatch");
    }
    if (window < 2) {
        throw std::invalid_argument("drift_rate: window must be at least 2");
    }
    if (t.size() < window) {
        throw std::invalid_argument("drift_rate: insufficient samples for the window");
    }
    if (!(c > 0.0)) {
        throw std::invalid_argument("drift_rate: c must be positive");
    }
    const std::size_t first = t.size() - window;
    double t_mean = 0.0;
    double p_mean = 0.0;
    for (std::size_t k = first; k < t.size(); ++k) {
        t_mean += t[k];
        p_mean += p_tilde[k];
    }
    t_mean /= static_cast<double>(window);
    p_mean /= static_cast<double>(window);
    double stt = 0.0;
    double stp = 0.0;
    for (std::size_t k = first; k < t.size(); ++k) {
        const double dt = t[k] - t_mean;
        stt += dt * dt;
        stp += dt * (p_tilde[k] - p_mean);
    }
    if (!(stt > 0.0)) {
        throw std::invalid_argument("drift_rate: sample times are degenerate");
    }
    return (stp / stt) / c;
}

double corrected_residual(const PressureField& prev, const PressureField& next, double dt,
                          double drift) {
    if (!(prev.grid() == next.grid())) {
        throw std::invalid_argument("corrected_residual: grid mismatch");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("corrected_residual: dt must be positive");
    }
    const GridSpec& g = prev.grid();
    const double two_dx = 2.0 * g.dx();
    double e = 0.0;
    for (int j = 1; j <= g.rows(); ++j) {
        const auto a = prev.row(j);
        const auto b = next.row(j);
        for (std::size_t k = 1; k + 1 < a.size(); ++k) {
            const double dpdt = (b[k] - a[k]) / dt;
            const double dpdx = (a[k + 1] - a[k - 1]) / two_dx;
            e = std::max(e, std::abs(dpdt - dpdx * drift));
        }
    }
    return e;
}

std::string_view verdict_name(Verdict v) {
    switch (v) {
    case Verdict::converged:
        return "converged";
    case Verdict::drifting_converged:
        return "drifting-converged";
    case Verdict::not_converged:
        return "not-converged";
    }
    return "unknown";
}

Verdict convergence_monitor(std::span<const ResidualReport> reports, const MonitorSettings& s) {
    if (s.decay_window < 1 || reports.size() < 2 * s.decay_window) {
        throw std::invalid_argument("convergence_monitor: need at least 2 * decay_window reports");
    }
    const ResidualReport& last = reports.back();
    if (last.linf < s.abs_tol) {
        return Verdict::converged;
    }
    const ResidualReport& before = reports[reports.size() - 1 - s.decay_window];
    const bool decayed = last.e_corr * s.factor <= before.e_corr;
    const double ref = std::max(std::abs(before.linf), std::abs(last.linf));
    const bool flat = ref > 0.0 && std::abs(last.linf - before.linf) < s.plateau_tol * ref;
    if (decayed && flat) {
        return Verdict::drifting_converged;
    }
    return Verdict::not_converged;
}

DriftTracker::DriftTracker(int marker_row, int stride, std::size_t window)
    : row_(marker_row), stride_(std::max(stride, 1)), window_(std::max<std::size_t>(window, 2)) {}

void DriftTracker::observe(const PressureField& next, const StepRecord& rec) {
    if (rec.n % stride_ != 0) {
        return;
    }
    t_.push_back(rec.t);
    p_.push_back(next(next.grid().n_x(), row_));
}

double DriftTracker::rate(double c) const {
    if (t_.size() < 2) {
        return 0.0;
    }
    return drift_rate(t_, p_, c, std::min(window_, t_.size()));
}

ResidualSampler::ResidualSampler(double interval, double c, DriftTracker& drift)
    : interval_(interval), c_(c), next_time_(interval), drift_(drift) {}

void ResidualSampler::observe(const PressureField& prev, const PressureField& next,
                              const StepRecord& rec) {
    if (rec.t < next_time_) {
        return;
    }
    while (next_time_ <= rec.t) {
        next_time_ += interval_;
    }
    ResidualReport r;
    r.t = rec.t;
    const Norms nr = norms(residual_field(prev, next, rec.dt));
    r.l2 = nr.l2;
    r.linf = nr.linf;
    r.drift_rate = drift_.rate(c_);
    r.e_corr = corrected_residual(prev, next, rec.dt, r.drift_rate);
    reports_.push_back(r);
}

}  // namespace pmwave
