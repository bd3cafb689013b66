#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pmwave {

enum class FlowKind { alpha1, alpha2, alpha3, custom };

// A periodic, mean-zero shear flow alpha(y) together with its extrema.
//
// Built-in profiles:
//   alpha1(y) = 0.5 sin(2 pi y)
//   alpha2(y) = 10 (y^2 (1-y)^2 - 1/30)
//   alpha3(y) = 1/4 sum_{k=1..4} sin(2 k pi y) / k   (truncated sawtooth)
// Custom profiles are tabulated samples, linearly interpolated with periodic
// wraparound and shifted to zero mean.
class FlowProfile {
public:
    static FlowProfile builtin(FlowKind kind);

    // "alpha1", "alpha2", "alpha3", or "zero" (the identically vanishing
    // custom flow). Throws std::invalid_argument otherwise.
    static FlowProfile from_name(std::string_view name);

    // y must be strictly increasing in [0, 1); at least two samples.
    static FlowProfile tabulated(std::vector<double> y, std::vector<double> alpha,
                                 std::string label = "custom");

    FlowKind kind() const { return kind_; }
    // "alpha1".."alpha3" for built-ins, the label for custom flows.
    const std::string& name() const { return name_; }

    // y is reduced modulo 1 first.
    double operator()(double y) const;

    double alpha_min() const { return alpha_min_; }
    double alpha_max() const { return alpha_max_; }
    double alpha_sup() const { return alpha_sup_; }
    double c_star() const { return -alpha_min_; }

    // False when min alpha >= 0, i.e. no positive critical speed exists.
    bool has_positive_critical_speed() const { return alpha_min_ < 0.0; }

private:
    FlowProfile() = default;
    double evaluate(double y) const;
    void compute_extrema();

    FlowKind kind_ = FlowKind::custom;
    std::string name_;
    std::vector<double> table_y_;
    std::vector<double> table_alpha_;
    double shift_ = 0.0;
    double alpha_min_ = 0.0;
    double alpha_max_ = 0.0;
    double alpha_sup_ = 0.0;
};

double eval_flow(const FlowProfile& profile, double y);

// -min alpha.
double critical_speed(const FlowProfile& profile);

// |integral_0^1 alpha(y) dy| by the composite trapezoidal rule with `panels`
// panels (periodic, so the rule is exact up to roundoff for trigonometric
// polynomials of low degree).
double mean_zero_residual(const FlowProfile& profile, int panels = 20000);

// Reads `y,alpha` lines; '#' lines and a non-numeric header are skipped.
FlowProfile read_flow_csv(const std::string& path);

}  // namespace pmwave
