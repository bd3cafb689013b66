#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pmwave/diagnostics.hpp"
#include "pmwave/flows.hpp"
#include "pmwave/free_boundary.hpp"
#include "pmwave/grid.hpp"
#include "pmwave/solver.hpp"

namespace pmwave {

// Bad configuration text. line() is 0 when the error is not tied to a line
// of the text (e.g. the offending key kept its default). key() names the
// key a validation error is about, if any.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0, std::string key = {});
    int line() const { return line_; }
    const std::string& key() const { return key_; }

private:
    int line_;
    std::string key_;
};

struct ExperimentConfig {
    std::string preset = "paper-fig5-desk";

    // grid
    double x_max = 6.0;
    int n_x = 301;
    int n_y = 51;

    // physics
    double m = 1.1;
    double c = 0.4;
    std::string flow = "alpha2";
    std::string flow_file;  // non-empty: custom flow read from `y,alpha` lines
    std::optional<double> tau;  // unset: x_max / 2

    // run
    double t_max = 10.0;
    double cfl_safety = 1.0;
    std::vector<double> snapshot_times;
    double diag_interval = 0.1;
    int log_every = 100;

    // analysis
    int s = 5;
    double eps_max = 0.5;
    double eps_min = 0.01;
    int eps_count = 12;
    double eps_floor = 0.0;  // 0: use 4 c dx
    int h1_min_rungs = 8;
    double slope_fraction = 0.1;  // nondegeneracy / H2 threshold as a fraction of c
    int corner_window = 5;
    double corner_kappa = 0.1;
    double corner_zero_fraction = 0.02;
    int y0 = 1;
    int drift_window = 50;
    int drift_stride = 10;
    int decay_window = 20;
    double decay_factor = 10.0;
    double plateau_tol = 0.2;
    double abs_tol = 1e-8;

    // output
    std::string output_dir = ".";
    std::string prefix = "pmwave";

    GridSpec grid() const { return GridSpec(x_max, n_x, n_y); }
    double effective_tau() const { return tau.value_or(0.5 * x_max); }
    SolverConfig solver() const;
    double effective_eps_floor() const;
    std::vector<double> eps_ladder() const;  // rungs at or above the floor
    H1H2Settings h1h2() const;
    CornerSettings corners() const;
    MonitorSettings monitor() const;
    double slope_threshold() const { return slope_fraction * c; }
};

std::vector<std::string> preset_names();

// Defaults of a named preset; throws ConfigError for unknown names.
ExperimentConfig preset(std::string_view name);

// `key = value` lines, `#` starts a comment. A `preset` line is applied
// before every other key regardless of where it appears. Grid spacing may be
// given either as n_x / n_y or as dx / dy. The result is validated.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

// Cross-key admissibility: c > c_star, tau in (0, x_max), eps floor >= 4 c dx,
// and the per-key ranges. Throws ConfigError.
void validate(const ExperimentConfig& cfg);

// Resolves the flow (reading flow_file when set).
FlowProfile load_flow(const ExperimentConfig& cfg);

// Assigns one sweepable parameter: m, c or eps_floor.
void set_parameter(ExperimentConfig& cfg, std::string_view name, double value);

}  // namespace pmwave
