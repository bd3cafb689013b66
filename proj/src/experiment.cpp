#include "pmwave/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pmwave/io.hpp"

namespace pmwave {

FieldAnalysis analyze_field(const PressureField& p, const ExperimentConfig& cfg,
                            const FlowProfile& flow, double c) {
    FieldAnalysis a;
    const GridSpec& grid = p.grid();
    try {
        a.trace = detect_interface(p, cfg.s);
        a.warnings.insert(a.warnings.end(), a.trace->warnings.begin(), a.trace->warnings.end());
        a.nondegenerate = a.trace->min_slope() >= cfg.slope_fraction * c;
    } catch (const std::out_of_range& e) {
        a.warnings.push_back(std::string("interface detection failed: ") + e.what());
    }

    H1H2Settings h;
    h.floor = cfg.eps_floor > 0.0 ? cfg.eps_floor : levelset_floor(c, grid.dx());
    h.h1_min_rungs = cfg.h1_min_rungs;
    h.h2_threshold = cfg.slope_fraction * c;
    std::vector<double> ladder;
    for (double e : geometric_ladder(cfg.eps_max, cfg.eps_min, cfg.eps_count)) {
        if (e >= h.floor) {
            ladder.push_back(e);
        }
    }
    if (ladder.size() < static_cast<std::size_t>(cfg.h1_min_rungs)) {
        std::ostringstream os;
        os << "only " << ladder.size() << " ladder rungs lie above the floor " << h.floor;
        a.warnings.push_back(os.str());
    }
    a.levelsets = h1_h2_report(p, ladder, flow, c, h);

    if (a.trace) {
        try {
            a.g = hj_forcing(a.trace->slope_gamma_plus, grid, flow, c);
            a.corners = classify_corners(a.trace->fb_x, a.g, grid, cfg.corners());
        } catch (const std::invalid_argument& e) {
            a.warnings.push_back(std::string("forcing unavailable: ") + e.what());
        }
    }
    return a;
}

namespace {

std::string pass_fail(std::optional<bool> v) {
    if (!v) {
        return "n/a";
    }
    return *v ? "pass" : "fail";
}

std::string value_tag(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

class Outputs {
public:
    Outputs(const ExperimentConfig& cfg, bool enabled, std::vector<std::string>& files)
        : dir_(cfg.output_dir), prefix_(cfg.prefix), enabled_(enabled), files_(files) {
        if (enabled_) {
            std::filesystem::create_directories(dir_);
        }
    }

    bool enabled() const { return enabled_; }

    std::ofstream open(const std::string& suffix) {
        const auto path = (std::filesystem::path(dir_) / (prefix_ + "_" + suffix)).string();
        std::ofstream os(path);
        if (!os) {
            throw std::runtime_error("cannot open '" + path + "' for writing");
        }
        files_.push_back(path);
        return os;
    }

    std::string path(const std::string& suffix) {
        auto p = (std::filesystem::path(dir_) / (prefix_ + "_" + suffix)).string();
        files_.push_back(p);
        return p;
    }

private:
    std::string dir_;
    std::string prefix_;
    bool enabled_;
    std::vector<std::string>& files_;
};

void write_analysis(Outputs& out, const GridSpec& grid, const FieldAnalysis& a) {
    if (!out.enabled()) {
        return;
    }
    if (a.trace) {
        auto os = out.open("interface.csv");
        write_interface(os, grid, *a.trace);
    }
    {
        auto os = out.open("levelsets.csv");
        write_levelsets(os, grid, a.levelsets);
    }
    auto os = out.open("corners.txt");
    if (a.corners && a.trace) {
        write_corner_report(os, *a.corners, grid, a.trace->fb_index);
    } else {
        os << "corner report\nunavailable\n";
    }
}

// Any row whose first positive node is column 2: the support touches the
// Dirichlet column.
bool touches_left_boundary(const PressureField& p) {
    for (int j = 1; j <= p.grid().rows(); ++j) {
        if (p(2, j) > 0.0) {
            return true;
        }
    }
    return false;
}

}  // namespace

std::string summary_line(const RunSummary& s) {
    std::ostringstream os;
    os << "convergence=" << s.convergence;
    if (s.analysis) {
        const auto& a = *s.analysis;
        os << " nondegeneracy=" << pass_fail(a.nondegenerate)
           << " h1=" << pass_fail(a.levelsets.rungs.empty() ? std::nullopt
                                                            : std::optional(a.levelsets.h1_pass))
           << " h2=" << pass_fail(a.levelsets.rungs.empty() ? std::nullopt
                                                            : std::optional(a.levelsets.h2_pass))
           << " corners=" << (a.corners ? std::to_string(a.corners->corner_count()) : "n/a");
    } else {
        os << " nondegeneracy=n/a h1=n/a h2=n/a corners=n/a";
    }
    if (s.status == RunStatus::numerical_failure) {
        os << " status=numerical-failure";
    }
    return os.str();
}

RunSummary run_experiment(const ExperimentConfig& cfg, bool write_files) {
    validate(cfg);
    const FlowProfile flow = load_flow(cfg);
    const GridSpec grid = cfg.grid();
    const SolverConfig scfg = cfg.solver();

    RunSummary summary;
    Outputs out(cfg, write_files, summary.files);
    std::ofstream steps_os;
    std::ofstream diag_os;
    if (write_files) {
        steps_os = out.open("steps.csv");
        write_step_header(steps_os);
        diag_os = out.open("diagnostics.csv");
        write_diagnostics_header(diag_os);
    }

    DriftTracker drift(cfg.y0, cfg.drift_stride, static_cast<std::size_t>(cfg.drift_window));
    ResidualSampler sampler(cfg.diag_interval, cfg.c, drift);
    const MonitorSettings monitor = cfg.monitor();
    std::size_t reported = 0;
    std::size_t next_snapshot = 0;
    bool boundary_warned = false;
    StepRecord last;

    auto verdict_now = [&](std::size_t count) -> std::string {
        if (count < 2 * monitor.decay_window) {
            return "n/a";
        }
        const auto& all = sampler.reports();
        return std::string(verdict_name(convergence_monitor(
            std::span<const ResidualReport>(all.data(), count), monitor)));
    };

    std::vector<StepObserver> observers;
    observers.emplace_back(
        [&](const PressureField&, const PressureField& next, const StepRecord& r) {
            drift.observe(next, r);
        });
    observers.emplace_back([&](const PressureField& prev, const PressureField& next,
                               const StepRecord& r) {
        sampler.observe(prev, next, r);
        const auto& reps = sampler.reports();
        while (reported < reps.size()) {
            ++reported;
            if (write_files) {
                write_diagnostics_row(diag_os, reps[reported - 1], verdict_now(reported));
            }
            if (!boundary_warned && touches_left_boundary(next)) {
                boundary_warned = true;
                std::ostringstream os;
                os << "interface reached the Dirichlet column near t = " << r.t;
                summary.warnings.push_back(os.str());
            }
        }
    });
    observers.emplace_back([&](const PressureField&, const PressureField& next,
                               const StepRecord& r) {
        last = r;
        if (write_files && r.n % cfg.log_every == 0) {
            write_step(steps_os, r);
        }
        while (next_snapshot < cfg.snapshot_times.size() &&
               r.t >= cfg.snapshot_times[next_snapshot]) {
            if (write_files) {
                write_snapshot(out.path("snapshot_" + std::to_string(next_snapshot) + ".csv"), next,
                               SnapshotMeta{cfg.m, cfg.c, flow.name(), r.t});
            }
            ++next_snapshot;
        }
    });

    try {
        RunResult res = run(grid, scfg, flow, observers, RunOptions{false});
        summary.steps = res.steps;
        summary.t = res.t;
        if (write_files && last.n > 0 && last.n % cfg.log_every != 0) {
            write_step(steps_os, last);
        }
        summary.reports = sampler.reports();
        summary.convergence = verdict_now(summary.reports.size());
        if (write_files) {
            write_snapshot(out.path("final.csv"), res.field,
                           SnapshotMeta{cfg.m, cfg.c, flow.name(), res.t});
        }
        FieldAnalysis a = analyze_field(res.field, cfg, flow, cfg.c);
        write_analysis(out, grid, a);
        summary.warnings.insert(summary.warnings.end(), a.warnings.begin(), a.warnings.end());
        summary.analysis = std::move(a);
    } catch (const NumericalError& e) {
        summary.status = RunStatus::numerical_failure;
        std::ostringstream os;
        os << e.what() << " after step " << last.n << " (t = " << last.t << ")";
        summary.error = os.str();
        summary.steps = last.n;
        summary.t = last.t;
        summary.reports = sampler.reports();
        summary.convergence = verdict_now(summary.reports.size());
        if (write_files) {
            write_step(steps_os, last);
        }
    }
    return summary;
}

RunSummary analyze_snapshot(const std::string& snapshot_path, const ExperimentConfig& cfg,
                            bool write_files) {
    validate(cfg);
    const Snapshot snap = read_snapshot(snapshot_path);
    const FlowProfile flow = load_flow(cfg);
    RunSummary summary;
    summary.t = snap.meta.t;
    if (snap.meta.alpha != flow.name()) {
        summary.warnings.push_back("snapshot flow '" + snap.meta.alpha +
                                   "' differs from configured flow '" + flow.name() + "'");
    }
    if (snap.meta.c != cfg.c) {
        summary.warnings.push_back("snapshot c = " + format_double(snap.meta.c) +
                                   " is used instead of the configured c = " +
                                   format_double(cfg.c));
    }
    if (!(snap.meta.c > flow.c_star())) {
        throw ConfigError("snapshot c = " + format_double(snap.meta.c) +
                          " is not admissible for flow '" + flow.name() + "'");
    }
    Outputs out(cfg, write_files, summary.files);
    FieldAnalysis a = analyze_field(snap.field, cfg, flow, snap.meta.c);
    write_analysis(out, snap.field.grid(), a);
    summary.warnings.insert(summary.warnings.end(), a.warnings.begin(), a.warnings.end());
    summary.analysis = std::move(a);
    return summary;
}

std::vector<SweepRow> sweep(const ExperimentConfig& cfg, const std::string& param,
                            const std::vector<double>& values, bool write_files) {
    {
        ExperimentConfig probe = cfg;
        set_parameter(probe, param, cfg.m);  // rejects unknown parameter names up front
    }
    std::vector<SweepRow> rows;
    for (double v : values) {
        SweepRow row;
        row.value = v;
        ExperimentConfig c = cfg;
        set_parameter(c, param, v);
        c.prefix = cfg.prefix + "_" + param + "_" + value_tag(v);
        try {
            validate(c);
        } catch (const ConfigError& e) {
            row.status = "rejected";
            row.message = e.what();
            rows.push_back(std::move(row));
            continue;
        }
        row.summary = run_experiment(c, write_files);
        if (row.summary.status == RunStatus::numerical_failure) {
            row.status = "numerical-failure";
            row.message = row.summary.error;
        } else {
            row.status = "ok";
        }
        rows.push_back(std::move(row));
    }
    if (write_files) {
        std::filesystem::create_directories(cfg.output_dir);
        const auto path = std::filesystem::path(cfg.output_dir) /
                          (cfg.prefix + "_sweep_" + param + ".csv");
        std::ofstream os(path);
        if (!os) {
            throw std::runtime_error("cannot open '" + path.string() + "' for writing");
        }
        write_sweep_table(os, rows);
    }
    return rows;
}

void write_sweep_table(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "value,status,convergence,nondegeneracy,h1,h2,corners\n";
    for (const auto& r : rows) {
        os << format_double(r.value) << ',' << r.status << ',';
        if (r.status == "rejected") {
            os << "n/a,n/a,n/a,n/a,n/a\n";
            continue;
        }
        const auto& s = r.summary;
        os << s.convergence << ',';
        if (s.analysis) {
            const auto& a = *s.analysis;
            os << pass_fail(a.nondegenerate) << ',' << (a.levelsets.h1_pass ? "pass" : "fail")
               << ',' << (a.levelsets.h2_pass ? "pass" : "fail") << ','
               << (a.corners ? std::to_string(a.corners->corner_count()) : "n/a") << '\n';
        } else {
            os << "n/a,n/a,n/a,n/a\n";
        }
    }
}

}  // namespace pmwave
