#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pmwave/config.hpp"
#include "pmwave/diagnostics.hpp"
#include "pmwave/free_boundary.hpp"

namespace pmwave {

// Interface, levelset and corner analyses of one field.
struct FieldAnalysis {
    std::optional<InterfaceTrace> trace;  // empty when detection failed
    std::optional<bool> nondegenerate;    // min slope >= slope_fraction * c
    LevelsetReport levelsets;
    std::vector<double> g;                // forcing from the interface slope
    std::optional<CornerReport> corners;  // empty when g is unavailable
    std::vector<std::string> warnings;
};

// c is the wave speed the field was computed with. The levelset floor uses
// the field's own dx.
FieldAnalysis analyze_field(const PressureField& p, const ExperimentConfig& cfg,
                            const FlowProfile& flow, double c);

enum class RunStatus { ok, numerical_failure };

struct RunSummary {
    RunStatus status = RunStatus::ok;
    std::string error;
    long steps = 0;
    double t = 0.0;
    std::string convergence = "n/a";
    std::vector<ResidualReport> reports;
    std::optional<FieldAnalysis> analysis;
    std::vector<std::string> warnings;
    std::vector<std::string> files;  // artifacts written
};

// "convergence=<v> nondegeneracy=<pass|fail|n/a> h1=<..> h2=<..> corners=<n|n/a>"
std::string summary_line(const RunSummary& s);

// Runs the solver from the initial datum, sampling diagnostics every
// diag_interval, then analyses the final field. Artifacts go to
// <output_dir>/<prefix>_{steps,diagnostics,interface,levelsets}.csv,
// <prefix>_corners.txt, <prefix>_final.csv and <prefix>_snapshot_<k>.csv.
// With write_files = false nothing touches the disk. A NumericalError is
// caught: the logs gathered so far are flushed and the status is set.
RunSummary run_experiment(const ExperimentConfig& cfg, bool write_files = true);

// Re-runs the field analyses on a stored snapshot.
RunSummary analyze_snapshot(const std::string& snapshot_path, const ExperimentConfig& cfg,
                            bool write_files = true);

struct SweepRow {
    double value = 0.0;
    std::string status;  // ok, rejected, numerical-failure
    std::string message;
    RunSummary summary;
};

// One experiment per value of m, c or eps_floor; a rejected or failed value
// is recorded and the sweep continues. Writes <prefix>_sweep_<param>.csv.
std::vector<SweepRow> sweep(const ExperimentConfig& cfg, const std::string& param,
                            const std::vector<double>& values, bool write_files = true);

void write_sweep_table(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace pmwave
