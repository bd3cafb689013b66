#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pmwave/diagnostics.hpp"
#include "pmwave/free_boundary.hpp"
#include "pmwave/grid.hpp"
#include "pmwave/solver.hpp"

// Plain-text run artifacts. Every number is written with 17 significant
// digits so that reading a file back reproduces the doubles exactly.

namespace pmwave {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SnapshotMeta {
    double m = 0.0;
    double c = 0.0;
    std::string alpha;
    double t = 0.0;
};

struct Snapshot {
    PressureField field;
    SnapshotMeta meta;
};

// # x_max=.. n_x=.. n_y=.. m=.. c=.. alpha=<name> t=..
// i,j,x,y,p
// one line per stored node, i outer, j inner.
void write_snapshot(std::ostream& os, const PressureField& p, const SnapshotMeta& meta);
void write_snapshot(const std::string& path, const PressureField& p, const SnapshotMeta& meta);

// Throws FormatError on a malformed header, missing or duplicate nodes, or
// indices outside the grid. A row j = n_y (the periodic copy of j = 1) is
// accepted and must agree with row 1.
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::string& path);

std::string format_double(double v);

// Row writers; the *_header functions print the column line.
void write_step_header(std::ostream& os);
void write_step(std::ostream& os, const StepRecord& r);

void write_diagnostics_header(std::ostream& os);
void write_diagnostics_row(std::ostream& os, const ResidualReport& r, const std::string& verdict);

void write_interface(std::ostream& os, const GridSpec& grid, const InterfaceTrace& trace);
void write_levelsets(std::ostream& os, const GridSpec& grid, const LevelsetReport& report);
void write_corner_report(std::ostream& os, const CornerReport& report, const GridSpec& grid,
                         const std::vector<int>& fb_index);

}  // namespace pmwave
