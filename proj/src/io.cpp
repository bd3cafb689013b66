#include "pmwave/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace pmwave {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    return os;
}

template <typename T>
T parse_number(std::string_view s, const std::string& what) {
    T v{};
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw FormatError("snapshot: bad " + what + " '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    while (true) {
        const auto pos = s.find(sep);
        out.push_back(s.substr(0, pos));
        if (pos == std::string_view::npos) {
            return out;
        }
        s.remove_prefix(pos + 1);
    }
}

}  // namespace

void write_snapshot(std::ostream& os, const PressureField& p, const SnapshotMeta& meta) {
    const GridSpec& g = p.grid();
    os << "# x_max=" << format_double(g.x_max()) << " n_x=" << g.n_x() << " n_y=" << g.n_y()
       << " m=" << format_double(meta.m) << " c=" << format_double(meta.c)
       << " alpha=" << meta.alpha << " t=" << format_double(meta.t) << '\n';
    os << "i,j,x,y,p\n";
    for (int i = 1; i <= g.n_x(); ++i) {
        for (int j = 1; j <= g.rows(); ++j) {
            os << i << ',' << j << ',' << format_double(g.x(i)) << ',' << format_double(g.y(j))
               << ',' << format_double(p(i, j)) << '\n';
        }
    }
}

void write_snapshot(const std::string& path, const PressureField& p, const SnapshotMeta& meta) {
    auto os = open_out(path);
    write_snapshot(os, p, meta);
}

Snapshot read_snapshot(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ", 0) != 0) {
        throw FormatError("snapshot: missing '# x_max=...' header");
    }
    std::map<std::string, std::string, std::less<>> kv;
    for (auto tok : split(std::string_view(line).substr(2), ' ')) {
        if (tok.empty()) {
            continue;
        }
        const auto eq = tok.find('=');
        if (eq == std::string_view::npos) {
            throw FormatError("snapshot: header token '" + std::string(tok) + "' is not key=value");
        }
        kv.emplace(std::string(tok.substr(0, eq)), std::string(tok.substr(eq + 1)));
    }
    auto need = [&](const char* key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end()) {
            throw FormatError(std::string("snapshot: header lacks ") + key);
        }
        return it->second;
    };
    const double x_max = parse_number<double>(need("x_max"), "x_max");
    const int n_x = parse_number<int>(need("n_x"), "n_x");
    const int n_y = parse_number<int>(need("n_y"), "n_y");
    SnapshotMeta meta;
    meta.m = parse_number<double>(need("m"), "m");
    meta.c = parse_number<double>(need("c"), "c");
    meta.alpha = need("alpha");
    meta.t = parse_number<double>(need("t"), "t");

    const GridSpec grid = [&] {
        try {
            return GridSpec(x_max, n_x, n_y);
        } catch (const std::invalid_argument& e) {
            throw FormatError(std::string("snapshot: ") + e.what());
        }
    }();
    PressureField field(grid);
    std::vector<char> seen(grid.node_count(), 0);
    std::vector<std::pair<int, double>> wrap_rows;  // (i, p) at j = n_y

    long line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#' || line.rfind("i,j", 0) == 0) {
            continue;
        }
        const auto cols = split(line, ',');
        if (cols.size() != 5) {
            throw FormatError("snapshot line " + std::to_string(line_no) + ": expected 5 columns");
        }
        const int i = parse_number<int>(cols[0], "i");
        const int j = parse_number<int>(cols[1], "j");
        const double v = parse_number<double>(cols[4], "p");
        if (i < 1 || i > n_x || j < 1 || j > n_y) {
            throw FormatError("snapshot line " + std::to_string(line_no) + ": node (" +
                              std::to_string(i) + ", " + std::to_string(j) + ") is off the grid");
        }
        if (j == n_y) {
            wrap_rows.emplace_back(i, v);
            continue;
        }
        const auto k = static_cast<std::size_t>(j - 1) * static_cast<std::size_t>(n_x) +
                       static_cast<std::size_t>(i - 1);
        if (seen[k]) {
            throw FormatError("snapshot line " + std::to_string(line_no) + ": duplicate node");
        }
        seen[k] = 1;
        field(i, j) = v;
    }
    for (std::size_t k = 0; k < seen.size(); ++k) {
        if (!seen[k]) {
            throw FormatError("snapshot: " + std::to_string(seen.size()) +
                              " nodes expected, node " + std::to_string(k % n_x + 1) + "," +
                              std::to_string(k / n_x + 1) + " missing");
        }
    }
    for (const auto& [i, v] : wrap_rows) {
        if (v != field(i, 1)) {
            throw FormatError("snapshot: periodic row j = n_y disagrees with row 1");
        }
    }
    return Snapshot{std::move(field), meta};
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        throw FormatError("cannot open snapshot '" + path + "'");
    }
    return read_snapshot(is);
}

void write_step_header(std::ostream& os) { os << "n,t,dt,max_p,clamp_count\n"; }

void write_step(std::ostream& os, const StepRecord& r) {
    os << r.n << ',' << format_double(r.t) << ',' << format_double(r.dt) << ','
       << format_double(r.max_p) << ',' << r.clamp_count << '\n';
}

void write_diagnostics_header(std::ostream& os) { os << "t,l2,linf,drift_rate,e_corr,verdict\n"; }

void write_diagnostics_row(std::ostream& os, const ResidualReport& r, const std::string& verdict) {
    os << format_double(r.t) << ',' << format_double(r.l2) << ',' << format_double(r.linf) << ','
       << format_double(r.drift_rate) << ',' << format_double(r.e_corr) << ',' << verdict << '\n';
}

void write_interface(std::ostream& os, const GridSpec& grid, const InterfaceTrace& trace) {
    os << "j,y,fb_x,slope_gamma_plus\n";
    for (int j = 1; j <= grid.rows(); ++j) {
        const auto k = static_cast<std::size_t>(j - 1);
        os << j << ',' << format_double(grid.y(j)) << ',' << format_double(trace.fb_x[k]) << ','
           << format_double(trace.slope_gamma_plus[k]) << '\n';
    }
}

void write_levelsets(std::ostream& os, const GridSpec& grid, const LevelsetReport& report) {
    os << "eps,j,y,X_eps,px,eps_pxx,eps_pxy\n";
    for (const auto& rung : report.rungs) {
        for (int j = 1; j <= grid.rows(); ++j) {
            const auto k = static_cast<std::size_t>(j - 1);
            const auto& row = rung.rows[k];
            const auto& d = rung.derivs[k];
            os << format_double(rung.eps) << ',' << j << ',' << format_double(grid.y(j)) << ',';
            if (!row.index) {
                os << "nan,nan,nan,nan\n";
                continue;
            }
            os << format_double(row.x) << ',';
            if (!d.valid) {
                os << "nan,nan,nan\n";
                continue;
            }
            os << format_double(d.px) << ',' << format_double(rung.eps * std::abs(d.pxx)) << ','
               << format_double(rung.eps * std::abs(d.pxy)) << '\n';
        }
    }
}

void write_corner_report(std::ostream& os, const CornerReport& report, const GridSpec& grid,
                         const std::vector<int>& fb_index) {
    os << "corner report\n";
    os << "max_g " << format_double(report.max_g) << '\n';
    os << "zero_tolerance " << format_double(report.zero_tol) << '\n';
    os << "zeros_of_g " << report.zeros_of_g.size();
    for (double y : report.zeros_of_g) {
        os << ' ' << format_double(y);
    }
    os << '\n';
    os << "maxima " << report.maxima.size() << '\n';
    for (const auto& mx : report.maxima) {
        const int j = wrap_row(static_cast<int>(std::floor(mx.row)), grid);
        os << "  row " << format_double(mx.row) << " y " << format_double(mx.y) << " column "
           << fb_index[static_cast<std::size_t>(j - 1)] << " fb_x " << format_double(mx.fb_x)
           << " min_g " << format_double(mx.min_g) << " verdict " << corner_verdict_name(mx.verdict)
           << '\n';
    }
    os << "corners " << report.corner_count() << '\n';
}

}  // namespace pmwave
