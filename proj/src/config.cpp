#include "pmwave/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace pmwave {

ConfigError::ConfigError(const std::string& what, int line, std::string key)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line),
      key_(std::move(key)) {}

SolverConfig ExperimentConfig::solver() const {
    SolverConfig s;
    s.m = m;
    s.c = c;
    s.tau = effective_tau();
    s.t_max = t_max;
    s.cfl_safety = cfl_safety;
    s.snapshot_times = snapshot_times;
    return s;
}

double ExperimentConfig::effective_eps_floor() const {
    return eps_floor > 0.0 ? eps_floor : levelset_floor(c, x_max / (n_x - 1));
}

std::vector<double> ExperimentConfig::eps_ladder() const {
    const double floor = effective_eps_floor();
    std::vector<double> out;
    for (double e : geometric_ladder(eps_max, eps_min, eps_count)) {
        if (e >= floor) {
            out.push_back(e);
        }
    }
    return out;
}

H1H2Settings ExperimentConfig::h1h2() const {
    H1H2Settings h;
    h.floor = effective_eps_floor();
    h.h1_min_rungs = h1_min_rungs;
    h.h2_threshold = slope_threshold();
    return h;
}

CornerSettings ExperimentConfig::corners() const {
    CornerSettings cs;
    cs.window = corner_window;
    cs.kappa = corner_kappa;
    cs.zero_fraction = corner_zero_fraction;
    return cs;
}

MonitorSettings ExperimentConfig::monitor() const {
    MonitorSettings ms;
    ms.decay_window = static_cast<std::size_t>(decay_window);
    ms.factor = decay_factor;
    ms.plateau_tol = plateau_tol;
    ms.abs_tol = abs_tol;
    return ms;
}

namespace {

int nodes_for(double length, double h) { return static_cast<int>(std::lround(length / h)) + 1; }

ExperimentConfig desk_base() {
    ExperimentConfig c;
    c.x_max = 6.0;
    c.n_x = nodes_for(c.x_max, 0.02);
    c.n_y = nodes_for(1.0, 0.02);
    c.t_max = 10.0;
    return c;
}

}  // namespace

std::vector<std::string> preset_names() { return {"paper-fig5-desk", "paper-fig5", "planar-desk"}; }

ExperimentConfig preset(std::string_view name) {
    if (name == "paper-fig5-desk") {
        return desk_base();
    }
    if (name == "paper-fig5") {
        // long-running: full resolution of the published runs
        ExperimentConfig c;
        c.preset = "paper-fig5";
        c.x_max = 10.0;
        c.n_x = nodes_for(c.x_max, 5e-3);
        c.n_y = nodes_for(1.0, 5e-3);
        c.t_max = 30.0;
        c.diag_interval = 0.25;
        c.log_every = 1000;
        return c;
    }
    if (name == "planar-desk") {
        ExperimentConfig c = desk_base();
        c.preset = "planar-desk";
        c.flow = "zero";
        c.m = 0.1;
        c.c = 0.6;
        c.t_max = 2.0;
        c.diag_interval = 0.02;
        return c;
    }
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(std::string_view v, std::string_view key, int line) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end || !std::isfinite(out)) {
        throw ConfigError("'" + std::string(key) + "' expects a number, got '" + std::string(v) +
                              "'",
                          line);
    }
    return out;
}

int to_int(std::string_view v, std::string_view key, int line) {
    int out = 0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("'" + std::string(key) + "' expects an integer, got '" + std::string(v) +
                              "'",
                          line);
    }
    return out;
}

std::vector<double> to_list(std::string_view v, std::string_view key, int line) {
    std::vector<double> out;
    while (!v.empty()) {
        const auto comma = v.find(',');
        const auto item = trim(v.substr(0, comma));
        if (item.empty()) {
            throw ConfigError("'" + std::string(key) + "' has an empty list entry", line);
        }
        out.push_back(to_double(item, key, line));
        if (comma == std::string_view::npos) {
            break;
        }
        v.remove_prefix(comma + 1);
    }
    return out;
}

struct Entry {
    std::string key;
    std::string value;
    int line;
};

struct Spacing {
    std::optional<double> dx, dy;
    std::optional<int> n_x, n_y;
    int dx_line = 0, dy_line = 0;
};

using Setter = std::function<void(ExperimentConfig&, const Entry&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    auto num = [](double ExperimentConfig::*f) {
        return Setter([f](ExperimentConfig& c, const Entry& e) {
            c.*f = to_double(e.value, e.key, e.line);
        });
    };
    auto integer = [](int ExperimentConfig::*f) {
        return Setter([f](ExperimentConfig& c, const Entry& e) {
            c.*f = to_int(e.value, e.key, e.line);
        });
    };
    auto text = [](std::string ExperimentConfig::*f) {
        return Setter([f](ExperimentConfig& c, const Entry& e) { c.*f = e.value; });
    };
    static const std::map<std::string, Setter, std::less<>> table = {
        {"x_max", num(&ExperimentConfig::x_max)},
        {"m", num(&ExperimentConfig::m)},
        {"c", num(&ExperimentConfig::c)},
        {"flow", text(&ExperimentConfig::flow)},
        {"flow_file", text(&ExperimentConfig::flow_file)},
        {"tau",
         [](ExperimentConfig& c, const Entry& e) { c.tau = to_double(e.value, e.key, e.line); }},
        {"t_max", num(&ExperimentConfig::t_max)},
        {"cfl_safety", num(&ExperimentConfig::cfl_safety)},
        {"snapshot_times",
         [](ExperimentConfig& c, const Entry& e) {
             c.snapshot_times = to_list(e.value, e.key, e.line);
         }},
        {"diag_interval", num(&ExperimentConfig::diag_interval)},
        {"log_every", integer(&ExperimentConfig::log_every)},
        {"s", integer(&ExperimentConfig::s)},
        {"eps_max", num(&ExperimentConfig::eps_max)},
        {"eps_min", num(&ExperimentConfig::eps_min)},
        {"eps_count", integer(&ExperimentConfig::eps_count)},
        {"eps_floor", num(&ExperimentConfig::eps_floor)},
        {"h1_min_rungs", integer(&ExperimentConfig::h1_min_rungs)},
        {"slope_fraction", num(&ExperimentConfig::slope_fraction)},
        {"corner_window", integer(&ExperimentConfig::corner_window)},
        {"corner_kappa", num(&ExperimentConfig::corner_kappa)},
        {"corner_zero_fraction", num(&ExperimentConfig::corner_zero_fraction)},
        {"y0", integer(&ExperimentConfig::y0)},
        {"drift_window", integer(&ExperimentConfig::drift_window)},
        {"drift_stride", integer(&ExperimentConfig::drift_stride)},
        {"decay_window", integer(&ExperimentConfig::decay_window)},
        {"decay_factor", num(&ExperimentConfig::decay_factor)},
        {"plateau_tol", num(&ExperimentConfig::plateau_tol)},
        {"abs_tol", num(&ExperimentConfig::abs_tol)},
        {"output_dir", text(&ExperimentConfig::output_dir)},
        {"prefix", text(&ExperimentConfig::prefix)},
    };
    return table;
}

void apply(ExperimentConfig& cfg, const Entry& e) {
    const auto& table = setters();
    const auto it = table.find(e.key);
    if (it == table.end()) {
        throw ConfigError("unknown key '" + e.key + "'", e.line);
    }
    it->second(cfg, e);
}

void check(bool ok, const std::string& what, const char* key) {
    if (!ok) {
        throw ConfigError(what, 0, key);
    }
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
    check(cfg.x_max > 0.0, "x_max must be positive", "x_max");
    check(cfg.n_x >= 3, "n_x must be at least 3", "n_x");
    check(cfg.n_y >= 4, "n_y must be at least 4", "n_y");
    check(cfg.m > 0.0, "m must be positive", "m");
    check(cfg.effective_tau() > 0.0 && cfg.effective_tau() < cfg.x_max,
          "tau must lie in (0, x_max)", "tau");
    check(cfg.t_max >= 0.0, "t_max must be nonnegative", "t_max");
    check(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0, "cfl_safety must lie in (0, 1]",
          "cfl_safety");
    check(std::is_sorted(cfg.snapshot_times.begin(), cfg.snapshot_times.end()),
          "snapshot_times must be sorted", "snapshot_times");
    check(cfg.diag_interval > 0.0, "diag_interval must be positive", "diag_interval");
    check(cfg.log_every >= 1, "log_every must be at least 1", "log_every");
    check(cfg.s >= 0, "s must be nonnegative", "s");
    check(cfg.eps_max > cfg.eps_min && cfg.eps_min > 0.0,
          "eps ladder needs eps_max > eps_min > 0", "eps_min");
    check(cfg.eps_count >= 2, "eps_count must be at least 2", "eps_count");
    check(cfg.h1_min_rungs >= 1, "h1_min_rungs must be at least 1", "h1_min_rungs");
    check(cfg.slope_fraction >= 0.0, "slope_fraction must be nonnegative", "slope_fraction");
    check(cfg.corner_window >= 0, "corner_window must be nonnegative", "corner_window");
    check(cfg.corner_kappa >= 0.0, "corner_kappa must be nonnegative", "corner_kappa");
    check(cfg.corner_zero_fraction >= 0.0, "corner_zero_fraction must be nonnegative",
          "corner_zero_fraction");
    check(cfg.y0 >= 1 && cfg.y0 <= cfg.n_y - 1, "y0 must be a row index in [1, n_y - 1]", "y0");
    check(cfg.drift_window >= 2, "drift_window must be at least 2", "drift_window");
    check(cfg.drift_stride >= 1, "drift_stride must be at least 1", "drift_stride");
    check(cfg.decay_window >= 1, "decay_window must be at least 1", "decay_window");
    check(cfg.decay_factor > 1.0, "decay_factor must exceed 1", "decay_factor");
    check(cfg.plateau_tol > 0.0, "plateau_tol must be positive", "plateau_tol");
    check(!cfg.prefix.empty(), "prefix must not be empty", "prefix");

    FlowProfile flow = [&] {
        try {
            return load_flow(cfg);
        } catch (const std::exception& e) {
            throw ConfigError(e.what(), 0, cfg.flow_file.empty() ? "flow" : "flow_file");
        }
    }();
    if (!(cfg.c > flow.c_star())) {
        std::ostringstream os;
        os << "c = " << cfg.c << " is not admissible for flow '" << flow.name()
           << "': it must exceed c_star = " << flow.c_star();
        throw ConfigError(os.str(), 0, "c");
    }
    const double dx = cfg.x_max / (cfg.n_x - 1);
    const double min_floor = levelset_floor(cfg.c, dx);
    if (cfg.eps_floor > 0.0 && cfg.eps_floor < min_floor * (1.0 - 1e-12)) {
        std::ostringstream os;
        os << "eps_floor = " << cfg.eps_floor << " is below 4 c dx = " << min_floor;
        throw ConfigError(os.str(), 0, "eps_floor");
    }
}

FlowProfile load_flow(const ExperimentConfig& cfg) {
    if (!cfg.flow_file.empty()) {
        return read_flow_csv(cfg.flow_file);
    }
    return FlowProfile::from_name(cfg.flow);
}

ExperimentConfig parse_config(std::string_view text) {
    std::vector<Entry> entries;
    std::optional<Entry> preset_entry;
    std::map<std::string, int, std::less<>> seen;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("expected 'key = value'", line_no);
        }
        Entry e{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))),
                line_no};
        if (e.key.empty()) {
            throw ConfigError("missing key before '='", line_no);
        }
        if (e.value.empty()) {
            throw ConfigError("missing value for '" + e.key + "'", line_no);
        }
        if (const auto it = seen.find(e.key); it != seen.end()) {
            throw ConfigError("duplicate key '" + e.key + "' (first set on line " +
                                  std::to_string(it->second) + ")",
                              line_no);
        }
        seen.emplace(e.key, line_no);
        if (e.key == "preset") {
            preset_entry = e;
        } else {
            entries.push_back(std::move(e));
        }
    }

    ExperimentConfig cfg;
    if (preset_entry) {
        try {
            cfg = preset(preset_entry->value);
        } catch (const ConfigError& err) {
            throw ConfigError(err.what(), preset_entry->line);
        }
    } else {
        cfg = preset("paper-fig5-desk");
    }

    Spacing sp;
    for (const Entry& e : entries) {
        if (e.key == "dx") {
            sp.dx = to_double(e.value, e.key, e.line);
            sp.dx_line = e.line;
        } else if (e.key == "dy") {
            sp.dy = to_double(e.value, e.key, e.line);
            sp.dy_line = e.line;
        } else if (e.key == "n_x") {
            sp.n_x = to_int(e.value, e.key, e.line);
            sp.dx_line = e.line;
        } else if (e.key == "n_y") {
            sp.n_y = to_int(e.value, e.key, e.line);
            sp.dy_line = e.line;
        } else {
            apply(cfg, e);
        }
    }

    // The preset spacing is kept when only x_max changes.
    const double preset_dx = preset(cfg.preset).x_max / (preset(cfg.preset).n_x - 1);
    if (sp.dx && sp.n_x) {
        throw ConfigError("give either dx or n_x, not both", sp.dx_line);
    }
    if (sp.dy && sp.n_y) {
        throw ConfigError("give either dy or n_y, not both", sp.dy_line);
    }
    auto from_spacing = [](double length, double h, const char* key, int line) {
        if (!(h > 0.0)) {
            throw ConfigError(std::string(key) + " must be positive", line);
        }
        const double cells = length / h;
        if (std::abs(cells - std::round(cells)) > 1e-6 * std::max(1.0, cells)) {
            throw ConfigError(std::string(key) + " does not divide the domain into whole cells",
                              line);
        }
        return static_cast<int>(std::lround(cells)) + 1;
    };
    if (sp.n_x) {
        cfg.n_x = *sp.n_x;
    } else {
        cfg.n_x = from_spacing(cfg.x_max, sp.dx.value_or(preset_dx), "dx", sp.dx_line);
    }
    if (sp.n_y) {
        cfg.n_y = *sp.n_y;
    } else if (sp.dy) {
        cfg.n_y = from_spacing(1.0, *sp.dy, "dy", sp.dy_line);
    }

    try {
        validate(cfg);
    } catch (const ConfigError& err) {
        // point at the offending key when the text set it
        auto it = seen.find(err.key());
        if (it == seen.end() && err.key() == "c") {
            it = seen.find(cfg.flow_file.empty() ? "flow" : "flow_file");
        }
        if (err.line() == 0 && it != seen.end()) {
            throw ConfigError(err.what(), it->second, err.key());
        }
        throw;
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void set_parameter(ExperimentConfig& cfg, std::string_view name, double value) {
    if (name == "m") {
        cfg.m = value;
    } else if (name == "c") {
        cfg.c = value;
    } else if (name == "eps_floor") {
        cfg.eps_floor = value;
    } else {
        throw ConfigError("parameter '" + std::string(name) +
                          "' cannot be swept (m, c, eps_floor)");
    }
}

}  // namespace pmwave
