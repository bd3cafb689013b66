#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pmwave/config.hpp"
#include "pmwave/experiment.hpp"
#include "pmwave/io.hpp"
#include "pmwave/kernels.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_numerical = 2;

void print_warnings(const pmwave::RunSummary& s) {
    for (const auto& w : s.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
}

int report(const pmwave::RunSummary& s) {
    print_warnings(s);
    std::cout << pmwave::summary_line(s) << '\n';
    if (s.status == pmwave::RunStatus::numerical_failure) {
        std::cerr << "error: " << s.error << '\n';
        return exit_numerical;
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Traveling-wave simulator for the porous medium equation with shear flow"};
    app.require_subcommand(1);

    std::string config_path;
    std::string snapshot_path;
    std::string param = "m";
    std::vector<double> values;

    auto* run_cmd = app.add_subcommand("run", "Run one experiment");
    run_cmd->add_option("config", config_path, "Configuration file")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "Run one experiment per parameter value");
    sweep_cmd->add_option("config", config_path, "Configuration file")->required();
    sweep_cmd->add_option("--param", param, "Parameter to sweep: m, c or eps_floor")
        ->check(CLI::IsMember({"m", "c", "eps_floor"}));
    sweep_cmd->add_option("--values", values, "Comma-separated values")
        ->required()
        ->delimiter(',');

    auto* analyze_cmd = app.add_subcommand("analyze", "Re-run the field analyses on a snapshot");
    analyze_cmd->add_option("snapshot", snapshot_path, "Snapshot CSV")->required();
    analyze_cmd->add_option("config", config_path, "Configuration file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    std::cerr << "kernel: " << pmwave::kernels::isa_name(pmwave::kernels::active_isa()) << '\n';
    try {
        if (*run_cmd) {
            return report(pmwave::run_experiment(pmwave::load_config(config_path)));
        }
        if (*sweep_cmd) {
            const auto rows = pmwave::sweep(pmwave::load_config(config_path), param, values);
            pmwave::write_sweep_table(std::cout, rows);
            for (const auto& r : rows) {
                print_warnings(r.summary);
                if (!r.message.empty()) {
                    std::cerr << param << " = " << r.value << ": " << r.message << '\n';
                }
            }
            return exit_ok;
        }
        return report(pmwave::analyze_snapshot(snapshot_path, pmwave::load_config(config_path)));
    } catch (const pmwave::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const pmwave::FormatError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return exit_config;
    } catch (const pmwave::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
}
