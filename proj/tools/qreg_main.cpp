// qreg — command-line front end for register decoherence experiments.
//
// Exit status: 0 success, 1 I/O failure, 2 configuration error, 3 numerical failure.

#include "qreg/error.hpp"
#include "qreg/experiment/config.hpp"
#include "qreg/experiment/output.hpp"
#include "qreg/experiment/presets.hpp"
#include "qreg/experiment/runners.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace qreg::experiment;

enum ExitCode { kOk = 0, kIo = 1, kConfig = 2, kNumerical = 3 };

struct CommonOptions {
    std::string config_path;
    std::string preset_name;
    std::string out_dir;
    std::optional<double> dt;
    std::optional<double> t_end;
};

void add_common(CLI::App* sub, CommonOptions& o) {
    auto* cfg = sub->add_option("--config", o.config_path, "experiment configuration (JSON)");
    auto* pre = sub->add_option("--preset", o.preset_name, "built-in experiment (fig1..fig5, codes-n4, codes-dephasing)");
    cfg->excludes(pre);
    sub->add_option("--out", o.out_dir, "output directory (overrides output.directory)");
    sub->add_option("--dt", o.dt, "integration step override");
    sub->add_option("--t-end", o.t_end, "final time override");
}

ExperimentConfig resolve(const CommonOptions& o, const std::string& kind) {
    if (o.config_path.empty() == o.preset_name.empty()) {
        throw qreg::Error(qreg::ErrorCode::ConfigError, "exactly one of --config or --preset is required");
    }
    ExperimentConfig cfg = o.preset_name.empty() ? load_config(o.config_path) : preset(o.preset_name);
    if (cfg.kind != kind) {
        throw qreg::Error(qreg::ErrorCode::ConfigError,
                          "kind: experiment '" + cfg.name + "' is a " + cfg.kind + " experiment, not " + kind);
    }
    if (!o.out_dir.empty()) {
        cfg.output.directory = o.out_dir;
    }
    if (o.dt) {
        cfg.solver.dt = *o.dt;
    }
    if (o.t_end) {
        cfg.solver.t_end = *o.t_end;
    }
    validate(cfg);
    return cfg;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(const std::vector<std::filesystem::path>& written) {
    for (const auto& p : written) {
        std::cout << p.string() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Correlated-bath decoherence of quantum registers"};
    app.require_subcommand(1);

    CommonOptions sim_opts;
    CommonOptions tau_opts;
    CommonOptions code_opts;
    auto* sim = app.add_subcommand("simulate", "integrate the master equation and record F, delta, E");
    auto* tau = app.add_subcommand("tau-sweep", "first-order decoherence rates over a parameter sweep");
    auto* codes = app.add_subcommand("codes", "construct and verify a decoherence-free code");
    add_common(sim, sim_opts);
    add_common(tau, tau_opts);
    add_common(codes, code_opts);

    std::string show_name;
    auto* show = app.add_subcommand("show-preset", "print a built-in configuration as JSON");
    show->add_option("name", show_name, "preset name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        const auto start = std::chrono::steady_clock::now();
        if (show->parsed()) {
            std::cout << to_json(preset(show_name)).dump(2) << "\n";
            return kOk;
        }
        if (sim->parsed()) {
            const ExperimentConfig cfg = resolve(sim_opts, "simulate");
            const ResultTable table = run_simulate(cfg);
            report(emit_outputs(table, cfg, cfg.output.directory, seconds_since(start)));
            for (const auto& w : table.provenance["solver"]["warnings"]) {
                std::cerr << "warning: " << w.get<std::string>() << "\n";
            }
        } else if (tau->parsed()) {
            const ExperimentConfig cfg = resolve(tau_opts, "tau_sweep");
            const ResultTable table = run_tau_sweep(cfg);
            report(emit_outputs(table, cfg, cfg.output.directory, seconds_since(start)));
        } else if (codes->parsed()) {
            const ExperimentConfig cfg = resolve(code_opts, "codes");
            const CodesRun run = run_codes(cfg);
            auto written = emit_outputs(run.table, cfg, cfg.output.directory, seconds_since(start));
            const auto basis_path = std::filesystem::path(cfg.output.directory) / (cfg.name + "_basis.csv");
            std::ofstream f(basis_path, std::ios::binary);
            if (!f) {
                throw qreg::Error(qreg::ErrorCode::IoError, "cannot write " + basis_path.string());
            }
            write_code_basis_csv(run.code, f);
            written.push_back(basis_path);
            report(written);
            const auto& summary = run.table.provenance["code"];
            std::cerr << "code dimension " << summary["dimension"] << ", " << summary["kind"].get<std::string>()
                      << " (leakage " << summary["leakage"] << ", eigen residual " << summary["eigen_residual"]
                      << ")\n";
        }
        return kOk;
    } catch (const qreg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
        case qreg::ErrorCode::ConfigError: return kConfig;
        case qreg::ErrorCode::IoError: return kIo;
        default: return kNumerical;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
}
