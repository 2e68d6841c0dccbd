#include "qreg/experiment/presets.hpp"

#include "qreg/error.hpp"

#include <cmath>

namespace qreg::experiment {

namespace {

// ε = 1, T = 0 (Γ⁺ = 0) and Γ_ij = 0.1·exp(−|i−j|/ξ) unless stated otherwise.
ExperimentConfig figure_base(const std::string& name, int n) {
    ExperimentConfig c;
    c.name = name;
    c.kind = "simulate";
    c.reg.n = n;
    c.reg.epsilon = 1.0;
    c.bath.model = "exponential";
    c.bath.gamma0_minus = 0.1;
    c.bath.gamma0_plus = 0.0;
    c.bath.xi = 1.0;
    return c;
}

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> v;
    for (int k = 0; k < points; ++k) {
        const double x = std::log(lo) + (std::log(hi) - std::log(lo)) * k / (points - 1);
        // Round to 12 significant digits so the JSON copy reads cleanly.
        const double e = std::exp(x);
        const double scale = std::pow(10.0, 11 - static_cast<int>(std::floor(std::log10(e))));
        v.push_back(std::round(e * scale) / scale);
    }
    return v;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig1", "fig2", "fig3", "fig4", "fig5", "codes-n4", "codes-dephasing"};
}

ExperimentConfig preset(const std::string& name) {
    if (name == "fig1") {
        ExperimentConfig c = figure_base(name, 4);
        c.kind = "tau_sweep";
        c.states = {{"singlet", {}}, {"symmetric", {}}};
        c.sweep = SweepConfig{"bath.xi", log_grid(0.05, 1.0, 20)};
        return c;
    }
    if (name == "fig2" || name == "fig3") {
        ExperimentConfig c = figure_base(name, 2);
        c.states = {{"singlet", {}}, {"triplet", {}}};
        c.solver = {0.05, 50.0, 10, "rk4"};
        return c;
    }
    if (name == "fig4" || name == "fig5") {
        ExperimentConfig c = figure_base(name, 4);
        c.states = {{"singlet", {}}, {"symmetric", {}}};
        c.compare = std::array<std::string, 2>{"singlet", "symmetric"};
        c.solver = {0.01, 10.0, 10, "rk4"};
        c.sweep = SweepConfig{"bath.xi", {1.0, 10.0, 100.0}};
        return c;
    }
    if (name == "codes-n4") {
        ExperimentConfig c;
        c.name = name;
        c.kind = "codes";
        c.reg.n = 4;
        c.reg.epsilon = 1.0;
        c.reg.interaction = "heisenberg_ring";
        c.reg.j = 1.0;
        c.bath.model = "replica_symmetric";
        c.bath.gamma0_minus = 0.1;
        c.bath.gamma0_plus = 0.02;
        c.codes.construction = "null";
        return c;
    }
    if (name == "codes-dephasing") {
        ExperimentConfig c;
        c.name = name;
        c.kind = "codes";
        c.reg.n = 4;
        c.reg.epsilon = 0.0;
        c.reg.coupling = "dephasing";
        c.bath.model = "clustered";
        c.bath.partition = {{0, 1}, {2, 3}};
        c.bath.gamma0_minus = 0.1;
        c.bath.gamma0_plus = 0.1;
        c.codes.construction = "dephasing_cluster";
        c.codes.cluster_size = 2;
        return c;
    }
    throw Error(ErrorCode::ConfigError, "preset: unknown name '" + name + "'");
}

}  // namespace qreg::experiment
