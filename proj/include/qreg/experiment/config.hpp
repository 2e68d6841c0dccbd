// config.hpp — experiment description read from and written to JSON.
#pragma once

#include "json.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qreg::experiment {

using Json = nlohmann::ordered_json;

struct RegisterConfig {
    int n = 2;
    double epsilon = 1.0;
    std::string coupling = "dissipative";  // "dissipative" (A = σ⁻) or "dephasing" (A = σᶻ)
    double field = 0.0;                     // H^C = field·σᶻ for dephasing registers
    std::string interaction = "none";       // "none" or "heisenberg_ring"
    double j = 0.0;
};

struct BathConfig {
    std::string model = "exponential";  // cell_limit | replica_symmetric | clustered | exponential
    double gamma0_minus = 0.1;
    double gamma0_plus = 0.0;
    double xi = 1.0;
    std::vector<std::vector<int>> partition;
    std::vector<double> phases;  // empty: no gauge phases
    double delta_ratio = 0.0;
};

/// Named preparation ("singlet", "triplet", "symmetric", "all_up", "all_down",
/// "uniform", "codeword0", "codeword1") or explicit amplitudes.
struct StateConfig {
    std::string name;
    std::vector<std::array<double, 2>> amplitudes;  // (re, im) pairs; empty for named states
};

struct SolverConfig {
    double dt = 0.05;
    double t_end = 50.0;
    int stride = 10;
    std::string method = "rk4";  // rk4 | exact | dephasing
};

struct SweepConfig {
    std::string parameter;  // e.g. "bath.xi"
    std::vector<double> values;
};

struct CodesConfig {
    std::string construction = "null";  // null | dephasing_cluster
    int cluster_size = 2;
    double target_zspin = 0.0;
};

struct OutputConfig {
    std::string directory = "out";
    std::vector<std::string> formats{"csv", "json", "gnuplot"};
};

struct ExperimentConfig {
    std::string name = "experiment";
    std::string kind = "simulate";  // simulate | tau_sweep | codes
    RegisterConfig reg;
    BathConfig bath;
    std::vector<StateConfig> states;
    std::optional<std::array<std::string, 2>> compare;  // (a, b): dF = F_a − F_b, ddelta = δ_b − δ_a
    SolverConfig solver;
    std::optional<SweepConfig> sweep;
    CodesConfig codes;
    OutputConfig output;
};

/// Parses and validates. Throws Error(ConfigError) naming the offending field path.
ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::string& path);
Json to_json(const ExperimentConfig& cfg);

/// Checks ranges and cross-field constraints. Throws Error(ConfigError).
void validate(const ExperimentConfig& cfg);

/// Sets a sweepable scalar by path ("bath.xi", "bath.gamma0_minus",
/// "bath.gamma0_plus", "bath.delta_ratio", "register.j", "register.epsilon",
/// "register.field"). Throws Error(ConfigError) for other paths.
void set_parameter(ExperimentConfig& cfg, const std::string& path, double value);

/// FNV-1a hash of the canonical JSON dump, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace qreg::experiment
