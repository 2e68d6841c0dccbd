#include "qreg/experiment/config.hpp"

#include "qreg/error.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

namespace qreg::experiment {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::ConfigError, path + ": " + what);
}

// Reads fields of one JSON object, remembering which keys were consumed so
// that typos surface as errors instead of silently using defaults.
class Section {
public:
    Section(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            fail(path_, "expected an object");
        }
    }

    std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    bool has(const std::string& key) const { return j_.contains(key); }

    const Json& raw(const std::string& key) {
        used_.insert(key);
        return j_.at(key);
    }

    template <typename T>
    void read(const std::string& key, T& out) {
        if (!has(key)) {
            return;
        }
        try {
            out = raw(key).template get<T>();
        } catch (const nlohmann::json::exception& e) {
            fail(at(key), std::string("wrong type (") + e.what() + ")");
        }
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!used_.count(it.key())) {
                fail(at(it.key()), "unknown field");
            }
        }
    }

private:
    const Json& j_;
    std::string path_;
    std::set<std::string> used_;
};

StateConfig parse_state(const Json& j, const std::string& path) {
    StateConfig s;
    if (j.is_string()) {
        s.name = j.get<std::string>();
        return s;
    }
    Section sec(j, path);
    sec.read("name", s.name);
    if (sec.has("amplitudes")) {
        const Json& amps = sec.raw("amplitudes");
        if (!amps.is_array()) {
            fail(sec.at("amplitudes"), "expected a list of [re, im] pairs");
        }
        for (std::size_t k = 0; k < amps.size(); ++k) {
            const Json& a = amps[k];
            if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
                fail(sec.at("amplitudes") + "[" + std::to_string(k) + "]", "expected [re, im]");
            }
            s.amplitudes.push_back({a[0].get<double>(), a[1].get<double>()});
        }
    }
    sec.finish();
    return s;
}

Json state_to_json(const StateConfig& s) {
    if (s.amplitudes.empty()) {
        return s.name;
    }
    Json j;
    j["name"] = s.name;
    Json amps = Json::array();
    for (const auto& a : s.amplitudes) {
        amps.push_back({a[0], a[1]});
    }
    j["amplitudes"] = amps;
    return j;
}

const std::set<std::string> kNamedStates{"singlet", "triplet",  "symmetric", "all_up",
                                         "all_down", "uniform", "codeword0", "codeword1"};

}  // namespace

ExperimentConfig parse_config(const Json& j) {
    ExperimentConfig cfg;
    Section top(j, "");
    top.read("name", cfg.name);
    top.read("kind", cfg.kind);

    if (top.has("register")) {
        Section s(top.raw("register"), "register");
        s.read("n", cfg.reg.n);
        s.read("epsilon", cfg.reg.epsilon);
        s.read("coupling", cfg.reg.coupling);
        s.read("field", cfg.reg.field);
        s.read("interaction", cfg.reg.interaction);
        s.read("j", cfg.reg.j);
        s.finish();
    }
    if (top.has("bath")) {
        Section s(top.raw("bath"), "bath");
        s.read("model", cfg.bath.model);
        s.read("gamma0_minus", cfg.bath.gamma0_minus);
        s.read("gamma0_plus", cfg.bath.gamma0_plus);
        s.read("xi", cfg.bath.xi);
        s.read("partition", cfg.bath.partition);
        s.read("phases", cfg.bath.phases);
        s.read("delta_ratio", cfg.bath.delta_ratio);
        s.finish();
    }
    if (top.has("states")) {
        const Json& states = top.raw("states");
        if (!states.is_array()) {
            fail("states", "expected a list");
        }
        for (std::size_t k = 0; k < states.size(); ++k) {
            cfg.states.push_back(parse_state(states[k], "states[" + std::to_string(k) + "]"));
        }
    }
    if (top.has("compare")) {
        std::vector<std::string> pair;
        top.read("compare", pair);
        if (pair.size() != 2) {
            fail("compare", "expected two state names");
        }
        cfg.compare = std::array<std::string, 2>{pair[0], pair[1]};
    }
    if (top.has("solver")) {
        Section s(top.raw("solver"), "solver");
        s.read("dt", cfg.solver.dt);
        s.read("t_end", cfg.solver.t_end);
        s.read("stride", cfg.solver.stride);
        s.read("method", cfg.solver.method);
        s.finish();
    }
    if (top.has("sweep") && !j.at("sweep").is_null()) {
        Section s(top.raw("sweep"), "sweep");
        SweepConfig sw;
        s.read("parameter", sw.parameter);
        s.read("values", sw.values);
        s.finish();
        cfg.sweep = sw;
    } else if (top.has("sweep")) {
        top.raw("sweep");
    }
    if (top.has("codes")) {
        Section s(top.raw("codes"), "codes");
        s.read("construction", cfg.codes.construction);
        s.read("cluster_size", cfg.codes.cluster_size);
        s.read("target_zspin", cfg.codes.target_zspin);
        s.finish();
    }
    if (top.has("output")) {
        Section s(top.raw("output"), "output");
        s.read("directory", cfg.output.directory);
        s.read("formats", cfg.output.formats);
        s.finish();
    }
    top.finish();
    validate(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ConfigError, "cannot open config file " + path);
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ConfigError, path + ": " + e.what());
    }
    return parse_config(j);
}

Json to_json(const ExperimentConfig& cfg) {
    Json j;
    j["name"] = cfg.name;
    j["kind"] = cfg.kind;
    j["register"] = {{"n", cfg.reg.n},
                     {"epsilon", cfg.reg.epsilon},
                     {"coupling", cfg.reg.coupling},
                     {"field", cfg.reg.field},
                     {"interaction", cfg.reg.interaction},
                     {"j", cfg.reg.j}};
    j["bath"] = {{"model", cfg.bath.model},
                 {"gamma0_minus", cfg.bath.gamma0_minus},
                 {"gamma0_plus", cfg.bath.gamma0_plus},
                 {"xi", cfg.bath.xi},
                 {"partition", cfg.bath.partition},
                 {"phases", cfg.bath.phases},
                 {"delta_ratio", cfg.bath.delta_ratio}};
    Json states = Json::array();
    for (const auto& s : cfg.states) {
        states.push_back(state_to_json(s));
    }
    j["states"] = states;
    if (cfg.compare) {
        j["compare"] = {(*cfg.compare)[0], (*cfg.compare)[1]};
    }
    j["solver"] = {{"dt", cfg.solver.dt},
                   {"t_end", cfg.solver.t_end},
                   {"stride", cfg.solver.stride},
                   {"method", cfg.solver.method}};
    if (cfg.sweep) {
        j["sweep"] = {{"parameter", cfg.sweep->parameter}, {"values", cfg.sweep->values}};
    }
    j["codes"] = {{"construction", cfg.codes.construction},
                  {"cluster_size", cfg.codes.cluster_size},
                  {"target_zspin", cfg.codes.target_zspin}};
    j["output"] = {{"directory", cfg.output.directory}, {"formats", cfg.output.formats}};
    return j;
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.name.empty() || cfg.name.find_first_of("/\\") != std::string::npos) {
        fail("name", "must be a non-empty file stem without path separators");
    }
    if (cfg.kind != "simulate" && cfg.kind != "tau_sweep" && cfg.kind != "codes") {
        fail("kind", "must be one of simulate, tau_sweep, codes (got '" + cfg.kind + "')");
    }
    if (cfg.reg.n < 1 || cfg.reg.n > 8) {
        fail("register.n", "must be in 1..8");
    }
    if (!(cfg.reg.epsilon >= 0.0)) {
        fail("register.epsilon", "must be >= 0");
    }
    if (cfg.reg.coupling != "dissipative" && cfg.reg.coupling != "dephasing") {
        fail("register.coupling", "must be 'dissipative' or 'dephasing'");
    }
    if (cfg.reg.interaction != "none" && cfg.reg.interaction != "heisenberg_ring") {
        fail("register.interaction", "must be 'none' or 'heisenberg_ring'");
    }
    if (cfg.reg.interaction == "heisenberg_ring" && cfg.reg.n < 3) {
        fail("register.interaction", "a Heisenberg ring needs n >= 3");
    }

    const auto& b = cfg.bath;
    if (b.model != "cell_limit" && b.model != "replica_symmetric" && b.model != "clustered" &&
        b.model != "exponential") {
        fail("bath.model", "must be one of cell_limit, replica_symmetric, clustered, exponential");
    }
    if (!(b.gamma0_minus >= 0.0)) {
        fail("bath.gamma0_minus", "must be >= 0");
    }
    if (!(b.gamma0_plus >= 0.0)) {
        fail("bath.gamma0_plus", "must be >= 0");
    }
    if (b.gamma0_minus < b.gamma0_plus) {
        fail("bath.gamma0_minus",
             "must be >= bath.gamma0_plus: positivity ordering Gamma(-) >= Gamma(+) (emission dominates absorption)");
    }
    if (b.model == "exponential" && !(b.xi > 0.0)) {
        fail("bath.xi", "correlation length must be > 0");
    }
    if (b.model == "clustered") {
        if (b.partition.empty()) {
            fail("bath.partition", "required for the clustered model");
        }
        std::vector<int> seen(static_cast<std::size_t>(cfg.reg.n), 0);
        for (const auto& c : b.partition) {
            for (int i : c) {
                if (i < 0 || i >= cfg.reg.n || seen[static_cast<std::size_t>(i)]++) {
                    fail("bath.partition", "must cover 0..n-1 exactly once");
                }
            }
        }
        for (int s : seen) {
            if (!s) {
                fail("bath.partition", "must cover 0..n-1 exactly once");
            }
        }
    }
    if (!b.phases.empty() && static_cast<int>(b.phases.size()) != cfg.reg.n) {
        fail("bath.phases", "needs one phase per cell");
    }

    if (cfg.kind != "codes" && cfg.states.empty()) {
        fail("states", "at least one initial state is required");
    }
    const auto dim = std::int64_t{1} << cfg.reg.n;
    for (std::size_t k = 0; k < cfg.states.size(); ++k) {
        const auto& s = cfg.states[k];
        const std::string path = "states[" + std::to_string(k) + "]";
        if (s.name.empty() || s.name.find_first_of(",\"\r\n ") != std::string::npos) {
            fail(path, "state name must be non-empty and free of commas, quotes and spaces");
        }
        if (s.amplitudes.empty()) {
            if (!kNamedStates.count(s.name)) {
                fail(path, "unknown named state '" + s.name + "'");
            }
        } else if (static_cast<std::int64_t>(s.amplitudes.size()) != dim) {
            fail(path + ".amplitudes", "needs 2^n = " + std::to_string(dim) + " entries");
        }
    }
    if (cfg.compare) {
        for (int k = 0; k < 2; ++k) {
            bool found = false;
            for (const auto& s : cfg.states) {
                found = found || s.name == (*cfg.compare)[static_cast<std::size_t>(k)];
            }
            if (!found) {
                fail("compare", "'" + (*cfg.compare)[static_cast<std::size_t>(k)] + "' is not among states");
            }
        }
    }

    if (!(cfg.solver.dt > 0.0)) {
        fail("solver.dt", "must be > 0");
    }
    if (!(cfg.solver.t_end >= 0.0)) {
        fail("solver.t_end", "must be >= 0");
    }
    if (cfg.solver.stride < 1) {
        fail("solver.stride", "must be >= 1");
    }
    if (cfg.solver.method != "rk4" && cfg.solver.method != "exact" && cfg.solver.method != "dephasing") {
        fail("solver.method", "must be one of rk4, exact, dephasing");
    }
    if (cfg.solver.method == "dephasing" && cfg.reg.coupling != "dephasing") {
        fail("solver.method", "the dephasing solver needs register.coupling = 'dephasing'");
    }

    if (cfg.sweep) {
        if (cfg.sweep->values.empty()) {
            fail("sweep.values", "must not be empty");
        }
        ExperimentConfig probe = cfg;
        probe.sweep.reset();
        for (double v : cfg.sweep->values) {
            set_parameter(probe, cfg.sweep->parameter, v);
        }
        if (cfg.sweep->parameter == "bath.xi") {
            for (double v : cfg.sweep->values) {
                if (!(v > 0.0)) {
                    fail("sweep.values", "correlation lengths must be > 0");
                }
            }
        }
    }
    if (cfg.kind == "tau_sweep" && !cfg.sweep) {
        fail("sweep", "tau_sweep needs a sweep section");
    }
    if (cfg.codes.construction != "null" && cfg.codes.construction != "dephasing_cluster") {
        fail("codes.construction", "must be 'null' or 'dephasing_cluster'");
    }
    for (const auto& f : cfg.output.formats) {
        if (f != "csv" && f != "json" && f != "gnuplot") {
            fail("output.formats", "unknown format '" + f + "'");
        }
    }
}

void set_parameter(ExperimentConfig& cfg, const std::string& path, double value) {
    if (path == "bath.xi") {
        cfg.bath.xi = value;
    } else if (path == "bath.gamma0_minus") {
        cfg.bath.gamma0_minus = value;
    } else if (path == "bath.gamma0_plus") {
        cfg.bath.gamma0_plus = value;
    } else if (path == "bath.delta_ratio") {
        cfg.bath.delta_ratio = value;
    } else if (path == "register.j") {
        cfg.reg.j = value;
    } else if (path == "register.epsilon") {
        cfg.reg.epsilon = value;
    } else if (path == "register.field") {
        cfg.reg.field = value;
    } else {
        fail("sweep.parameter", "'" + path + "' is not sweepable");
    }
}

std::string config_hash(const ExperimentConfig& cfg) {
    const std::string text = to_json(cfg).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

}  // namespace qreg::experiment
