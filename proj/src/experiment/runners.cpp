#include "qreg/experiment/runners.hpp"

#include "qreg/dynamics.hpp"
#include "qreg/error.hpp"
#include "qreg/experiment/output.hpp"
#include "qreg/liouvillian.hpp"
#include "qreg/observables.hpp"
#include "qreg/version.hpp"

#include <cmath>

namespace qreg::experiment {

namespace {

std::string leaf(const std::string& path) {
    const auto dot = path.rfind('.');
    return dot == std::string::npos ? path : path.substr(dot + 1);
}

std::vector<ExperimentConfig> sweep_points(const ExperimentConfig& cfg) {
    if (!cfg.sweep) {
        return {cfg};
    }
    std::vector<ExperimentConfig> points;
    for (double v : cfg.sweep->values) {
        ExperimentConfig c = cfg;
        c.sweep.reset();
        set_parameter(c, cfg.sweep->parameter, v);
        points.push_back(std::move(c));
    }
    return points;
}

Json base_provenance(const ExperimentConfig& cfg) {
    Json p;
    p["config_hash"] = config_hash(cfg);
    p["library_version"] = kVersion;
    p["config"] = to_json(cfg);
    return p;
}

Trajectory evolve(const ExperimentConfig& cfg, const RegisterModel& model, const BathSpec& bath,
                  const Liouvillian& liouv, const CMatrix& rho0) {
    const auto& s = cfg.solver;
    if (s.method == "rk4") {
        return integrate(liouv, rho0, s.t_end, s.dt, IntegrateOptions{s.stride, false});
    }
    const std::vector<double> grid = output_grid(s);
    if (s.method == "dephasing") {
        return dephasing_solve(model, bath, rho0, grid);
    }
    Trajectory traj;
    traj.meta.solver = "exact";
    traj.times = grid;
    for (double t : grid) {
        traj.states.push_back(propagate_exact(liouv, rho0, t));
    }
    return traj;
}

}  // namespace

void ResultTable::check() const {
    for (const auto& row : rows) {
        if (row.size() != columns.size()) {
            throw Error(ErrorCode::InvalidArgument, "result table is not rectangular");
        }
        for (double v : row) {
            if (!std::isfinite(v)) {
                throw Error(ErrorCode::InvalidArgument, "result table contains a non-finite value");
            }
        }
    }
}

RegisterModel build_register(const ExperimentConfig& cfg) {
    const auto& r = cfg.reg;
    if (r.coupling == "dephasing") {
        RegisterModel m = RegisterModel::dephasing_qubits(r.n, r.field);
        if (r.interaction == "heisenberg_ring") {
            m.interaction = heisenberg_ring(r.n, r.j);
            m.validate();
        }
        return m;
    }
    std::optional<CMatrix> h1;
    if (r.interaction == "heisenberg_ring") {
        h1 = heisenberg_ring(r.n, r.j);
    }
    return RegisterModel::dissipative_qubits(r.n, r.epsilon, std::move(h1));
}

BathSpec build_bath(const ExperimentConfig& cfg) {
    const auto& b = cfg.bath;
    const int n = cfg.reg.n;
    BathSpec spec;
    if (b.model == "cell_limit") {
        spec = cell_limit(n, b.gamma0_minus, b.gamma0_plus, b.delta_ratio);
    } else if (b.model == "replica_symmetric") {
        spec = replica_symmetric(n, b.gamma0_minus, b.gamma0_plus, b.delta_ratio);
    } else if (b.model == "clustered") {
        spec = clustered(b.partition, b.gamma0_minus, b.gamma0_plus, b.delta_ratio);
    } else {
        spec = exponential_decay(n, b.gamma0_minus, b.gamma0_plus, b.xi, b.delta_ratio);
    }
    if (!b.phases.empty()) {
        spec = gauge_phased(spec, Eigen::Map<const RVector>(b.phases.data(), static_cast<Eigen::Index>(b.phases.size())));
    }
    return spec;
}

PureState build_state(const ExperimentConfig& cfg, std::size_t index) {
    const StateConfig& s = cfg.states.at(index);
    const int n = cfg.reg.n;
    const std::string path = "states[" + std::to_string(index) + "]";
    if (!s.amplitudes.empty()) {
        CVector v(static_cast<Eigen::Index>(s.amplitudes.size()));
        for (std::size_t k = 0; k < s.amplitudes.size(); ++k) {
            v(static_cast<Eigen::Index>(k)) = cplx(s.amplitudes[k][0], s.amplitudes[k][1]);
        }
        if (v.norm() == 0.0) {
            throw Error(ErrorCode::ConfigError, path + ".amplitudes: zero vector");
        }
        return PureState::normalized(v);
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    if (s.name == "singlet" || s.name == "triplet") {
        if (n % 2 != 0) {
            throw Error(ErrorCode::ConfigError, path + ": dimer states need an even register size");
        }
        return s.name == "singlet" ? dimer_singlet(n) : dimer_triplet(n);
    }
    if (s.name == "symmetric") {
        return dicke_state(n, n / 2);
    }
    if (s.name == "all_up") {
        return PureState::basis(dim, 0);
    }
    if (s.name == "all_down") {
        return PureState::basis(dim, dim - 1);
    }
    if (s.name == "uniform") {
        return uniform_superposition(n);
    }
    if (s.name == "codeword0" || s.name == "codeword1") {
        if (n != 4) {
            throw Error(ErrorCode::ConfigError, path + ": codewords exist for n = 4 only");
        }
        const auto words = n4_codewords();
        return s.name == "codeword0" ? words.first : words.second;
    }
    throw Error(ErrorCode::ConfigError, path + ": unknown named state '" + s.name + "'");
}

std::vector<double> output_grid(const SolverConfig& solver) {
    if (solver.t_end == 0.0) {
        return {0.0};
    }
    const auto steps = static_cast<long>(std::max(1.0, std::ceil(solver.t_end / solver.dt - 1e-9)));
    const double h = solver.t_end / static_cast<double>(steps);
    std::vector<double> grid{0.0};
    for (long k = 1; k <= steps; ++k) {
        if (k % solver.stride == 0 || k == steps) {
            grid.push_back(static_cast<double>(k) * h);
        }
    }
    return grid;
}

ResultTable run_simulate(const ExperimentConfig& cfg) {
    validate(cfg);
    const std::vector<ExperimentConfig> points = sweep_points(cfg);
    const std::size_t n_states = cfg.states.size();

    struct PointResult {
        std::vector<double> times;
        std::vector<std::vector<double>> fid, ent, energy;  // [state][time]
        std::vector<std::string> warnings;
        double step = 0.0;
    };
    const std::function<PointResult(std::size_t)> run_point = [&](std::size_t p) {
        const ExperimentConfig& c = points[p];
        const RegisterModel model = build_register(c);
        const BathSpec bath = build_bath(c);
        bath.validate();
        const Liouvillian liouv = assemble(model, bath);
        const CMatrix h_r = self_hamiltonian(model);
        PointResult r;
        for (std::size_t s = 0; s < n_states; ++s) {
            const PureState psi = build_state(c, s);
            const Trajectory traj = evolve(c, model, bath, liouv, psi.projector());
            const DecoherenceReport rep = decoherence_report(liouv, traj, psi, h_r);
            r.times = rep.times;
            r.fid.push_back(rep.fidelity_series);
            r.ent.push_back(rep.entropy_series);
            r.energy.push_back(rep.energy_series);
            r.step = traj.meta.step;
            r.warnings.insert(r.warnings.end(), traj.meta.warnings.begin(), traj.meta.warnings.end());
        }
        return r;
    };
    const std::vector<PointResult> results = parallel_map(points.size(), run_point);

    ResultTable table;
    table.columns.push_back("t");
    std::size_t ia = 0;
    std::size_t ib = 0;
    if (cfg.compare) {
        for (std::size_t s = 0; s < n_states; ++s) {
            if (cfg.states[s].name == (*cfg.compare)[0]) {
                ia = s;
            }
            if (cfg.states[s].name == (*cfg.compare)[1]) {
                ib = s;
            }
        }
    }
    for (std::size_t p = 0; p < points.size(); ++p) {
        const std::string suffix =
            cfg.sweep ? "@" + leaf(cfg.sweep->parameter) + "=" + format_number(cfg.sweep->values[p]) : "";
        for (std::size_t s = 0; s < n_states; ++s) {
            const std::string& name = cfg.states[s].name;
            table.columns.push_back("F_" + name + suffix);
            table.columns.push_back("delta_" + name + suffix);
            table.columns.push_back("E_" + name + suffix);
        }
        if (cfg.compare) {
            table.columns.push_back("dF" + suffix);
            table.columns.push_back("ddelta" + suffix);
        }
    }
    const std::vector<double>& times = results.front().times;
    for (std::size_t k = 0; k < times.size(); ++k) {
        std::vector<double> row{times[k]};
        for (const auto& r : results) {
            for (std::size_t s = 0; s < n_states; ++s) {
                row.push_back(r.fid[s][k]);
                row.push_back(r.ent[s][k]);
                row.push_back(r.energy[s][k]);
            }
            if (cfg.compare) {
                row.push_back(r.fid[ia][k] - r.fid[ib][k]);
                row.push_back(r.ent[ib][k] - r.ent[ia][k]);
            }
        }
        table.rows.push_back(std::move(row));
    }
    table.provenance = base_provenance(cfg);
    Json solver;
    solver["method"] = cfg.solver.method;
    solver["effective_step"] = results.front().step;
    Json warnings = Json::array();
    for (const auto& r : results) {
        for (const auto& w : r.warnings) {
            warnings.push_back(w);
        }
    }
    solver["warnings"] = warnings;
    table.provenance["solver"] = solver;
    table.check();
    return table;
}

ResultTable run_tau_sweep(const ExperimentConfig& cfg) {
    validate(cfg);
    if (!cfg.sweep) {
        throw Error(ErrorCode::ConfigError, "sweep: tau_sweep needs a sweep section");
    }
    const std::vector<ExperimentConfig> points = sweep_points(cfg);
    const std::function<std::vector<double>(std::size_t)> run_point = [&](std::size_t p) {
        const ExperimentConfig& c = points[p];
        const RegisterModel model = build_register(c);
        const BathSpec bath = build_bath(c);
        bath.validate();
        const LindbladSet lindblad = canonical_form(model, bath);
        std::vector<double> rates;
        for (std::size_t s = 0; s < c.states.size(); ++s) {
            rates.push_back(pure_decoherence_rate(lindblad, build_state(c, s)));
        }
        return rates;
    };
    const auto results = parallel_map(points.size(), run_point);

    ResultTable table;
    table.columns.push_back(leaf(cfg.sweep->parameter));
    for (const auto& s : cfg.states) {
        table.columns.push_back("rate_" + s.name);
    }
    for (const auto& s : cfg.states) {
        table.columns.push_back("divergent_" + s.name);
    }
    for (std::size_t p = 0; p < points.size(); ++p) {
        std::vector<double> row{cfg.sweep->values[p]};
        for (double r : results[p]) {
            row.push_back(r);
        }
        for (double r : results[p]) {
            row.push_back(r < kDivergentRate ? 1.0 : 0.0);
        }
        table.rows.push_back(std::move(row));
    }
    table.provenance = base_provenance(cfg);
    table.provenance["rate_definition"] = "first-order decoherence rate 1/tau_1 of each pure state";
    table.check();
    return table;
}

CodesRun run_codes(const ExperimentConfig& cfg) {
    validate(cfg);
    const RegisterModel model = build_register(cfg);
    const BathSpec bath = build_bath(cfg);
    bath.validate();
    const Liouvillian liouv = assemble(model, bath);

    CodesRun out;
    if (cfg.codes.construction == "null") {
        out.code = null_code(liouv.lindblad());
    } else {
        out.code = dephasing_cluster_code(cfg.reg.n, cfg.codes.cluster_size, cfg.codes.target_zspin);
    }
    CodeSubspace& code = out.code;
    const Eigen::Index k = code.dimension();
    if (k > 0 && code.labels.empty()) {
        for (const auto& t : liouv.lindblad().terms) {
            code.labels.push_back((code.basis.adjoint() * t.op * code.basis).trace() / static_cast<double>(k));
        }
    }
    const NoiselessCheck check = check_noiseless(code, liouv);
    code.kind = (k > 0 && check.noiseless) ? CodeKind::Noiseless : CodeKind::SubDecoherent;

    ResultTable& table = out.table;
    table.columns = {"column", "decoherence_rate", "eigen_residual"};
    const auto& terms = liouv.lindblad().terms;
    for (Eigen::Index c = 0; c < k; ++c) {
        const CVector v = code.basis.col(c);
        double residual = 0.0;
        for (std::size_t m = 0; m < terms.size(); ++m) {
            residual = std::max(residual, (terms[m].op * v - code.labels[m] * v).norm());
        }
        const double rate = pure_decoherence_rate(liouv.lindblad(), PureState::normalized(v));
        table.rows.push_back({static_cast<double>(c), rate, residual});
    }

    table.provenance = base_provenance(cfg);
    Json summary;
    summary["dimension"] = k;
    Json labels = Json::array();
    for (const auto& l : code.labels) {
        labels.push_back({l.real(), l.imag()});
    }
    summary["labels"] = labels;
    summary["kind"] = to_string(code.kind);
    summary["noiseless"] = k > 0 && check.noiseless;
    summary["eigen_residual"] = check.eigen_residual;
    summary["leakage"] = check.leakage;
    if (!code.note.empty()) {
        summary["note"] = code.note;
    }
    if (cfg.codes.construction == "null" && cfg.reg.coupling == "dissipative" && cfg.reg.n % 2 == 0) {
        summary["singlet_multiplicity"] = multiplicity(cfg.reg.n, 0.0);
    }
    table.provenance["code"] = summary;
    table.check();
    return out;
}

}  // namespace qreg::experiment
