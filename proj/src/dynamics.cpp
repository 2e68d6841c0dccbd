#include "qreg/dynamics.hpp"

#include "qreg/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace qreg {

namespace {

constexpr double kTraceDrift = 1e-6;
constexpr double kStabilityBound = 0.1;

double spectral_norm(const CMatrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

void tidy(CMatrix& rho) {
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = rho.trace().real();
    rho /= tr;
}

struct Rk4Result {
    std::vector<double> times;
    std::vector<CMatrix> states;
    double step = 0.0;
};

Rk4Result run_rk4(const Liouvillian& liouv, const CMatrix& rho0, double t_end, double dt, int stride) {
    const auto steps = static_cast<long>(std::max(1.0, std::ceil(t_end / dt - 1e-9)));
    const double h = t_end / static_cast<double>(steps);
    Rk4Result out;
    out.step = h;
    CMatrix rho = rho0;
    out.times.push_back(0.0);
    out.states.push_back(rho);
    for (long k = 1; k <= steps; ++k) {
        const CMatrix k1 = qreg::apply(liouv, rho);
        const CMatrix k2 = qreg::apply(liouv, rho + 0.5 * h * k1);
        const CMatrix k3 = qreg::apply(liouv, rho + 0.5 * h * k2);
        const CMatrix k4 = qreg::apply(liouv, rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const cplx tr = rho.trace();
        if (!rho.allFinite() || std::abs(tr - 1.0) > kTraceDrift) {
            throw Error(ErrorCode::UnstableStep, "trace drifted to " + std::to_string(tr.real()) + " at step " +
                                                     std::to_string(k) + " (dt = " + std::to_string(h) + ")");
        }
        tidy(rho);
        if (k % stride == 0 || k == steps) {
            out.times.push_back(static_cast<double>(k) * h);
            out.states.push_back(rho);
        }
    }
    return out;
}

// Per-cell eigen-frame of a Hermitian cell operator: identity when A is
// already diagonal, otherwise eigenvectors in ascending eigenvalue order.
struct CellFrame {
    CMatrix v;
    RVector values;
};

CellFrame cell_frame(const CMatrix& a) {
    const Eigen::Index d = a.rows();
    if (!is_hermitian(a, 1e-10)) {
        throw Error(ErrorCode::InvalidModel, "dephasing solver needs a Hermitian cell operator");
    }
    CMatrix off = a;
    off.diagonal().setZero();
    if (off.norm() <= 1e-12 * std::max(1.0, a.norm())) {
        return {CMatrix::Identity(d, d), a.diagonal().real()};
    }
    // herm_eig is descending; reverse for ascending order. Degenerate
    // eigenvalues keep the solver's column order.
    const HermEig e = herm_eig(a);
    return {e.vectors.rowwise().reverse(), e.values.reverse()};
}

}  // namespace

void require_density_matrix(const CMatrix& rho, Eigen::Index dim) {
    if (rho.rows() != dim || rho.cols() != dim) {
        throw Error(ErrorCode::DimensionMismatch, "density matrix must be " + std::to_string(dim) + "x" +
                                                      std::to_string(dim));
    }
    if (!is_hermitian(rho, 1e-9)) {
        throw Error(ErrorCode::NotHermitian, "density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - 1.0) > 1e-8) {
        throw Error(ErrorCode::InvalidArgument, "density matrix must have unit trace");
    }
}

Trajectory integrate(const Liouvillian& liouv, const CMatrix& rho0, double t_end, double dt,
                     const IntegrateOptions& opts) {
    require_density_matrix(rho0, liouv.dimension());
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw Error(ErrorCode::InvalidArgument, "dt must be > 0");
    }
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
        throw Error(ErrorCode::InvalidArgument, "t_end must be >= 0");
    }
    if (opts.stride < 1) {
        throw Error(ErrorCode::InvalidArgument, "stride must be >= 1");
    }
    Trajectory traj;
    traj.meta.solver = "rk4";
    CMatrix start = rho0;
    tidy(start);
    if (t_end == 0.0) {
        traj.times = {0.0};
        traj.states = {start};
        traj.meta.step = dt;
        return traj;
    }

    double scale = spectral_norm(liouv.hamiltonian());
    for (const auto& t : liouv.lindblad().terms) {
        const double n = spectral_norm(t.op);
        scale += t.rate * n * n;
    }
    if (dt * scale > kStabilityBound) {
        traj.meta.warnings.push_back("dt*(|H| + sum rate*|L|^2) = " + std::to_string(dt * scale) +
                                     " exceeds 0.1; consider a smaller step");
    }

    Rk4Result run = run_rk4(liouv, start, t_end, dt, opts.stride);
    traj.times = std::move(run.times);
    traj.states = std::move(run.states);
    traj.meta.step = run.step;
    if (opts.estimate_error) {
        const Rk4Result fine = run_rk4(liouv, start, t_end, 0.5 * run.step, std::numeric_limits<int>::max());
        traj.meta.error_estimate = (fine.states.back() - traj.states.back()).norm();
    }
    return traj;
}

CMatrix propagate_exact(const Liouvillian& liouv, const CMatrix& rho0, double t) {
    const Eigen::Index d = liouv.dimension();
    if (d > kMaxSuperoperatorDim) {
        throw Error(ErrorCode::TooLarge, "exact propagation needs D <= 64, got D = " + std::to_string(d));
    }
    if (rho0.rows() != d || rho0.cols() != d) {
        throw Error(ErrorCode::DimensionMismatch, "density matrix does not match the Liouvillian");
    }
    if (t == 0.0) {
        return rho0;
    }
    const CMatrix m = superoperator_matrix(liouv);
    const CMatrix evolved = expm_action(m, t, vec(rho0));
    return unvec(evolved.col(0), d);
}

Trajectory dephasing_solve(const RegisterModel& model, const BathSpec& spec, const CMatrix& rho0,
                           const std::vector<double>& times) {
    const Eigen::Index dim = model.dimension();
    require_density_matrix(rho0, dim);
    const CellFrame frame = cell_frame(model.cell_op);
    const int n = model.n_cells;
    const int d = model.cell_dim;

    CMatrix v_all = CMatrix::Identity(1, 1);
    for (int i = 0; i < n; ++i) {
        v_all = kron(v_all, frame.v);
    }

    CMatrix h = self_hamiltonian(model) + lamb_shift(model, spec);
    const CMatrix h_alpha = v_all.adjoint() * h * v_all;
    CMatrix off = h_alpha;
    off.diagonal().setZero();
    if (off.norm() > 1e-10 * std::max(1.0, h.norm())) {
        throw Error(ErrorCode::NotSimultaneouslyDiagonalizable,
                    "register Hamiltonian is not diagonal in the eigenbasis of the cell operators (off-diagonal "
                    "norm " + std::to_string(off.norm()) + ")");
    }
    const RVector energy = h_alpha.diagonal().real();

    // a(α)_i: eigenvalue of A on cell i for product state α (cell 0 most significant).
    Eigen::MatrixXd a(dim, n);
    for (Eigen::Index alpha = 0; alpha < dim; ++alpha) {
        Eigen::Index rest = alpha;
        for (int i = n - 1; i >= 0; --i) {
            a(alpha, i) = frame.values(rest % d);
            rest /= d;
        }
    }
    const Eigen::MatrixXd re = (spec.gamma_minus + spec.gamma_plus).real();
    const Eigen::MatrixXd im = (spec.gamma_minus - spec.gamma_plus).imag();

    CMatrix w(dim, dim);
    for (Eigen::Index p = 0; p < dim; ++p) {
        for (Eigen::Index q = 0; q < dim; ++q) {
            const Eigen::VectorXd x = (a.row(p) - a.row(q)).transpose();
            const double damp = -0.5 * x.dot(re * x);
            const double shift = a.row(p).dot(im * a.row(q).transpose());
            w(p, q) = cplx(damp, -(energy(p) - energy(q)) + shift);
        }
    }

    const CMatrix r = v_all.adjoint() * rho0 * v_all;
    Trajectory traj;
    traj.meta.solver = "dephasing";
    traj.times = times;
    traj.states.reserve(times.size());
    for (double t : times) {
        if (!(t >= 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "dephasing_solve times must be >= 0");
        }
        const CMatrix rt = r.cwiseProduct((w * t).array().exp().matrix());
        traj.states.push_back(v_all * rt * v_all.adjoint());
    }
    return traj;
}

}  // namespace qreg
