#include "qreg/observables.hpp"

#include "qreg/error.hpp"

#include <cmath>
#include <string>

namespace qreg {

double fidelity(const CMatrix& rho, const PureState& psi0) {
    const CVector& v = psi0.amplitudes();
    if (rho.rows() != v.size() || rho.cols() != v.size()) {
        throw Error(ErrorCode::DimensionMismatch, "fidelity: state and density matrix dimensions differ");
    }
    const cplx f = v.dot(rho * v);
    if (std::abs(f.imag()) > 1e-10) {
        throw Error(ErrorCode::InvalidArgument, "fidelity has imaginary part " + std::to_string(f.imag()));
    }
    return f.real();
}

double linear_entropy(const CMatrix& rho) {
    require_square(rho, "density matrix");
    // tr ρ² = Σ ρ_ij ρ_ji, which for Hermitian ρ is Σ |ρ_ij|².
    const cplx tr2 = (rho.transpose().array() * rho.array()).sum();
    return rho.trace().real() - tr2.real();
}

double register_energy(const CMatrix& rho, const CMatrix& h) {
    if (!is_hermitian(h, 1e-10)) {
        throw Error(ErrorCode::NotHermitian, "energy operator is not Hermitian");
    }
    if (rho.rows() != h.rows() || rho.cols() != h.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "energy: density matrix and Hamiltonian differ in size");
    }
    return (rho.transpose().array() * h.array()).sum().real();
}

std::vector<double> tau_inverse_n(const Liouvillian& liouv, const CMatrix& rho, int n_max) {
    if (n_max > kMaxTauOrder) {
        throw Error(ErrorCode::TooLarge, "tau_inverse_n supports n_max <= 6");
    }
    if (n_max < 1) {
        return {};
    }
    // powers[k] = L^k(ρ)
    std::vector<CMatrix> powers{rho};
    for (int k = 1; k <= n_max; ++k) {
        powers.push_back(qreg::apply(liouv, powers.back()));
    }
    const auto trace_product = [](const CMatrix& a, const CMatrix& b) {
        return (a.transpose().array() * b.array()).sum();
    };
    std::vector<double> out;
    for (int n = 1; n <= n_max; ++n) {
        cplx acc = 0.0;
        double binom = 1.0;
        for (int k = 0; k <= n; ++k) {
            acc += binom * trace_product(powers[static_cast<std::size_t>(n - k)], powers[static_cast<std::size_t>(k)]);
            binom = binom * (n - k) / (k + 1);
        }
        out.push_back(-acc.real());
    }
    return out;
}

double pure_decoherence_rate(const LindbladSet& lindblad, const PureState& psi) {
    const CVector& v = psi.amplitudes();
    double rate = 0.0;
    for (const auto& t : lindblad.terms) {
        if (t.op.cols() != v.size()) {
            throw Error(ErrorCode::DimensionMismatch, "state does not match Lindblad operators");
        }
        const CVector lv = t.op * v;
        const cplx mean = v.dot(lv);
        rate += t.rate * (lv.squaredNorm() - std::norm(mean));
    }
    return 2.0 * rate;
}

DecoherenceReport decoherence_report(const Liouvillian& liouv, const Trajectory& traj, const PureState& psi0,
                                     const CMatrix& h, int n_max) {
    DecoherenceReport rep;
    rep.times = traj.times;
    for (const auto& rho : traj.states) {
        rep.fidelity_series.push_back(fidelity(rho, psi0));
        rep.entropy_series.push_back(linear_entropy(rho));
        rep.energy_series.push_back(register_energy(rho, h));
    }
    if (n_max > 0) {
        rep.tau_inverse = tau_inverse_n(liouv, psi0.projector(), n_max);
    }
    return rep;
}

}  // namespace qreg
