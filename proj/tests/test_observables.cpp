#include "doctest.h"
#include "helpers.hpp"

#include "qreg/dynamics.hpp"
#include "qreg/error.hpp"
#include "qreg/observables.hpp"

#include <cmath>

using namespace qreg;

TEST_SUITE("observables") {

TEST_CASE("fidelity") {
    testing::Rng rng(51);
    const PureState psi = rng.pure(6);
    CHECK(fidelity(psi.projector(), psi) == doctest::Approx(1.0));
    CHECK(fidelity(identity(6) / 6.0, psi) == doctest::Approx(1.0 / 6.0));
    CHECK_THROWS_AS(fidelity(identity(4) / 4.0, psi), Error);
    CMatrix skew = CMatrix::Zero(6, 6);
    skew(0, 1) = kI;
    CHECK_THROWS_AS(fidelity(skew, PureState::normalized(CVector::Ones(6))), Error);
}

TEST_CASE("fidelity of |uu> in the cell limit at t = 5") {
    const Liouvillian l = assemble(RegisterModel::dissipative_qubits(2, 1.0), cell_limit(2, 0.1, 0.0));
    const PureState uu = PureState::basis(4, 0);
    // e^{−1}, tests/oracles/frozen_values.py
    CHECK(std::abs(fidelity(propagate_exact(l, uu.projector(), 5.0), uu) - 0.36787944117144233) <= 1e-10);
}

TEST_CASE("linear entropy") {
    testing::Rng rng(52);
    CHECK(std::abs(linear_entropy(rng.pure(5).projector())) <= 1e-14);
    CHECK(linear_entropy(identity(8) / 8.0) == doctest::Approx(1.0 - 1.0 / 8.0));
    CHECK(linear_entropy(rng.density(5)) > 1e-3);
}

TEST_CASE("register energy") {
    const RegisterModel m = RegisterModel::dissipative_qubits(2, 0.7);
    const CMatrix h = free_hamiltonian(m);
    CHECK(register_energy(PureState::basis(4, 0).projector(), h) == doctest::Approx(0.7));
    CHECK(register_energy(PureState::basis(4, 3).projector(), h) == doctest::Approx(-0.7));
    CMatrix bad = h;
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(register_energy(identity(4) / 4.0, bad), Error);
    CHECK_THROWS_AS(register_energy(identity(2) / 2.0, h), Error);
}

TEST_CASE("energy decreases along a zero-temperature trajectory") {
    testing::Rng rng(53);
    const RegisterModel m = RegisterModel::dissipative_qubits(3, 1.0);
    const BathSpec b = exponential_decay(3, 0.1, 0.0, 0.8);
    const Liouvillian l = assemble(m, b);
    const PureState psi = rng.pure(8);
    const Trajectory tr = integrate(l, psi.projector(), 30.0, 0.05, {1, false});
    const DecoherenceReport rep = decoherence_report(l, tr, psi, free_hamiltonian(m));
    for (std::size_t k = 1; k < rep.energy_series.size(); ++k) {
        CHECK(rep.energy_series[k] <= rep.energy_series[k - 1] + 1e-9);
    }
}

TEST_CASE("decoherence report bounds") {
    testing::Rng rng(54);
    const RegisterModel m = RegisterModel::dissipative_qubits(2, 1.0);
    const Liouvillian l = assemble(m, rng.bath(2));
    const PureState psi = rng.pure(4);
    const Trajectory tr = integrate(l, psi.projector(), 40.0, 0.05);
    const DecoherenceReport rep = decoherence_report(l, tr, psi, free_hamiltonian(m), 3);
    CHECK(rep.tau_inverse.size() == 3);
    CHECK(rep.times.size() == tr.size());
    for (std::size_t k = 0; k < rep.times.size(); ++k) {
        CHECK(rep.fidelity_series[k] >= -1e-10);
        CHECK(rep.fidelity_series[k] <= 1.0 + 1e-10);
        CHECK(rep.entropy_series[k] >= -1e-10);
        CHECK(rep.entropy_series[k] <= 1.0 - 1.0 / 4.0 + 1e-10);
    }
    CHECK(rep.fidelity_series.front() == doctest::Approx(1.0));
}

TEST_CASE("tau hierarchy vanishes on the singlet at the replica-symmetric point") {
    const Liouvillian l = assemble(RegisterModel::dissipative_qubits(2, 1.0), replica_symmetric(2, 0.1, 0.03));
    for (double v : tau_inverse_n(l, dimer_singlet(2).projector(), 6)) {
        CHECK(std::abs(v) <= 1e-12);
    }
    CHECK_THROWS_AS(tau_inverse_n(l, dimer_singlet(2).projector(), 7), Error);
    CHECK(tau_inverse_n(l, dimer_singlet(2).projector(), 0).empty());
}

TEST_CASE("first order agrees with the pure-state rate") {
    testing::Rng rng(55);
    const RegisterModel m = RegisterModel::dissipative_qubits(3, 1.0);
    for (int k = 0; k < 10; ++k) {
        const Liouvillian l = assemble(m, rng.bath(3));
        const PureState psi = rng.pure(8);
        const double first = tau_inverse_n(l, psi.projector(), 1)[0];
        CHECK(std::abs(first - pure_decoherence_rate(l.lindblad(), psi)) <= 1e-12);
    }
}

TEST_CASE("first order on the maximally mixed state") {
    // −2 tr(ρ L(ρ)) with ρ = I/D reduces to −(2/D²) Σ λ tr(L L† − L†L) = 0 for
    // the dissipator, written out term by term.
    testing::Rng rng(56);
    const RegisterModel m = RegisterModel::dissipative_qubits(2, 1.0);
    const Liouvillian l = assemble(m, rng.bath(2));
    const CMatrix rho = identity(4) / 4.0;
    double oracle = 0.0;
    for (const auto& t : l.lindblad().terms) {
        const CMatrix ld = t.op.adjoint();
        oracle += t.rate * ((rho * t.op * rho * ld).trace() - (rho * ld * t.op * rho).trace()).real();
    }
    oracle *= -2.0;
    CHECK(std::abs(tau_inverse_n(l, rho, 1)[0] - oracle) <= 1e-12);
}

TEST_CASE("Hamiltonian does not enter at first order") {
    testing::Rng rng(57);
    const RegisterModel m = RegisterModel::dissipative_qubits(3, 1.0, heisenberg_ring(3, 0.5));
    const Liouvillian l = assemble(m, rng.bath(3));
    const Liouvillian bare = l.with_hamiltonian(CMatrix::Zero(8, 8));
    const CMatrix rho = rng.density(8);
    CHECK(std::abs(tau_inverse_n(l, rho, 1)[0] - tau_inverse_n(bare, rho, 1)[0]) <= 1e-10);
}

TEST_CASE("short-time expansion of the entropy") {
    const RegisterModel m = RegisterModel::dissipative_qubits(2, 1.0);
    const Liouvillian l = assemble(m, exponential_decay(2, 0.1, 0.02, 1.0));
    const PureState psi = uniform_superposition(2);
    const auto tau = tau_inverse_n(l, psi.projector(), 2);
    const double tau1 = 1.0 / tau[0];
    const double t = 0.05 * tau1;
    const Trajectory tr = integrate(l, psi.projector(), t, t / 200.0, {200, false});
    const double series = t * tau[0] + t * t / 2.0 * tau[1];
    CHECK(std::abs(linear_entropy(tr.states.back()) - series) <= 0.05 * series);
}

TEST_CASE("two-qubit rates in the exponential bath") {
    const double gm = 0.1;
    const double gp = 0.03;
    const double xi = 0.7;
    const double g = std::exp(-1.0 / xi);
    const RegisterModel m = RegisterModel::dissipative_qubits(2, 1.0);
    const LindbladSet set = canonical_form(m, exponential_decay(2, gm, gp, xi));
    CHECK(pure_decoherence_rate(set, dimer_triplet(2)) == doctest::Approx(2 * (gm + gp) * (1 + g)).epsilon(1e-12));
    CHECK(pure_decoherence_rate(set, dimer_singlet(2)) == doctest::Approx(2 * (gm + gp) * (1 - g)).epsilon(1e-12));
    // |↑↑⟩ = |1,1⟩: only emission, rate 2Γ₀⁻·C²₋(1,1) = 4Γ₀⁻, independent of ξ.
    CHECK(pure_decoherence_rate(set, PureState::basis(4, 0)) == doctest::Approx(4 * gm).epsilon(1e-12));
    CHECK(pure_decoherence_rate(set, PureState::basis(4, 3)) == doctest::Approx(4 * gp).epsilon(1e-12));
}

TEST_CASE("collective rates of |S M> states") {
    const double gm = 0.1;
    const double gp = 0.04;
    for (int n : {2, 4}) {
        const LindbladSet set = canonical_form(RegisterModel::dissipative_qubits(n, 1.0), replica_symmetric(n, gm, gp));
        for (int two_s = 0; two_s <= n; two_s += 2) {
            const double s = two_s / 2.0;
            for (double mm = -s; mm <= s; mm += 1.0) {
                const double cm = s * (s + 1) - mm * (mm - 1);
                const double cp = s * (s + 1) - mm * (mm + 1);
                const double half = 0.5 * pure_decoherence_rate(set, su2_basis_state(n, s, mm));
                CHECK(std::abs(half - (gm * cm + gp * cp)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("simultaneous eigenvectors have zero rate") {
    const RegisterModel m = RegisterModel::dephasing_qubits(3);
    const LindbladSet set = canonical_form(m, exponential_decay(3, 0.1, 0.05, 1.0));
    for (int k = 0; k < 8; ++k) {
        CHECK(std::abs(pure_decoherence_rate(set, PureState::basis(8, k))) <= 1e-15);
    }
    CHECK(pure_decoherence_rate(set, uniform_superposition(3)) > 0.0);
}

}
