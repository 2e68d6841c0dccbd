#include "doctest.h"
#include "helpers.hpp"

#include "qreg/codes.hpp"
#include "qreg/error.hpp"
#include "qreg/register.hpp"

#include <cmath>

using namespace qreg;

TEST_SUITE("register") {

TEST_CASE("embedding on a single cell is the operator itself") {
    const RegisterModel m = RegisterModel::dissipative_qubits(1, 1.0);
    CHECK(embed_cell_op(m, 0).isApprox(spin::sm()));
}

TEST_CASE("embedding on cell 0 of two is kron(sm, I)") {
    const RegisterModel m = RegisterModel::dissipative_qubits(2, 1.0);
    CHECK(embed_cell_op(m, 0).isApprox(kron(spin::sm(), identity(2))));
    CHECK(embed_cell_op(m, 1).isApprox(kron(identity(2), spin::sm())));
    CHECK_THROWS_AS(embed_cell_op(m, 2), Error);
    CHECK_THROWS_AS(embed_cell_op(m, -1), Error);
}

TEST_CASE("operators on disjoint cells commute") {
    const RegisterModel m = RegisterModel::dissipative_qubits(3, 1.0);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j) {
                continue;
            }
            const CMatrix ai = embed_cell_op(m, i);
            const CMatrix aj = embed_cell_op(m, j);
            CHECK(commutator(ai, aj).norm() <= 1e-13);
            CHECK(commutator(ai, aj.adjoint() * aj).norm() <= 1e-13);
        }
    }
}

TEST_CASE("collective operators") {
    const RegisterModel m = RegisterModel::dissipative_qubits(3, 1.0);
    CVector e1 = CVector::Zero(3);
    e1(1) = 1.0;
    CHECK(collective_op(m, e1).isApprox(embed_cell_op(m, 1)));
    CHECK(collective_op(m, CVector::Ones(3)).isApprox(collective_spin(3).sm));
    CHECK_THROWS_AS(collective_op(m, CVector::Ones(2)), Error);

    const double phi = 0.7;
    CVector w(3);
    CMatrix expected = CMatrix::Zero(8, 8);
    for (int j = 0; j < 3; ++j) {
        w(j) = std::polar(1.0, phi * (j + 1));
        expected += w(j) * embed(spin::sm(), 3, j);
    }
    CHECK(collective_op(m, w).isApprox(expected));
}

TEST_CASE("free Hamiltonian") {
    const double eps = 0.8;
    const CMatrix h1 = free_hamiltonian(RegisterModel::dissipative_qubits(1, eps));
    CHECK(std::abs(h1(0, 0) - eps / 2) < 1e-15);
    CHECK(std::abs(h1(1, 1) + eps / 2) < 1e-15);

    const CMatrix h2 = free_hamiltonian(RegisterModel::dissipative_qubits(2, eps));
    const RVector d = h2.diagonal().real();
    CHECK(d(0) == doctest::Approx(eps));
    CHECK(std::abs(d(1)) < 1e-15);
    CHECK(std::abs(d(2)) < 1e-15);
    CHECK(d(3) == doctest::Approx(-eps));

    const CMatrix h4 = free_hamiltonian(RegisterModel::dissipative_qubits(4, eps));
    const CollectiveSpin s = collective_spin(4);
    CHECK((commutator(h4, s.sm) + eps * s.sm).norm() <= 1e-10);
    CHECK((commutator(h4, s.sp) - eps * s.sp).norm() <= 1e-10);
}

TEST_CASE("step-operator condition propagates to collective operators") {
    testing::Rng rng(21);
    const RegisterModel m = RegisterModel::dissipative_qubits(3, 1.3);
    const CMatrix h = self_hamiltonian(m);
    for (int k = 0; k < 10; ++k) {
        const CMatrix l = collective_op(m, rng.gaussian(3, 1).col(0));
        CHECK((commutator(h, l) + m.epsilon * l).norm() <= 1e-10);
    }
}

TEST_CASE("model validation") {
    RegisterModel m = RegisterModel::dissipative_qubits(2, 1.0);
    m.cell_hamiltonian = -m.cell_hamiltonian;  // breaks [H^C, A] = −εA
    CHECK_THROWS_AS(m.validate(), Error);

    CMatrix bad = CMatrix::Zero(4, 4);
    bad(0, 3) = bad(3, 0) = 1.0;  // couples |↑↑⟩ and |↓↓⟩: not su(2) invariant
    CHECK_THROWS_AS(RegisterModel::dissipative_qubits(2, 1.0, bad), Error);
    CHECK_NOTHROW(RegisterModel::dissipative_qubits(4, 1.0, heisenberg_ring(4, 0.3)));
    CHECK_THROWS_AS(RegisterModel::dissipative_qubits(0, 1.0), Error);
}

TEST_CASE("Heisenberg ring") {
    const CMatrix h = heisenberg_ring(4, 1.0);
    CHECK(is_hermitian(h));
    const CollectiveSpin s = collective_spin(4);
    CHECK(commutator(h, s.sz).norm() <= 1e-10);
    CHECK(commutator(h, s.sp).norm() <= 1e-10);
    CHECK(commutator(h, s.sm).norm() <= 1e-10);

    const auto [zero, one] = n4_codewords();
    const CVector z = zero.amplitudes();
    const CVector o = one.amplitudes();
    CHECK((h * z - 1.0 * z).norm() <= 1e-10);
    CHECK((h * o + 1.0 * o).norm() <= 1e-10);

    CHECK(heisenberg_ring(5, 0.0).isZero(0.0));
    CHECK_THROWS_AS(heisenberg_ring(2, 1.0), Error);
}

TEST_CASE("Heisenberg ring differs from the bare bond sum by a constant") {
    // Bond sum σᶻσᶻ + ½(σ⁺σ⁻ + σ⁻σ⁺) without the ¼ offset.
    const int n = 5;
    CMatrix bare = CMatrix::Zero(32, 32);
    for (int a = 0; a < n; ++a) {
        const int b = (a + 1) % n;
        bare += embed(spin::sz(), n, a) * embed(spin::sz(), n, b) +
                0.5 * (embed(spin::sp(), n, a) * embed(spin::sm(), n, b) +
                       embed(spin::sm(), n, a) * embed(spin::sp(), n, b));
    }
    const double j = 0.7;
    CHECK((heisenberg_ring(n, j) - j * (bare + 0.25 * n * identity(32))).norm() <= 1e-12);
}

TEST_CASE("su2 basis states") {
    const PureState up = su2_basis_state(2, 1, 1);
    CHECK(std::abs(up.amplitudes()(0) - 1.0) < 1e-12);

    const PureState s = su2_basis_state(2, 0, 0);
    CHECK(std::abs(std::abs(s.amplitudes().dot(dimer_singlet(2).amplitudes())) - 1.0) < 1e-12);

    // Highest weight of four spins, and the ladder down to the symmetric M = 0 state.
    const PureState top = su2_basis_state(4, 2, 2);
    CHECK(std::abs(top.amplitudes()(0) - 1.0) < 1e-12);
    const CollectiveSpin sp = collective_spin(4);
    const CVector lowered = PureState::normalized(sp.sm * sp.sm * top.amplitudes()).amplitudes();
    const CVector raised = dicke_state(4, 2).amplitudes();
    CHECK(std::abs(std::abs(lowered.dot(raised)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(su2_basis_state(4, 2, 0).amplitudes().dot(raised)) - 1.0) < 1e-12);
}

TEST_CASE("su2 copies are orthonormal eigenvectors") {
    for (int n = 2; n <= 6; ++n) {
        const CollectiveSpin s = collective_spin(n);
        const CMatrix s2 = s.casimir();
        for (int two_s = n % 2; two_s <= n; two_s += 2) {
            const double spin = two_s / 2.0;
            const auto copies = static_cast<int>(multiplicity(n, spin));
            for (int two_m = -two_s; two_m <= two_s; two_m += 2) {
                const double m = two_m / 2.0;
                std::vector<CVector> vs;
                for (int c = 0; c < copies; ++c) {
                    const CVector v = su2_basis_state(n, spin, m, c).amplitudes();
                    CHECK((s2 * v - spin * (spin + 1) * v).norm() <= 1e-10);
                    CHECK((s.sz * v - m * v).norm() <= 1e-10);
                    for (const auto& w : vs) {
                        CHECK(std::abs(w.dot(v)) <= 1e-10);
                    }
                    vs.push_back(v);
                }
                CHECK_THROWS_AS(su2_basis_state(n, spin, m, copies), Error);
            }
        }
    }
}

TEST_CASE("su2 basis states are deterministic") {
    const CVector a = su2_basis_state(6, 1, 0, 3).amplitudes();
    const CVector b = su2_basis_state(6, 1, 0, 3).amplitudes();
    CHECK((a - b).norm() == 0.0);
}

TEST_CASE("su2 quantum number validation") {
    CHECK_THROWS_AS(su2_basis_state(3, 0, 0), Error);    // S_min = 1/2
    CHECK_THROWS_AS(su2_basis_state(2, 2, 0), Error);    // S > N/2
    CHECK_THROWS_AS(su2_basis_state(2, 1, 2), Error);    // |M| > S
    CHECK_THROWS_AS(su2_basis_state(2, 0.3, 0), Error);  // not half-integer
    CHECK_NOTHROW(su2_basis_state(3, 0.5, -0.5, 1));
}

TEST_CASE("pure states") {
    CHECK_THROWS_AS(PureState::normalized(CVector::Zero(3)), Error);
    CHECK_THROWS_AS(PureState::from_unit(CVector::Ones(2)), Error);
    CHECK_THROWS_AS(PureState::basis(4, 4), Error);
    const PureState u = uniform_superposition(3);
    CHECK(std::abs(u.amplitudes()(5) - 1.0 / std::sqrt(8.0)) < 1e-15);
    CHECK(std::abs(u.projector().trace() - 1.0) < 1e-14);
    const CVector t = dimer_triplet(2).amplitudes();
    CHECK(std::abs(t(1) - t(2)) < 1e-15);
    CHECK_THROWS_AS(dimer_singlet(3), Error);
    CHECK_THROWS_AS(dicke_state(2, 3), Error);
}

}
