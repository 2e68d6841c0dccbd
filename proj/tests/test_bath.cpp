#include "doctest.h"
#include "helpers.hpp"

#include "qreg/bath.hpp"
#include "qreg/error.hpp"
#include "qreg/liouvillian.hpp"

#include <cmath>
#include <functional>
#include <numbers>

using namespace qreg;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected qreg::Error");
    return ErrorCode::InvalidArgument;
}

RVector eigenvalues(const CMatrix& m) { return herm_eig(m).values; }

}  // namespace

TEST_SUITE("bath") {

TEST_CASE("cell limit") {
    const BathSpec b = cell_limit(2, 0.1, 0.0);
    CHECK(b.gamma_minus.isApprox(0.1 * identity(2)));
    CHECK(b.gamma_plus.isZero(0.0));
    CHECK_FALSE(b.delta_minus.has_value());
    CHECK_NOTHROW(b.validate());
    const RVector ev = eigenvalues(cell_limit(5, 0.3, 0.1).gamma_minus);
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        CHECK(ev(k) == doctest::Approx(0.3));
    }
    CHECK(code_of([] { cell_limit(2, 0.1, 0.2); }) == ErrorCode::OrderingViolated);
    CHECK(code_of([] { cell_limit(2, -0.1, -0.2); }) == ErrorCode::NotPositive);
}

TEST_CASE("replica symmetric") {
    const BathSpec b = replica_symmetric(4, 0.1, 0.0);
    const HermEig e = herm_eig(b.gamma_minus);
    CHECK(e.values(0) == doctest::Approx(0.4));
    for (int k = 1; k < 4; ++k) {
        CHECK(std::abs(e.values(k)) < 1e-14);
    }
    CHECK(std::abs(std::abs(e.vectors.col(0).sum()) - 2.0) < 1e-12);
    CHECK(replica_symmetric(1, 0.2, 0.1).gamma_minus.isApprox(cell_limit(1, 0.2, 0.1).gamma_minus));
    CHECK(code_of([] { replica_symmetric(3, 0.0, 0.1); }) == ErrorCode::OrderingViolated);
}

TEST_CASE("clustered") {
    const BathSpec b = clustered({{0, 1}, {2, 3}}, 1.0, 0.0);
    const RVector ev = eigenvalues(b.gamma_minus);
    CHECK(ev(0) == doctest::Approx(2.0));
    CHECK(ev(1) == doctest::Approx(2.0));
    CHECK(std::abs(ev(2)) < 1e-14);
    CHECK(std::abs(ev(3)) < 1e-14);
    CHECK(clustered({{0}, {1}, {2}}, 0.1, 0.05).gamma_minus.isApprox(cell_limit(3, 0.1, 0.05).gamma_minus));
    CHECK(clustered({{2, 0, 1}}, 0.1, 0.05).gamma_plus.isApprox(replica_symmetric(3, 0.1, 0.05).gamma_plus));
    CHECK(code_of([] { clustered({{0, 1}, {1, 2}}, 0.1, 0.0); }) == ErrorCode::InvalidPartition);
    CHECK(code_of([] { clustered({{0, 1}, {3}}, 0.1, 0.0); }) == ErrorCode::InvalidPartition);
    CHECK(code_of([] { clustered({{0, -1}}, 0.1, 0.0); }) == ErrorCode::InvalidPartition);
    CHECK(code_of([] { clustered({{0}, {}}, 0.1, 0.0); }) == ErrorCode::InvalidPartition);
}

TEST_CASE("exponential decay") {
    const BathSpec b = exponential_decay(2, 0.1, 0.0, 1.0);
    // 0.1·e⁻¹, tests/oracles/frozen_values.py
    CHECK(std::abs(b.gamma_minus(0, 1).real() - 0.036787944117144235) < 1e-16);
    CHECK(std::abs(b.gamma_minus(1, 0).real() - 0.036787944117144235) < 1e-16);
    CHECK(b.gamma_minus(0, 0).real() == doctest::Approx(0.1));

    CHECK(testing::max_abs(exponential_decay(5, 0.1, 0.02, 1e12).gamma_minus -
                           replica_symmetric(5, 0.1, 0.02).gamma_minus) <= 1e-9);
    CHECK(testing::max_abs(exponential_decay(5, 0.1, 0.02, 1e-12).gamma_plus -
                           cell_limit(5, 0.1, 0.02).gamma_plus) <= 1e-9);
    CHECK(code_of([] { exponential_decay(3, 0.1, 0.0, 0.0); }) == ErrorCode::NonPositiveXi);
    CHECK(code_of([] { exponential_decay(3, 0.1, 0.0, -1.0); }) == ErrorCode::NonPositiveXi);
}

TEST_CASE("exponential decay is monotone in xi") {
    double prev = 0.0;
    for (double xi = 0.05; xi < 100.0; xi *= 1.5) {
        const BathSpec b = exponential_decay(4, 0.1, 0.0, xi);
        const double v = b.gamma_minus(0, 3).real();
        CHECK(v >= prev);
        prev = v;
        CHECK_NOTHROW(b.validate());
    }
}

TEST_CASE("delta ratio attaches a Lamb shift of the same structure") {
    const BathSpec b = exponential_decay(3, 0.1, 0.04, 2.0, 0.5);
    REQUIRE(b.delta_minus.has_value());
    REQUIRE(b.delta_plus.has_value());
    CHECK(b.delta_minus->isApprox(0.5 * b.gamma_minus));
    CHECK(b.delta_plus->isApprox(0.5 * b.gamma_plus));
}

TEST_CASE("gauge phasing") {
    const BathSpec base = replica_symmetric(3, 0.1, 0.02, 0.3);
    CHECK(gauge_phased(base, RVector::Zero(3)).gamma_minus.isApprox(base.gamma_minus));

    RVector phi(3);
    phi << 0.3, -1.1, 2.5;
    const BathSpec g = gauge_phased(base, phi);
    CHECK(std::abs(g.gamma_minus(0, 1) - 0.1 * std::polar(1.0, phi(0) - phi(1))) < 1e-15);
    CHECK(is_hermitian(g.gamma_minus));
    CHECK((eigenvalues(g.gamma_minus) - eigenvalues(base.gamma_minus)).norm() <= 1e-12);
    CHECK((eigenvalues(g.gamma_plus) - eigenvalues(base.gamma_plus)).norm() <= 1e-12);
    REQUIRE(g.delta_minus.has_value());
    CHECK(std::abs((*g.delta_minus)(2, 0) - 0.03 * std::polar(1.0, phi(0) - phi(2))) < 1e-15);
    CHECK_THROWS_AS(gauge_phased(base, RVector::Zero(2)), Error);
}

TEST_CASE("gauge flip on two cells gives the antisymmetric collective operator") {
    RVector phi(2);
    phi << 0.0, std::numbers::pi;
    const BathSpec g = gauge_phased(replica_symmetric(2, 0.1, 0.0), phi);
    const RegisterModel m = RegisterModel::dissipative_qubits(2, 1.0);
    const LindbladSet set = canonical_form(m, g);
    REQUIRE(set.terms.size() == 1);
    const CMatrix diff = (embed_cell_op(m, 0) - embed_cell_op(m, 1)) / std::sqrt(2.0);
    const CMatrix& l = set.terms[0].op;
    // Equal up to a global phase.
    const cplx overlap = (diff.adjoint() * l).trace() / diff.squaredNorm();
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-12);
    CHECK((l - overlap * diff).norm() < 1e-12);
    CHECK(set.terms[0].rate == doctest::Approx(0.2));
}

TEST_CASE("validation") {
    BathSpec b = cell_limit(2, 0.1, 0.0);
    b.gamma_minus(0, 1) = 0.5;
    CHECK(code_of([&] { b.validate(); }) == ErrorCode::NotHermitian);
    b.gamma_minus(1, 0) = 0.5;  // Hermitian, eigenvalues 0.6 and −0.4
    CHECK(code_of([&] { b.validate(); }) == ErrorCode::NotPositive);

    BathSpec c = cell_limit(2, 0.1, 0.0);
    c.gamma_plus = CMatrix::Ones(2, 2) * 0.1;  // Γ⁻ − Γ⁺ has eigenvalue −0.1
    CHECK(code_of([&] { c.validate(); }) == ErrorCode::OrderingViolated);

    BathSpec d = cell_limit(2, 0.1, 0.0);
    d.gamma_plus = CMatrix::Zero(3, 3);
    CHECK(code_of([&] { d.validate(); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("tiny negative eigenvalues are tolerated") {
    BathSpec b = replica_symmetric(3, 0.1, 0.0);
    b.gamma_minus(0, 0) -= 1e-13;
    CHECK_NOTHROW(b.validate());
}

TEST_CASE("microscopic coefficients from a single resonant mode") {
    const double g = 0.3;
    const double w = 0.05;
    const std::vector<BathMode> modes{{1.0, 0.0, CVector::Constant(3, g)}};
    const BathSpec b = microscopic_coefficients(modes, 1.0, w);
    // π·δ(0) regularized as 1/w.
    CHECK(testing::max_abs(b.gamma_minus - (g * g / w) * CMatrix::Ones(3, 3)) < 1e-14);
    CHECK(b.gamma_plus.isZero(0.0));
    REQUIRE(b.delta_plus.has_value());
    CHECK(b.delta_plus->isZero(0.0));
    CHECK(b.delta_minus->isZero(0.0));  // resonant mode sits in the skip window
    CHECK_NOTHROW(b.validate());
}

TEST_CASE("microscopic coefficients carry the mode phases") {
    const double k = 0.7;
    CVector coupling(3);
    for (int i = 0; i < 3; ++i) {
        coupling(i) = std::polar(1.0, k * i);
    }
    const std::vector<BathMode> modes{{1.0, 0.5, coupling}};
    const BathSpec b = microscopic_coefficients(modes, 1.0, 0.1);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const cplx expected = std::polar(1.0, k * (i - j));
            CHECK(std::abs(b.gamma_minus(i, j) / b.gamma_minus(0, 0) - expected) < 1e-12);
            CHECK(std::abs(b.gamma_plus(i, j) / b.gamma_plus(0, 0) - expected) < 1e-12);
        }
    }
    // (n+1)/n ratio between the sectors.
    CHECK(b.gamma_minus(0, 0).real() / b.gamma_plus(0, 0).real() == doctest::Approx(3.0));
}

TEST_CASE("microscopic coefficients: off-resonant modes feed the Lamb shift") {
    const std::vector<BathMode> modes{{1.5, 0.2, CVector::Ones(2)}, {0.2, 0.0, CVector::Ones(2)}};
    const BathSpec b = microscopic_coefficients(modes, 1.0, 0.01);
    REQUIRE(b.delta_minus.has_value());
    // Δ⁻ = Σ (n+1)/(ω − ε): 1.2/0.5 + 1/(−0.8)
    CHECK(b.delta_minus->coeff(0, 1).real() == doctest::Approx(1.2 / 0.5 + 1.0 / -0.8));
    CHECK(b.delta_plus->coeff(0, 0).real() == doctest::Approx(0.2 / 0.5));
    CHECK_THROWS_AS(microscopic_coefficients({}, 1.0, 0.1), Error);
    CHECK(code_of([] { microscopic_coefficients({}, 1.0, 0.1); }) == ErrorCode::EmptyModeList);
}

}
