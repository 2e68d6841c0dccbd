// liouvillian.hpp — master-equation generator in canonical Lindblad form.
//
// The generator acts as
//   L(ρ) = i[ρ, H′] + Σ_μ λ_μ (L_μ ρ L_μ† − ½{L_μ† L_μ, ρ}),
// with H′ = H_R + δH_R. Superoperators use column-stacking vec, so that
// vec(AXB) = (Bᵀ ⊗ A) vec(X).
#pragma once

#include "qreg/bath.hpp"
#include "qreg/register.hpp"

#include <Eigen/SparseCore>

#include <optional>
#include <vector>

namespace qreg {

/// Emission (σ = −, built from A_i) or absorption (σ = +, built from A_i†).
enum class Sector { Minus, Plus };

struct LindbladTerm {
    double rate = 0.0;
    CMatrix op;
    Sector sector = Sector::Minus;
};

struct LindbladSet {
    std::vector<LindbladTerm> terms;

    bool empty() const { return terms.empty(); }
    double max_rate() const;
};

/// Relative cutoff below which eigenvalues of Γ produce no Lindblad term.
inline constexpr double kRateCutoff = 1e-12;

/// Diagonalizes Γ⁽σ⁾ = Σ_μ λ_μ u^μ u^μ† and emits
///   σ = −: L_μ = Σᵢ u_i^μ A_i,    σ = +: L_μ = Σᵢ ū_i^μ A_i† = (Σᵢ u_i^μ A_i)†.
/// Rates below kRateCutoff·(largest rate over both sectors) are dropped and
/// tiny negative eigenvalues are clamped away.
LindbladSet canonical_form(const RegisterModel& model, const BathSpec& spec);

/// δH_R = Σ_ij (Δ⁻_ij A_i†A_j + Δ⁺_ji A_i A_j†); zero when Δ is absent.
CMatrix lamb_shift(const RegisterModel& model, const BathSpec& spec);

class Liouvillian {
public:
    /// Throws NotHermitian if h is not Hermitian to 1e-10, DimensionMismatch
    /// if a Lindblad operator does not match h.
    Liouvillian(CMatrix hamiltonian, LindbladSet lindblad);

    const CMatrix& hamiltonian() const { return hamiltonian_; }
    const LindbladSet& lindblad() const { return lindblad_; }
    Eigen::Index dimension() const { return hamiltonian_.rows(); }

    /// Same dissipator, different Hamiltonian.
    Liouvillian with_hamiltonian(CMatrix h) const;

private:
    CMatrix hamiltonian_;
    LindbladSet lindblad_;
    CMatrix effective_;  // K = −iH′ − ½ Σ λ L†L
    // Sparse copies of K and of the Lindblad operators, used by apply when
    // they are sparse enough to beat dense products.
    using SparseOp = Eigen::SparseMatrix<cplx>;
    std::optional<SparseOp> sparse_effective_;
    std::vector<std::optional<SparseOp>> sparse_ops_;

    friend CMatrix apply(const Liouvillian&, const CMatrix&);
};

/// H′ = H_R + δH_R and the canonical dissipator for (model, spec).
Liouvillian assemble(const RegisterModel& model, const BathSpec& spec);

/// L(ρ) as Kρ + ρK† + Σ λ LρL†. Throws DimensionMismatch.
CMatrix apply(const Liouvillian& liouv, const CMatrix& rho);

/// Dissipative part only, Σ λ (LρL† − ½{L†L, ρ}).
CMatrix apply_dissipator(const LindbladSet& lindblad, const CMatrix& rho);

/// Maximum dimension accepted by superoperator_matrix.
inline constexpr Eigen::Index kMaxSuperoperatorDim = 64;

/// D²×D² matrix M with M·vec(ρ) = vec(L(ρ)). Throws TooLarge for D > 64.
CMatrix superoperator_matrix(const Liouvillian& liouv);

/// Column-stacking vec and its inverse.
CVector vec(const CMatrix& m);
CMatrix unvec(const CVector& v, Eigen::Index dim);

namespace reference {

/// Double-sum form of the dissipator written directly in terms of Γ:
///   Σ_ij Γ⁻_ij A_iρA_j† − ½Γ⁻_ji{A_i†A_j, ρ} + Γ⁺_ji A_i†ρA_j − ½Γ⁺_ij{A_iA_j†, ρ}
/// plus i[ρ, h]. Slow; used to cross-check canonical_form.
CMatrix apply_double_sum(const RegisterModel& model, const BathSpec& spec, const CMatrix& h, const CMatrix& rho);

}  // namespace reference

}  // namespace qreg
