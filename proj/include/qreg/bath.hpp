// bath.hpp — coefficient matrices Γ⁽±⁾ and Δ⁽±⁾ of the correlated bath.
#pragma once

#include "qreg/linalg.hpp"

#include <optional>
#include <vector>

namespace qreg {

/// Bath correlation matrices, all N×N Hermitian. Δ is optional; when absent
/// the Lamb shift is dropped.
struct BathSpec {
    CMatrix gamma_minus;
    CMatrix gamma_plus;
    std::optional<CMatrix> delta_minus;
    std::optional<CMatrix> delta_plus;

    int n_cells() const { return static_cast<int>(gamma_minus.rows()); }

    /// Checks shapes, Hermiticity, Γ⁻ ⪰ 0, Γ⁺ ⪰ 0 and Γ⁻ − Γ⁺ ⪰ 0, each with
    /// slack 1e-10·(largest eigenvalue). Throws DimensionMismatch, NotHermitian,
    /// NotPositive or OrderingViolated.
    void validate() const;
};

/// Independent cells: Γ⁽σ⁾ = γ₀⁽σ⁾·I.
/// delta_ratio > 0 attaches Δ⁽σ⁾ = delta_ratio·Γ⁽σ⁾ (same for every constructor).
BathSpec cell_limit(int n, double gamma0_minus, double gamma0_plus, double delta_ratio = 0.0);

/// Fully correlated bath: Γ⁽σ⁾ = γ₀⁽σ⁾ times the all-ones matrix.
BathSpec replica_symmetric(int n, double gamma0_minus, double gamma0_plus, double delta_ratio = 0.0);

/// Block-constant Γ over a partition of 0..N−1 into clusters. Throws
/// InvalidPartition on overlap, gap or out-of-range index.
BathSpec clustered(const std::vector<std::vector<int>>& partition, double gamma0_minus, double gamma0_plus,
                   double delta_ratio = 0.0);

/// Γ_ij⁽σ⁾ = γ₀⁽σ⁾·exp(−|i−j|/ξ). Throws NonPositiveXi.
BathSpec exponential_decay(int n, double gamma0_minus, double gamma0_plus, double xi, double delta_ratio = 0.0);

/// Γ_ij ↦ Γ_ij·e^{i(φ_i − φ_j)} for both sectors and Δ_ij ↦ Δ_ij·e^{−i(φ_i − φ_j)},
/// so that the gauge unitary maps the generator of base onto that of the result.
BathSpec gauge_phased(const BathSpec& base, const RVector& phases);

struct BathMode {
    double omega = 0.0;
    double occupation = 0.0;  // n_k ≥ 0
    CVector coupling;         // g_k, one entry per cell
};

/// Γ and Δ from a discrete set of bath modes at cell energy ε. The resonance
/// δ(ω_k − ε) is a Lorentzian of the given width; the principal-part sum for Δ
/// skips modes with |ω_k − ε| < linewidth. Throws EmptyModeList.
BathSpec microscopic_coefficients(const std::vector<BathMode>& modes, double epsilon, double linewidth);

}  // namespace qreg
