// observables.hpp — fidelity, linear entropy, energy and decoherence rates.
#pragma once

#include "qreg/dynamics.hpp"
#include "qreg/liouvillian.hpp"
#include "qreg/register.hpp"

#include <vector>

namespace qreg {

/// ⟨ψ₀|ρ|ψ₀⟩. Throws DimensionMismatch; throws InvalidArgument if the
/// imaginary part exceeds 1e-10.
double fidelity(const CMatrix& rho, const PureState& psi0);

/// tr ρ − tr ρ².
double linear_entropy(const CMatrix& rho);

/// Re tr(ρh). Throws NotHermitian if h is not Hermitian.
double register_energy(const CMatrix& rho, const CMatrix& h);

inline constexpr int kMaxTauOrder = 6;

/// Short-time coefficients 1/τₙⁿ = −tr Σ_k C(n,k) Lⁿ⁻ᵏ(ρ) Lᵏ(ρ), n = 1..n_max,
/// so that δ(t) ≈ δ(0) + Σₙ tⁿ/(n!·τₙⁿ). Throws TooLarge for n_max > 6.
std::vector<double> tau_inverse_n(const Liouvillian& liouv, const CMatrix& rho, int n_max);

/// First-order rate for a pure state, 2 Σ λ (‖Lψ‖² − |⟨ψ|L|ψ⟩|²).
double pure_decoherence_rate(const LindbladSet& lindblad, const PureState& psi);

struct DecoherenceReport {
    std::vector<double> tau_inverse;
    std::vector<double> times;
    std::vector<double> fidelity_series;
    std::vector<double> entropy_series;
    std::vector<double> energy_series;
};

/// Evaluates the observables along a trajectory started from psi0; energies
/// are taken with respect to h. tau_inverse is filled when n_max > 0.
DecoherenceReport decoherence_report(const Liouvillian& liouv, const Trajectory& traj, const PureState& psi0,
                                     const CMatrix& h, int n_max = 0);

}  // namespace qreg
