// dynamics.hpp — time evolution of register density matrices.
#pragma once

#include "qreg/bath.hpp"
#include "qreg/liouvillian.hpp"
#include "qreg/register.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qreg {

struct TrajectoryMeta {
    std::string solver;                   // "rk4", "exact" or "dephasing"
    double step = 0.0;                    // effective dt; 0 for grid-free solvers
    std::optional<double> error_estimate; // ‖ρ_dt(t_end) − ρ_{dt/2}(t_end)‖_F
    std::vector<std::string> warnings;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<CMatrix> states;
    TrajectoryMeta meta;

    std::size_t size() const { return times.size(); }
};

struct IntegrateOptions {
    int stride = 10;              // store every stride-th step; the last step is always stored
    bool estimate_error = false;  // rerun with dt/2 and record the final-state difference
};

/// Fixed-step RK4 on dρ/dt = L(ρ) from 0 to t_end. The step is shrunk to
/// t_end/⌈t_end/dt⌉ so the grid lands on t_end. After every step ρ is
/// re-Hermitized and its trace reset to 1. Throws InvalidArgument for bad
/// dt/t_end/stride and UnstableStep if the trace drifts by more than 1e-6
/// in one step or the state stops being finite.
Trajectory integrate(const Liouvillian& liouv, const CMatrix& rho0, double t_end, double dt,
                     const IntegrateOptions& opts = {});

/// e^{tL}ρ₀ through the D²×D² superoperator. Throws TooLarge for D > 64.
CMatrix propagate_exact(const Liouvillian& liouv, const CMatrix& rho0, double t);

/// Closed-form evolution for Hermitian cell operators A (pure dephasing).
///
/// In the product eigenbasis |α⟩ of the A_i (the computational basis when A
/// is diagonal, otherwise V^{⊗N} with V diagonalizing A, eigenvalues
/// ascending), each matrix element evolves as e^{W(α,α′)t} with
///   W = −i(E_α − E_α′) − ½ (a−a′)ᵀ Re(Γ⁻+Γ⁺) (a−a′) + i aᵀ Im(Γ⁻−Γ⁺) a′,
/// a_i being the eigenvalue of A_i on |α⟩ and E_α the energy of |α⟩ under
/// H′ = H_R + δH_R. Throws InvalidModel if A is not Hermitian and
/// NotSimultaneouslyDiagonalizable if H′ is not diagonal in that basis.
Trajectory dephasing_solve(const RegisterModel& model, const BathSpec& spec, const CMatrix& rho0,
                           const std::vector<double>& times);

/// Throws DimensionMismatch/InvalidArgument unless rho is a D×D Hermitian
/// matrix of unit trace.
void require_density_matrix(const CMatrix& rho, Eigen::Index dim);

}  // namespace qreg
