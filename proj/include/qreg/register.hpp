// register.hpp — N-cell register: cell operators, collective operators and
// self-Hamiltonians.
//
// Conventions (fixed, relied upon by CSV output and tests):
//   * basis index 0 of a qubit cell is |↑⟩; σᶻ = diag(+½, −½), σ⁺ = |↑⟩⟨↓|;
//   * cell 0 is the leftmost Kronecker factor, so in binary notation the
//     leftmost symbol is cell 0 (most significant bit of the basis index).

#pragma once

#include "qreg/linalg.hpp"

#include <optional>
#include <vector>

namespace qreg {

namespace spin {
CMatrix sz();     // diag(½, −½)
CMatrix sp();     // σ⁺ = |↑⟩⟨↓|
CMatrix sm();     // σ⁻ = |↓⟩⟨↑|
CMatrix sx();     // ½(σ⁺ + σ⁻)
}  // namespace spin

/// Register of N identical d-level cells coupled to the bath through one
/// channel A per cell. The cell operator satisfies the step condition
/// [H^C, A] = −ε·A.
struct RegisterModel {
    int n_cells = 1;
    int cell_dim = 2;
    CMatrix cell_op;            // A, d×d
    CMatrix cell_hamiltonian;   // H^C, d×d
    double epsilon = 0.0;       // energy quantum ε ≥ 0
    std::optional<CMatrix> interaction;  // H¹_R, D×D

    /// Qubit register with dissipative coupling A = σ⁻ and H^C = ε·σᶻ.
    static RegisterModel dissipative_qubits(int n, double epsilon,
                                            std::optional<CMatrix> interaction = std::nullopt);

    /// Qubit register with dephasing coupling A = σᶻ and H^C = field·σᶻ
    /// (ε = 0, so the step condition reads [H^C, A] = 0).
    static RegisterModel dephasing_qubits(int n, double field = 0.0);

    /// D = d^N.
    Eigen::Index dimension() const;

    /// Throws InvalidModel if the step condition or (for qubit registers
    /// with ε > 0) the su(2) invariance of the interaction fails.
    void validate() const;
};

/// Normalized register state vector.
class PureState {
public:
    PureState() = default;

    /// Normalizes v. Throws InvalidArgument for the zero vector.
    static PureState normalized(const CVector& v);

    /// Accepts v only if it is already unit-norm to 1e-12.
    static PureState from_unit(const CVector& v);

    /// Computational basis state |index⟩ in dimension dim.
    static PureState basis(Eigen::Index dim, Eigen::Index index);

    const CVector& amplitudes() const { return amplitudes_; }
    Eigen::Index dimension() const { return amplitudes_.size(); }

    /// |ψ⟩⟨ψ|
    CMatrix projector() const;

private:
    explicit PureState(CVector v) : amplitudes_(std::move(v)) {}
    CVector amplitudes_;
};

/// I^{⊗i} ⊗ op ⊗ I^{⊗(N−1−i)} for a d×d op. Throws IndexOutOfRange.
CMatrix embed(const CMatrix& op, int n_cells, int cell);

/// A_i embedded on cell i.
CMatrix embed_cell_op(const RegisterModel& model, int cell);

/// Σᵢ wᵢ A_i. Throws DimensionMismatch unless weights has N entries.
CMatrix collective_op(const RegisterModel& model, const CVector& weights);

/// Σᵢ H^C_i.
CMatrix free_hamiltonian(const RegisterModel& model);

/// H_R = Σᵢ H^C_i + H¹_R.
CMatrix self_hamiltonian(const RegisterModel& model);

/// Collective spin operators of an N-qubit register.
struct CollectiveSpin {
    CMatrix sz;
    CMatrix sp;
    CMatrix sm;
    /// S² = (Sᶻ)² + ½{S⁺, S⁻}
    CMatrix casimir() const;
};

CollectiveSpin collective_spin(int n);

/// J Σ_{⟨ij⟩} (σᶻᵢσᶻⱼ + ½(σ⁺ᵢσ⁻ⱼ + σ⁻ᵢσ⁺ⱼ) + ¼) on a ring of n ≥ 3 qubits,
/// i.e. ½J Σ_{⟨ij⟩} SWAP_ij. The constant puts the two N = 4 singlets at ±J.
CMatrix heisenberg_ring(int n, double j);

/// Simultaneous eigenvector |S M⟩ of S² and Sᶻ for an N-qubit register.
///
/// Within a degenerate (S, M) block the copies are fixed deterministically:
/// computational basis vectors are projected onto the block in ascending
/// index order and Gram–Schmidt orthonormalized; each copy's first nonzero
/// amplitude is made real positive. Throws InvalidQuantumNumbers.
PureState su2_basis_state(int n, double s, double m, int copy = 0);

/// (|↑↓⟩ − |↓↑⟩)/√2 on each nearest-neighbour pair (0,1), (2,3), … (n even).
PureState dimer_singlet(int n);

/// (|↑↓⟩ + |↓↑⟩)/√2 on each nearest-neighbour pair (n even).
PureState dimer_triplet(int n);

/// Normalized (S⁺)^k |↓…↓⟩, the symmetric Dicke state with k excitations.
PureState dicke_state(int n, int excitations);

/// 2^{−N/2} Σ_α |α⟩.
PureState uniform_superposition(int n_cells, int cell_dim = 2);

}  // namespace qreg
