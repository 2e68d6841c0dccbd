// codes.hpp — sub-decoherent and noiseless code subspaces.
#pragma once

#include "qreg/liouvillian.hpp"
#include "qreg/register.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qreg {

enum class CodeKind { SubDecoherent, Noiseless };

const char* to_string(CodeKind kind) noexcept;

struct CodeSubspace {
    CMatrix basis;              // D×K, orthonormal columns
    std::vector<cplx> labels;   // eigenvalue of each Lindblad term on the code (may be empty)
    CodeKind kind = CodeKind::SubDecoherent;
    std::string note;

    Eigen::Index dimension() const { return basis.cols(); }
    CMatrix projector() const { return basis * basis.adjoint(); }
};

/// {ψ : L_μ ψ = labels[μ] ψ for every term}. A nonzero label on a
/// non-normal Lindblad operator yields an empty code and a note.
CodeSubspace simultaneous_eigenspace(const LindbladSet& lindblad, const std::vector<cplx>& labels);

/// ∩_μ ker L_μ.
CodeSubspace null_code(const LindbladSet& lindblad);

/// Decomposition of the register space into simultaneous eigenspaces of
/// commuting Hermitian Lindblad operators, one entry per distinct label
/// tuple. Throws NotHermitian or NotSimultaneouslyDiagonalizable.
std::vector<CodeSubspace> joint_eigenspaces(const LindbladSet& lindblad);

/// Number of spin-S irreducible copies in N spin-½'s,
/// (2S+1)·N!/((N/2+S+1)!(N/2−S)!). Throws InvalidQuantumNumbers.
std::uint64_t multiplicity(int n, double s);

/// The two N = 4 singlets written with |0⟩ ≡ |↑⟩:
///   |𝟎⟩ = (|B⟩ − |A⟩)/2,  |𝟏⟩ = (|C⟩ − |A⟩/2 − |B⟩/2)/√3,
/// with |A⟩ = |0011⟩+|1100⟩, |B⟩ = |0110⟩+|1001⟩, |C⟩ = |1010⟩+|0101⟩.
std::pair<PureState, PureState> n4_codewords();

/// Product states whose z-spin on each consecutive cluster of m qubits equals
/// target_zspin. Throws InvalidClusterSize unless m is even and divides n.
CodeSubspace dephasing_cluster_code(int n, int cluster_size, double target_zspin = 0.0);

struct NoiselessCheck {
    bool noiseless = false;
    double eigen_residual = 0.0;  // max_μ ‖L_μP − α_μP‖
    double leakage = 0.0;         // ‖(I − PP†)H′P‖
};

inline constexpr double kNoiselessTol = 1e-9;

/// Operational noiselessness test on the code's basis P.
NoiselessCheck check_noiseless(const CodeSubspace& code, const Liouvillian& liouv);
bool is_noiseless(const CodeSubspace& code, const Liouvillian& liouv);

/// U_φ = exp(−i ε⁻¹ Σ_j φ_j H^C_j) applied to the code basis, so that a code
/// of the bath maps onto a code of gauge_phased(bath, φ). Throws
/// InvalidArgument when ε = 0 or the phase count differs from N.
CMatrix gauge_unitary(const RegisterModel& model, const RVector& phases);
CodeSubspace gauge_transport(const CodeSubspace& code, const RVector& phases, const RegisterModel& model);

}  // namespace qreg
