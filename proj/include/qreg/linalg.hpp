// linalg.hpp — dense complex matrix substrate shared by every other module.
//
// All operator symbols of the register model live here as concrete
// Eigen::MatrixXcd values. Sizes stay small (D = d^N ≤ 256 for the intended
// N ≤ 8 qubit registers), so everything is dense.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace qreg {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

// Relative tolerances fixed by the numerical contract of the library.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kNullspaceCutoff = 1e-9;

/// Kronecker product: (a⊗b)[i·rb + k, j·cb + l] = a[i,j]·b[k,l].
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Kronecker product of a list, left to right. Empty list gives the 1×1 identity.
CMatrix kron_all(std::span<const CMatrix> factors);

CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix anticommutator(const CMatrix& a, const CMatrix& b);

/// ‖m − m†‖_F, the Hermiticity defect.
double hermitian_defect(const CMatrix& m);

/// True when ‖m − m†‖_F ≤ rel_tol · max(‖m‖_F, tiny).
bool is_hermitian(const CMatrix& m, double rel_tol = kHermitianTol);

/// Throws DimensionMismatch unless m is square.
void require_square(const CMatrix& m, const char* what);

struct HermEig {
    RVector values;   // descending
    CMatrix vectors;  // orthonormal columns, vectors.col(k) ↔ values(k)
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
/// Throws NotHermitian when ‖m − m†‖_F > 1e-12·‖m‖_F.
HermEig herm_eig(const CMatrix& m);

/// Orthonormal basis (columns) of ∩ ker(op) over all ops, each op being
/// dim×dim. Computed by restriction: basis ← basis·null(op·basis), with the
/// rank decided by singular values ≤ 1e-9·σ_max(op). An empty op list gives
/// the identity; a trivial intersection gives a dim×0 matrix.
CMatrix common_nullspace(std::span<const CMatrix> ops, Eigen::Index dim);

/// e^{m} by scaling and squaring with Padé approximants.
CMatrix expm(const CMatrix& m);

/// e^{m t}·v. Throws DimensionMismatch if m is not square or v does not conform.
CMatrix expm_action(const CMatrix& m, double t, const CMatrix& v);

/// True when every entry is finite.
bool all_finite(const CMatrix& m);

/// Identity of size n.
inline CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

} // namespace qreg
