#include "qreg/linalg.hpp"

#include "qreg/error.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace qreg {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const Eigen::Index rb = b.rows();
    const Eigen::Index cb = b.cols();
    CMatrix out(a.rows() * rb, a.cols() * cb);
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
        }
    }
    return out;
}

CMatrix kron_all(std::span<const CMatrix> factors) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (const auto& f : factors) {
        out = kron(out, f);
    }
    return out;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix anticommutator(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

double hermitian_defect(const CMatrix& m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (m - m.adjoint()).norm();
}

bool is_hermitian(const CMatrix& m, double rel_tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    const double scale = std::max(m.norm(), std::numeric_limits<double>::min());
    return hermitian_defect(m) <= rel_tol * scale;
}

void require_square(const CMatrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + " must be square, got " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()));
    }
}

HermEig herm_eig(const CMatrix& m) {
    require_square(m, "herm_eig input");
    if (!is_hermitian(m)) {
        throw Error(ErrorCode::NotHermitian,
                    "herm_eig: defect " + std::to_string(hermitian_defect(m)) + " exceeds 1e-12*|m|");
    }
    if (m.rows() == 0) {
        return {};
    }
    // Symmetrize away the sub-tolerance anti-Hermitian part before solving.
    const CMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NotHermitian, "herm_eig: eigensolver did not converge");
    }
    // Eigen returns ascending order.
    HermEig out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    return out;
}

namespace {

// Largest singular value of op, used as the rank-decision scale.
double spectral_norm(const CMatrix& op) {
    if (op.size() == 0) {
        return 0.0;
    }
    Eigen::BDCSVD<CMatrix> svd(op);
    return svd.singularValues()(0);
}

} // namespace

CMatrix common_nullspace(std::span<const CMatrix> ops, Eigen::Index dim) {
    CMatrix basis = CMatrix::Identity(dim, dim);
    for (const auto& op : ops) {
        if (op.rows() != dim || op.cols() != dim) {
            throw Error(ErrorCode::DimensionMismatch, "common_nullspace: operator dimension differs from " +
                                                          std::to_string(dim));
        }
        if (basis.cols() == 0) {
            break;
        }
        const double scale = spectral_norm(op);
        if (scale == 0.0) {
            continue;
        }
        const CMatrix restricted = op * basis;
        Eigen::BDCSVD<CMatrix> svd(restricted, Eigen::ComputeFullV);
        const RVector& sv = svd.singularValues();
        const double cutoff = kNullspaceCutoff * scale;
        Eigen::Index rank = 0;
        while (rank < sv.size() && sv(rank) > cutoff) {
            ++rank;
        }
        const Eigen::Index k = basis.cols();
        const CMatrix null_coords = svd.matrixV().rightCols(k - rank);
        basis = basis * null_coords;
    }
    if (basis.cols() > 0) {
        // Re-orthonormalize to wash out accumulated rounding from the products.
        Eigen::HouseholderQR<CMatrix> qr(basis);
        basis = qr.householderQ() * CMatrix::Identity(dim, basis.cols());
    }
    return basis;
}

CMatrix expm(const CMatrix& m) {
    require_square(m, "expm input");
    if (m.rows() == 0) {
        return m;
    }
    return m.exp();
}

CMatrix expm_action(const CMatrix& m, double t, const CMatrix& v) {
    require_square(m, "expm_action generator");
    if (v.rows() != m.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "expm_action: vector rows " + std::to_string(v.rows()) +
                                                      " do not match generator size " + std::to_string(m.cols()));
    }
    if (t == 0.0 || m.isZero(0.0)) {
        return v;
    }
    const CMatrix scaled = m * t;
    return expm(scaled) * v;
}

bool all_finite(const CMatrix& m) {
    return m.allFinite();
}

} // namespace qreg
