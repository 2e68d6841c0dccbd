#include "qreg/codes.hpp"

#include "qreg/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qreg {

namespace {

constexpr double kLabelGroupTol = 1e-8;

bool is_normal(const CMatrix& m) {
    const CMatrix c = m * m.adjoint() - m.adjoint() * m;
    return c.norm() <= 1e-10 * std::max(1.0, m.squaredNorm());
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

int twice_spin(double s) {
    const double t = 2.0 * s;
    if (std::abs(t - std::round(t)) > 1e-12) {
        throw Error(ErrorCode::InvalidQuantumNumbers, "spin must be a half-integer");
    }
    return static_cast<int>(std::round(t));
}

}  // namespace

const char* to_string(CodeKind kind) noexcept {
    return kind == CodeKind::Noiseless ? "noiseless" : "sub_decoherent";
}

CodeSubspace simultaneous_eigenspace(const LindbladSet& lindblad, const std::vector<cplx>& labels) {
    if (labels.size() != lindblad.terms.size()) {
        throw Error(ErrorCode::DimensionMismatch, "one label per Lindblad term expected");
    }
    CodeSubspace code;
    code.labels = labels;
    if (lindblad.empty()) {
        code.note = "no Lindblad operators: whole space";
        code.basis = CMatrix::Identity(0, 0);
        return code;
    }
    const Eigen::Index d = lindblad.terms.front().op.rows();
    std::vector<CMatrix> shifted;
    for (std::size_t mu = 0; mu < labels.size(); ++mu) {
        const CMatrix& op = lindblad.terms[mu].op;
        if (labels[mu] != cplx{} && !is_normal(op)) {
            code.note = "nonzero label requested for non-normal Lindblad operator " + std::to_string(mu) +
                        "; only 0 is an admissible eigenvalue";
            code.basis = CMatrix::Zero(d, 0);
            return code;
        }
        shifted.push_back(op - labels[mu] * CMatrix::Identity(d, d));
    }
    code.basis = common_nullspace(shifted, d);
    return code;
}

CodeSubspace null_code(const LindbladSet& lindblad) {
    return simultaneous_eigenspace(lindblad, std::vector<cplx>(lindblad.terms.size(), cplx{}));
}

std::vector<CodeSubspace> joint_eigenspaces(const LindbladSet& lindblad) {
    if (lindblad.empty()) {
        throw Error(ErrorCode::InvalidArgument, "joint_eigenspaces needs at least one Lindblad operator");
    }
    const Eigen::Index d = lindblad.terms.front().op.rows();
    for (const auto& t : lindblad.terms) {
        if (!is_hermitian(t.op, 1e-10)) {
            throw Error(ErrorCode::NotHermitian, "joint_eigenspaces needs Hermitian Lindblad operators");
        }
    }
    for (std::size_t a = 0; a < lindblad.terms.size(); ++a) {
        for (std::size_t b = a + 1; b < lindblad.terms.size(); ++b) {
            if (commutator(lindblad.terms[a].op, lindblad.terms[b].op).norm() > 1e-9) {
                throw Error(ErrorCode::NotSimultaneouslyDiagonalizable, "Lindblad operators do not commute");
            }
        }
    }
    // Refine blocks one operator at a time.
    std::vector<CodeSubspace> blocks(1);
    blocks[0].basis = CMatrix::Identity(d, d);
    for (const auto& term : lindblad.terms) {
        std::vector<CodeSubspace> next;
        for (const auto& blk : blocks) {
            const CMatrix restricted = blk.basis.adjoint() * term.op * blk.basis;
            const HermEig e = herm_eig(0.5 * (restricted + restricted.adjoint()));
            Eigen::Index start = 0;
            while (start < e.values.size()) {
                Eigen::Index stop = start + 1;
                while (stop < e.values.size() && e.values(start) - e.values(stop) < kLabelGroupTol) {
                    ++stop;
                }
                CodeSubspace piece;
                piece.basis = blk.basis * e.vectors.middleCols(start, stop - start);
                piece.labels = blk.labels;
                piece.labels.emplace_back(e.values.segment(start, stop - start).mean(), 0.0);
                next.push_back(std::move(piece));
                start = stop;
            }
        }
        blocks = std::move(next);
    }
    return blocks;
}

std::uint64_t multiplicity(int n, double s) {
    const int two_s = twice_spin(s);
    if (n < 0 || two_s < 0 || two_s > n || (n - two_s) % 2 != 0) {
        throw Error(ErrorCode::InvalidQuantumNumbers,
                    "no spin " + std::to_string(s) + " multiplet in " + std::to_string(n) + " spins");
    }
    // (2S+1)·C(N, N/2−S)/(N/2+S+1), exact in integers.
    const int k = (n - two_s) / 2;
    const auto top = static_cast<std::uint64_t>(two_s + 1) * binomial(n, k);
    return top / static_cast<std::uint64_t>((n + two_s) / 2 + 1);
}

std::pair<PureState, PureState> n4_codewords() {
    // Bits read left to right are cells 0..3, with bit 1 = ↓.
    const auto ket = [](std::initializer_list<int> idx) {
        CVector v = CVector::Zero(16);
        for (int i : idx) {
            v(i) = 1.0;
        }
        return v;
    };
    const CVector a = ket({0b0011, 0b1100});
    const CVector b = ket({0b0110, 0b1001});
    const CVector c = ket({0b1010, 0b0101});
    const CVector zero = 0.5 * (b - a);
    const CVector one = (c - 0.5 * a - 0.5 * b) / std::sqrt(3.0);
    return {PureState::normalized(zero), PureState::normalized(one)};
}

CodeSubspace dephasing_cluster_code(int n, int cluster_size, double target_zspin) {
    if (cluster_size < 2 || cluster_size % 2 != 0 || n < cluster_size || n % cluster_size != 0) {
        throw Error(ErrorCode::InvalidClusterSize, "cluster size " + std::to_string(cluster_size) +
                                                       " must be even and divide n = " + std::to_string(n));
    }
    const int two_target = twice_spin(target_zspin);
    const Eigen::Index dim = Eigen::Index{1} << n;
    std::vector<Eigen::Index> members;
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        bool ok = true;
        for (int c = 0; c < n / cluster_size && ok; ++c) {
            int two_z = 0;
            for (int k = 0; k < cluster_size; ++k) {
                const int cell = c * cluster_size + k;
                const bool down = (idx >> (n - 1 - cell)) & 1;
                two_z += down ? -1 : 1;
            }
            ok = two_z == two_target;
        }
        if (ok) {
            members.push_back(idx);
        }
    }
    CodeSubspace code;
    code.basis = CMatrix::Zero(dim, static_cast<Eigen::Index>(members.size()));
    for (std::size_t k = 0; k < members.size(); ++k) {
        code.basis(members[k], static_cast<Eigen::Index>(k)) = 1.0;
    }
    code.note = "cluster z-spin " + std::to_string(target_zspin) + ", m = " + std::to_string(cluster_size);
    return code;
}

NoiselessCheck check_noiseless(const CodeSubspace& code, const Liouvillian& liouv) {
    NoiselessCheck out;
    const CMatrix& p = code.basis;
    const Eigen::Index k = p.cols();
    if (k == 0) {
        return out;
    }
    if (p.rows() != liouv.dimension()) {
        throw Error(ErrorCode::DimensionMismatch, "code basis does not match the Liouvillian");
    }
    for (const auto& t : liouv.lindblad().terms) {
        const CMatrix lp = t.op * p;
        const cplx alpha = (p.adjoint() * lp).trace() / static_cast<double>(k);
        out.eigen_residual = std::max(out.eigen_residual, (lp - alpha * p).norm());
    }
    const CMatrix hp = liouv.hamiltonian() * p;
    out.leakage = (hp - p * (p.adjoint() * hp)).norm();
    out.noiseless = out.eigen_residual <= kNoiselessTol && out.leakage <= kNoiselessTol;
    return out;
}

bool is_noiseless(const CodeSubspace& code, const Liouvillian& liouv) {
    return check_noiseless(code, liouv).noiseless;
}

CMatrix gauge_unitary(const RegisterModel& model, const RVector& phases) {
    if (!(model.epsilon > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "gauge transport needs epsilon > 0");
    }
    if (phases.size() != model.n_cells) {
        throw Error(ErrorCode::DimensionMismatch, "one phase per cell expected");
    }
    CMatrix u = CMatrix::Identity(1, 1);
    for (int j = 0; j < model.n_cells; ++j) {
        const CMatrix gen = (-kI * phases(j) / model.epsilon) * model.cell_hamiltonian;
        u = kron(u, expm(gen));
    }
    return u;
}

CodeSubspace gauge_transport(const CodeSubspace& code, const RVector& phases, const RegisterModel& model) {
    CodeSubspace out = code;
    if (code.dimension() == 0) {
        return out;
    }
    const CMatrix u = gauge_unitary(model, phases);
    if (u.rows() != code.basis.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "code basis does not match the register");
    }
    out.basis = u * code.basis;
    out.note = code.note.empty() ? "gauge transported" : code.note + "; gauge transported";
    return out;
}

}  // namespace qreg
