#include "qreg/register.hpp"

#include "qreg/error.hpp"

#include <cmath>
#include <string>

namespace qreg {

namespace spin {
CMatrix sz() {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = -0.5;
    return m;
}
CMatrix sp() {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}
CMatrix sm() {
    CMatrix m = CMatrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}
CMatrix sx() { return 0.5 * (sp() + sm()); }
}  // namespace spin

namespace {

constexpr double kStepTol = 1e-10;
constexpr double kNormTol = 1e-12;

Eigen::Index ipow(int base, int exp) {
    Eigen::Index out = 1;
    for (int k = 0; k < exp; ++k) {
        out *= base;
    }
    return out;
}

// 2x must be an integer; returns it.
int twice(double x, const char* what) {
    const double t = 2.0 * x;
    const double r = std::round(t);
    if (std::abs(t - r) > 1e-12) {
        throw Error(ErrorCode::InvalidQuantumNumbers, std::string(what) + " must be a half-integer");
    }
    return static_cast<int>(r);
}

}  // namespace

RegisterModel RegisterModel::dissipative_qubits(int n, double epsilon, std::optional<CMatrix> interaction) {
    RegisterModel m;
    m.n_cells = n;
    m.cell_dim = 2;
    m.cell_op = spin::sm();
    m.cell_hamiltonian = epsilon * spin::sz();
    m.epsilon = epsilon;
    m.interaction = std::move(interaction);
    m.validate();
    return m;
}

RegisterModel RegisterModel::dephasing_qubits(int n, double field) {
    RegisterModel m;
    m.n_cells = n;
    m.cell_dim = 2;
    m.cell_op = spin::sz();
    m.cell_hamiltonian = field * spin::sz();
    m.epsilon = 0.0;
    m.validate();
    return m;
}

Eigen::Index RegisterModel::dimension() const { return ipow(cell_dim, n_cells); }

void RegisterModel::validate() const {
    if (n_cells < 1) {
        throw Error(ErrorCode::InvalidModel, "register needs at least one cell");
    }
    if (cell_dim < 2) {
        throw Error(ErrorCode::InvalidModel, "cell dimension must be >= 2");
    }
    if (epsilon < 0.0) {
        throw Error(ErrorCode::InvalidModel, "epsilon must be >= 0");
    }
    if (cell_op.rows() != cell_dim || cell_op.cols() != cell_dim || cell_hamiltonian.rows() != cell_dim ||
        cell_hamiltonian.cols() != cell_dim) {
        throw Error(ErrorCode::DimensionMismatch, "cell operator and cell Hamiltonian must be d x d");
    }
    if (!is_hermitian(cell_hamiltonian, 1e-10)) {
        throw Error(ErrorCode::InvalidModel, "cell Hamiltonian is not Hermitian");
    }
    const double step = (commutator(cell_hamiltonian, cell_op) + epsilon * cell_op).norm();
    if (step > kStepTol) {
        throw Error(ErrorCode::InvalidModel,
                    "step-operator condition [H^C, A] = -eps A violated by " + std::to_string(step));
    }
    if (interaction) {
        const Eigen::Index d = dimension();
        if (interaction->rows() != d || interaction->cols() != d) {
            throw Error(ErrorCode::DimensionMismatch, "interaction must be D x D");
        }
        if (!is_hermitian(*interaction, 1e-10)) {
            throw Error(ErrorCode::InvalidModel, "interaction is not Hermitian");
        }
        if (cell_dim == 2 && epsilon > 0.0) {
            const CollectiveSpin s = collective_spin(n_cells);
            const double defect = std::max({commutator(*interaction, s.sz).norm(),
                                            commutator(*interaction, s.sp).norm(),
                                            commutator(*interaction, s.sm).norm()});
            if (defect > 1e-10) {
                throw Error(ErrorCode::InvalidModel,
                            "interaction does not commute with S^z, S^+, S^- (defect " + std::to_string(defect) + ")");
            }
        }
    }
}

PureState PureState::normalized(const CVector& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw Error(ErrorCode::InvalidArgument, "cannot normalize a zero or non-finite state vector");
    }
    return PureState(v / n);
}

PureState PureState::from_unit(const CVector& v) {
    if (std::abs(v.norm() - 1.0) > kNormTol) {
        throw Error(ErrorCode::InvalidArgument, "state vector is not unit-norm");
    }
    return PureState(v);
}

PureState PureState::basis(Eigen::Index dim, Eigen::Index index) {
    if (index < 0 || index >= dim) {
        throw Error(ErrorCode::IndexOutOfRange, "basis index out of range");
    }
    CVector v = CVector::Zero(dim);
    v(index) = 1.0;
    return PureState(std::move(v));
}

CMatrix PureState::projector() const { return amplitudes_ * amplitudes_.adjoint(); }

CMatrix embed(const CMatrix& op, int n_cells, int cell) {
    if (cell < 0 || cell >= n_cells) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "cell index " + std::to_string(cell) + " outside [0, " + std::to_string(n_cells) + ")");
    }
    const Eigen::Index d = op.rows();
    const CMatrix left = CMatrix::Identity(ipow(static_cast<int>(d), cell), ipow(static_cast<int>(d), cell));
    const Eigen::Index right_dim = ipow(static_cast<int>(d), n_cells - 1 - cell);
    const CMatrix right = CMatrix::Identity(right_dim, right_dim);
    return kron(kron(left, op), right);
}

CMatrix embed_cell_op(const RegisterModel& model, int cell) { return embed(model.cell_op, model.n_cells, cell); }

CMatrix collective_op(const RegisterModel& model, const CVector& weights) {
    if (weights.size() != model.n_cells) {
        throw Error(ErrorCode::DimensionMismatch, "collective_op expects one weight per cell");
    }
    const Eigen::Index d = model.dimension();
    CMatrix out = CMatrix::Zero(d, d);
    for (int i = 0; i < model.n_cells; ++i) {
        if (weights(i) != cplx{0.0, 0.0}) {
            out += weights(i) * embed_cell_op(model, i);
        }
    }
    return out;
}

CMatrix free_hamiltonian(const RegisterModel& model) {
    const Eigen::Index d = model.dimension();
    CMatrix out = CMatrix::Zero(d, d);
    for (int i = 0; i < model.n_cells; ++i) {
        out += embed(model.cell_hamiltonian, model.n_cells, i);
    }
    return out;
}

CMatrix self_hamiltonian(const RegisterModel& model) {
    CMatrix h = free_hamiltonian(model);
    if (model.interaction) {
        h += *model.interaction;
    }
    return h;
}

CMatrix CollectiveSpin::casimir() const { return sz * sz + 0.5 * (sp * sm + sm * sp); }

CollectiveSpin collective_spin(int n) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidArgument, "collective_spin needs n >= 1");
    }
    const Eigen::Index d = ipow(2, n);
    CollectiveSpin s{CMatrix::Zero(d, d), CMatrix::Zero(d, d), CMatrix::Zero(d, d)};
    for (int i = 0; i < n; ++i) {
        s.sz += embed(spin::sz(), n, i);
        s.sp += embed(spin::sp(), n, i);
        s.sm += embed(spin::sm(), n, i);
    }
    return s;
}

// Bond term S_i·S_j + ¼, i.e. the printed σᶻσᶻ + ½(σ⁺σ⁻ + σ⁻σ⁺) shifted by a
// constant so that the N = 4 singlet codewords sit at ±J.
CMatrix heisenberg_ring(int n, double j) {
    if (n < 3) {
        throw Error(ErrorCode::TooSmall, "a ring needs at least 3 qubits");
    }
    const Eigen::Index d = ipow(2, n);
    CMatrix h = CMatrix::Zero(d, d);
    if (j == 0.0) {
        return h;
    }
    std::vector<CMatrix> z, p, m;
    for (int i = 0; i < n; ++i) {
        z.push_back(embed(spin::sz(), n, i));
        p.push_back(embed(spin::sp(), n, i));
        m.push_back(embed(spin::sm(), n, i));
    }
    for (int a = 0; a < n; ++a) {
        const int b = (a + 1) % n;
        h += z[a] * z[b] + 0.5 * (p[a] * m[b] + m[a] * p[b]);
    }
    h += 0.25 * n * CMatrix::Identity(d, d);
    return j * h;
}

PureState su2_basis_state(int n, double s, double m, int copy) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidQuantumNumbers, "n must be >= 1");
    }
    const int two_s = twice(s, "s");
    const int two_m = twice(m, "m");
    if (two_s < 0 || two_s > n || (n - two_s) % 2 != 0 || std::abs(two_m) > two_s || (two_s - two_m) % 2 != 0) {
        throw Error(ErrorCode::InvalidQuantumNumbers, "no |S M> with S=" + std::to_string(s) +
                                                          ", M=" + std::to_string(m) + " for N=" + std::to_string(n));
    }
    if (copy < 0) {
        throw Error(ErrorCode::InvalidQuantumNumbers, "copy index must be >= 0");
    }
    const Eigen::Index dim = ipow(2, n);
    // Sᶻ is diagonal: the M block is spanned by basis states with (n + 2M)/2 up spins.
    const int n_up = (n + two_m) / 2;
    std::vector<Eigen::Index> block;
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        // bit set ↔ cell is ↓
        const int downs = __builtin_popcountll(static_cast<unsigned long long>(idx));
        if (n - downs == n_up) {
            block.push_back(idx);
        }
    }
    const auto k = static_cast<Eigen::Index>(block.size());
    const CMatrix casimir = collective_spin(n).casimir();
    CMatrix restricted(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
        for (Eigen::Index c = 0; c < k; ++c) {
            restricted(r, c) = casimir(block[r], block[c]);
        }
    }
    const HermEig eig = herm_eig(restricted);
    const double target = 0.25 * two_s * (two_s + 2);
    std::vector<Eigen::Index> cols;
    for (Eigen::Index q = 0; q < k; ++q) {
        if (std::abs(eig.values(q) - target) < 1e-8) {
            cols.push_back(q);
        }
    }
    if (copy >= static_cast<int>(cols.size())) {
        throw Error(ErrorCode::InvalidQuantumNumbers,
                    "copy " + std::to_string(copy) + " >= multiplicity " + std::to_string(cols.size()));
    }
    CMatrix eigvecs(k, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t q = 0; q < cols.size(); ++q) {
        eigvecs.col(static_cast<Eigen::Index>(q)) = eig.vectors.col(cols[q]);
    }
    // Canonical copies: project e_0, e_1, … onto the eigenspace and Gram–Schmidt.
    std::vector<CVector> accepted;
    for (Eigen::Index q = 0; q < k && static_cast<int>(accepted.size()) <= copy; ++q) {
        CVector v = eigvecs * eigvecs.row(q).adjoint();
        for (const auto& a : accepted) {
            v -= a.dot(v) * a;
        }
        const double norm = v.norm();
        if (norm < 1e-6) {
            continue;
        }
        v /= norm;
        for (Eigen::Index e = 0; e < k; ++e) {
            if (std::abs(v(e)) > 1e-10) {
                v *= std::conj(v(e)) / std::abs(v(e));
                break;
            }
        }
        accepted.push_back(std::move(v));
    }
    CVector full = CVector::Zero(dim);
    for (Eigen::Index r = 0; r < k; ++r) {
        full(block[r]) = accepted[static_cast<std::size_t>(copy)](r);
    }
    return PureState::normalized(full);
}

namespace {

PureState dimer_product(int n, double sign) {
    if (n < 2 || n % 2 != 0) {
        throw Error(ErrorCode::InvalidArgument, "dimer states need an even number of qubits");
    }
    CVector pair = CVector::Zero(4);
    pair(1) = 1.0 / std::sqrt(2.0);          // |↑↓⟩
    pair(2) = sign * 1.0 / std::sqrt(2.0);   // |↓↑⟩
    CMatrix v = CMatrix::Identity(1, 1);
    for (int k = 0; k < n / 2; ++k) {
        v = kron(v, pair);
    }
    return PureState::normalized(v.col(0));
}

}  // namespace

PureState dimer_singlet(int n) { return dimer_product(n, -1.0); }

PureState dimer_triplet(int n) { return dimer_product(n, 1.0); }

PureState dicke_state(int n, int excitations) {
    if (excitations < 0 || excitations > n) {
        throw Error(ErrorCode::InvalidQuantumNumbers, "excitation count outside [0, n]");
    }
    const CollectiveSpin s = collective_spin(n);
    const Eigen::Index dim = s.sz.rows();
    CVector v = CVector::Zero(dim);
    v(dim - 1) = 1.0;  // |↓…↓⟩
    for (int k = 0; k < excitations; ++k) {
        v = s.sp * v;
    }
    return PureState::normalized(v);
}

PureState uniform_superposition(int n_cells, int cell_dim) {
    const Eigen::Index dim = ipow(cell_dim, n_cells);
    return PureState::normalized(CVector::Ones(dim));
}

}  // namespace qreg
