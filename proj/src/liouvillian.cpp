#include "qreg/liouvillian.hpp"

#include "qreg/error.hpp"

#include <algorithm>
#include <string>

namespace qreg {

namespace {

constexpr double kClampTol = 1e-10;

// Dense fallback above this fill fraction.
constexpr double kSparseFill = 0.25;

template <typename Sparse>
std::optional<Sparse> maybe_sparse(const CMatrix& m) {
    const auto nnz = (m.array() != cplx{}).count();
    if (static_cast<double>(nnz) > kSparseFill * static_cast<double>(m.size())) {
        return std::nullopt;
    }
    return Sparse(m.sparseView());
}

void check_spec_size(const RegisterModel& model, const BathSpec& spec) {
    const Eigen::Index n = model.n_cells;
    const auto bad = [n](const CMatrix& m) { return m.rows() != n || m.cols() != n; };
    if (bad(spec.gamma_minus) || bad(spec.gamma_plus) || (spec.delta_minus && bad(*spec.delta_minus)) ||
        (spec.delta_plus && bad(*spec.delta_plus))) {
        throw Error(ErrorCode::DimensionMismatch,
                    "bath matrices must be " + std::to_string(n) + "x" + std::to_string(n) + " for this register");
    }
}

std::vector<CMatrix> cell_ops(const RegisterModel& model) {
    std::vector<CMatrix> ops;
    ops.reserve(static_cast<std::size_t>(model.n_cells));
    for (int i = 0; i < model.n_cells; ++i) {
        ops.push_back(embed_cell_op(model, i));
    }
    return ops;
}

}  // namespace

double LindbladSet::max_rate() const {
    double m = 0.0;
    for (const auto& t : terms) {
        m = std::max(m, t.rate);
    }
    return m;
}

LindbladSet canonical_form(const RegisterModel& model, const BathSpec& spec) {
    check_spec_size(model, spec);
    const HermEig em = herm_eig(spec.gamma_minus);
    const HermEig ep = herm_eig(spec.gamma_plus);
    const double top = std::max({em.values.size() ? em.values(0) : 0.0, ep.values.size() ? ep.values(0) : 0.0, 0.0});
    const std::vector<CMatrix> a = cell_ops(model);

    LindbladSet out;
    const auto emit = [&](const HermEig& e, Sector sector) {
        for (Eigen::Index mu = 0; mu < e.values.size(); ++mu) {
            double rate = e.values(mu);
            if (rate < 0.0 && -rate <= kClampTol * top) {
                rate = 0.0;
            }
            if (rate <= kRateCutoff * top) {
                continue;
            }
            CMatrix op = CMatrix::Zero(model.dimension(), model.dimension());
            for (int i = 0; i < model.n_cells; ++i) {
                op += e.vectors(i, mu) * a[static_cast<std::size_t>(i)];
            }
            if (sector == Sector::Plus) {
                op.adjointInPlace();
            }
            out.terms.push_back({rate, std::move(op), sector});
        }
    };
    emit(em, Sector::Minus);
    emit(ep, Sector::Plus);
    return out;
}

CMatrix lamb_shift(const RegisterModel& model, const BathSpec& spec) {
    check_spec_size(model, spec);
    const Eigen::Index d = model.dimension();
    CMatrix h = CMatrix::Zero(d, d);
    if (!spec.delta_minus && !spec.delta_plus) {
        return h;
    }
    const std::vector<CMatrix> a = cell_ops(model);
    for (int i = 0; i < model.n_cells; ++i) {
        for (int j = 0; j < model.n_cells; ++j) {
            const auto& ai = a[static_cast<std::size_t>(i)];
            const auto& aj = a[static_cast<std::size_t>(j)];
            if (spec.delta_minus && (*spec.delta_minus)(i, j) != cplx{}) {
                h += (*spec.delta_minus)(i, j) * (ai.adjoint() * aj);
            }
            if (spec.delta_plus && (*spec.delta_plus)(j, i) != cplx{}) {
                h += (*spec.delta_plus)(j, i) * (ai * aj.adjoint());
            }
        }
    }
    return 0.5 * (h + h.adjoint());
}

Liouvillian::Liouvillian(CMatrix hamiltonian, LindbladSet lindblad)
    : hamiltonian_(std::move(hamiltonian)), lindblad_(std::move(lindblad)) {
    require_square(hamiltonian_, "Hamiltonian");
    if (!is_hermitian(hamiltonian_, 1e-10)) {
        throw Error(ErrorCode::NotHermitian, "Liouvillian Hamiltonian is not Hermitian");
    }
    const Eigen::Index d = hamiltonian_.rows();
    effective_ = -kI * hamiltonian_;
    for (const auto& t : lindblad_.terms) {
        if (t.op.rows() != d || t.op.cols() != d) {
            throw Error(ErrorCode::DimensionMismatch, "Lindblad operator does not match Hamiltonian dimension");
        }
        if (t.rate < 0.0) {
            throw Error(ErrorCode::NotPositive, "Lindblad rates must be nonnegative");
        }
        effective_ -= 0.5 * t.rate * (t.op.adjoint() * t.op);
        sparse_ops_.push_back(maybe_sparse<SparseOp>(t.op));
    }
    sparse_effective_ = maybe_sparse<SparseOp>(effective_);
}

Liouvillian Liouvillian::with_hamiltonian(CMatrix h) const { return Liouvillian(std::move(h), lindblad_); }

Liouvillian assemble(const RegisterModel& model, const BathSpec& spec) {
    model.validate();
    CMatrix h = self_hamiltonian(model) + lamb_shift(model, spec);
    return Liouvillian(std::move(h), canonical_form(model, spec));
}

CMatrix apply(const Liouvillian& liouv, const CMatrix& rho) {
    const Eigen::Index d = liouv.dimension();
    if (rho.rows() != d || rho.cols() != d) {
        throw Error(ErrorCode::DimensionMismatch, "density matrix must be " + std::to_string(d) + "x" +
                                                      std::to_string(d));
    }
    CMatrix out;
    if (liouv.sparse_effective_) {
        const auto& k = *liouv.sparse_effective_;
        out = k * rho;
        out += rho * k.adjoint();
    } else {
        out = liouv.effective_ * rho;
        out.noalias() += rho * liouv.effective_.adjoint();
    }
    CMatrix tmp(d, d);
    const auto& terms = liouv.lindblad_.terms;
    for (std::size_t m = 0; m < terms.size(); ++m) {
        if (const auto& sp = liouv.sparse_ops_[m]) {
            tmp = *sp * rho;
            out += terms[m].rate * (tmp * sp->adjoint());
        } else {
            tmp.noalias() = terms[m].op * rho;
            out.noalias() += terms[m].rate * (tmp * terms[m].op.adjoint());
        }
    }
    return out;
}

CMatrix apply_dissipator(const LindbladSet& lindblad, const CMatrix& rho) {
    CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
    for (const auto& t : lindblad.terms) {
        if (t.op.rows() != rho.rows() || rho.rows() != rho.cols()) {
            throw Error(ErrorCode::DimensionMismatch, "density matrix does not match Lindblad operators");
        }
        const CMatrix ldl = t.op.adjoint() * t.op;
        out += t.rate * (t.op * rho * t.op.adjoint() - 0.5 * (ldl * rho + rho * ldl));
    }
    return out;
}

CMatrix superoperator_matrix(const Liouvillian& liouv) {
    const Eigen::Index d = liouv.dimension();
    if (d > kMaxSuperoperatorDim) {
        throw Error(ErrorCode::TooLarge, "superoperator needs D <= 64, got D = " + std::to_string(d));
    }
    const CMatrix id = CMatrix::Identity(d, d);
    const CMatrix& h = liouv.hamiltonian();
    CMatrix m = -kI * (kron(id, h) - kron(h.transpose(), id));
    for (const auto& t : liouv.lindblad().terms) {
        const CMatrix ldl = t.op.adjoint() * t.op;
        m += t.rate * (kron(t.op.conjugate(), t.op) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id));
    }
    return m;
}

CVector vec(const CMatrix& m) { return m.reshaped(); }

CMatrix unvec(const CVector& v, Eigen::Index dim) {
    if (v.size() != dim * dim) {
        throw Error(ErrorCode::DimensionMismatch, "unvec: length is not dim^2");
    }
    return v.reshaped(dim, dim);
}

namespace reference {

CMatrix apply_double_sum(const RegisterModel& model, const BathSpec& spec, const CMatrix& h, const CMatrix& rho) {
    check_spec_size(model, spec);
    const std::vector<CMatrix> a = cell_ops(model);
    CMatrix out = kI * (rho * h - h * rho);
    const auto anti = [&rho](const CMatrix& x) -> CMatrix { return x * rho + rho * x; };
    for (int i = 0; i < model.n_cells; ++i) {
        for (int j = 0; j < model.n_cells; ++j) {
            const auto& ai = a[static_cast<std::size_t>(i)];
            const auto& aj = a[static_cast<std::size_t>(j)];
            out += spec.gamma_minus(i, j) * (ai * rho * aj.adjoint());
            out -= 0.5 * spec.gamma_minus(j, i) * anti(ai.adjoint() * aj);
            out += spec.gamma_plus(j, i) * (ai.adjoint() * rho * aj);
            out -= 0.5 * spec.gamma_plus(i, j) * anti(ai * aj.adjoint());
        }
    }
    return out;
}

}  // namespace reference

}  // namespace qreg
