#include "qreg/bath.hpp"

#include "qreg/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qreg {

namespace {

constexpr double kPsdSlack = 1e-10;

void check_square_n(const CMatrix& m, Eigen::Index n, const char* what) {
    if (m.rows() != n || m.cols() != n) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be " + std::to_string(n) + "x" +
                                                      std::to_string(n));
    }
}

void check_hermitian(const CMatrix& m, const char* what) {
    if (!is_hermitian(m, 1e-10)) {
        throw Error(ErrorCode::NotHermitian, std::string(what) + " is not Hermitian");
    }
}

double min_over_max(const CMatrix& m, double& max_eig) {
    const HermEig e = herm_eig(0.5 * (m + m.adjoint()));
    max_eig = e.values.size() ? e.values(0) : 0.0;
    return e.values.size() ? e.values(e.values.size() - 1) : 0.0;
}

void check_rates(double gm, double gp) {
    if (gm < 0.0 || gp < 0.0) {
        throw Error(ErrorCode::NotPositive, "bath rates must be nonnegative");
    }
    if (gm < gp) {
        throw Error(ErrorCode::OrderingViolated, "gamma0_minus must be >= gamma0_plus (emission dominates)");
    }
}

BathSpec from_shape(const CMatrix& shape, double gm, double gp, double delta_ratio) {
    check_rates(gm, gp);
    BathSpec b{gm * shape, gp * shape, std::nullopt, std::nullopt};
    if (delta_ratio != 0.0) {
        b.delta_minus = delta_ratio * b.gamma_minus;
        b.delta_plus = delta_ratio * b.gamma_plus;
    }
    return b;
}

void require_n(int n) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidArgument, "bath needs at least one cell");
    }
}

}  // namespace

void BathSpec::validate() const {
    const Eigen::Index n = gamma_minus.rows();
    check_square_n(gamma_minus, n, "gamma_minus");
    check_square_n(gamma_plus, n, "gamma_plus");
    check_hermitian(gamma_minus, "gamma_minus");
    check_hermitian(gamma_plus, "gamma_plus");
    if (delta_minus) {
        check_square_n(*delta_minus, n, "delta_minus");
        check_hermitian(*delta_minus, "delta_minus");
    }
    if (delta_plus) {
        check_square_n(*delta_plus, n, "delta_plus");
        check_hermitian(*delta_plus, "delta_plus");
    }
    double top_m = 0.0;
    double top_p = 0.0;
    const double low_m = min_over_max(gamma_minus, top_m);
    const double low_p = min_over_max(gamma_plus, top_p);
    if (low_m < -kPsdSlack * std::max(top_m, 0.0)) {
        throw Error(ErrorCode::NotPositive, "gamma_minus has eigenvalue " + std::to_string(low_m));
    }
    if (low_p < -kPsdSlack * std::max(top_p, 0.0)) {
        throw Error(ErrorCode::NotPositive, "gamma_plus has eigenvalue " + std::to_string(low_p));
    }
    double top_d = 0.0;
    const double low_d = min_over_max(gamma_minus - gamma_plus, top_d);
    if (low_d < -kPsdSlack * std::max(top_m, 0.0)) {
        throw Error(ErrorCode::OrderingViolated,
                    "gamma_minus - gamma_plus has eigenvalue " + std::to_string(low_d));
    }
}

BathSpec cell_limit(int n, double gamma0_minus, double gamma0_plus, double delta_ratio) {
    require_n(n);
    return from_shape(CMatrix::Identity(n, n), gamma0_minus, gamma0_plus, delta_ratio);
}

BathSpec replica_symmetric(int n, double gamma0_minus, double gamma0_plus, double delta_ratio) {
    require_n(n);
    return from_shape(CMatrix::Ones(n, n), gamma0_minus, gamma0_plus, delta_ratio);
}

BathSpec clustered(const std::vector<std::vector<int>>& partition, double gamma0_minus, double gamma0_plus,
                   double delta_ratio) {
    int n = 0;
    for (const auto& c : partition) {
        n += static_cast<int>(c.size());
    }
    if (n == 0) {
        throw Error(ErrorCode::InvalidPartition, "partition is empty");
    }
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    for (std::size_t c = 0; c < partition.size(); ++c) {
        if (partition[c].empty()) {
            throw Error(ErrorCode::InvalidPartition, "cluster " + std::to_string(c) + " is empty");
        }
        for (int i : partition[c]) {
            if (i < 0 || i >= n) {
                throw Error(ErrorCode::InvalidPartition, "index " + std::to_string(i) + " outside 0.." +
                                                             std::to_string(n - 1) + " (gap in partition)");
            }
            if (owner[static_cast<std::size_t>(i)] != -1) {
                throw Error(ErrorCode::InvalidPartition, "index " + std::to_string(i) + " appears twice");
            }
            owner[static_cast<std::size_t>(i)] = static_cast<int>(c);
        }
    }
    CMatrix shape = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (owner[static_cast<std::size_t>(i)] == owner[static_cast<std::size_t>(j)]) {
                shape(i, j) = 1.0;
            }
        }
    }
    return from_shape(shape, gamma0_minus, gamma0_plus, delta_ratio);
}

BathSpec exponential_decay(int n, double gamma0_minus, double gamma0_plus, double xi, double delta_ratio) {
    require_n(n);
    if (!(xi > 0.0)) {
        throw Error(ErrorCode::NonPositiveXi, "correlation length must be > 0, got " + std::to_string(xi));
    }
    CMatrix shape(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            shape(i, j) = std::exp(-std::abs(i - j) / xi);
        }
    }
    return from_shape(shape, gamma0_minus, gamma0_plus, delta_ratio);
}

BathSpec gauge_phased(const BathSpec& base, const RVector& phases) {
    const int n = base.n_cells();
    if (phases.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "gauge_phased expects one phase per cell");
    }
    CVector u(n);
    for (int i = 0; i < n; ++i) {
        u(i) = std::polar(1.0, phases(i));
    }
    const auto phase = [&u](const CMatrix& m) -> CMatrix { return u.asDiagonal() * m * u.conjugate().asDiagonal(); };
    // Δ_ij multiplies A_i†A_j while Γ_ij multiplies A_i ρ A_j†, so Δ takes the conjugate phases.
    const auto phase_conj = [&u](const CMatrix& m) -> CMatrix {
        return u.conjugate().asDiagonal() * m * u.asDiagonal();
    };
    BathSpec out{phase(base.gamma_minus), phase(base.gamma_plus), std::nullopt, std::nullopt};
    if (base.delta_minus) {
        out.delta_minus = phase_conj(*base.delta_minus);
    }
    if (base.delta_plus) {
        out.delta_plus = phase_conj(*base.delta_plus);
    }
    return out;
}

BathSpec microscopic_coefficients(const std::vector<BathMode>& modes, double epsilon, double linewidth) {
    if (modes.empty()) {
        throw Error(ErrorCode::EmptyModeList, "microscopic_coefficients needs at least one mode");
    }
    if (!(linewidth > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "linewidth must be > 0");
    }
    const Eigen::Index n = modes.front().coupling.size();
    if (n < 1) {
        throw Error(ErrorCode::InvalidArgument, "mode couplings must have one entry per cell");
    }
    CMatrix gm = CMatrix::Zero(n, n);
    CMatrix gp = CMatrix::Zero(n, n);
    CMatrix dm = CMatrix::Zero(n, n);
    CMatrix dp = CMatrix::Zero(n, n);
    for (const auto& mode : modes) {
        if (mode.coupling.size() != n) {
            throw Error(ErrorCode::DimensionMismatch, "mode couplings differ in length");
        }
        if (mode.occupation < 0.0) {
            throw Error(ErrorCode::NotPositive, "mode occupation must be >= 0");
        }
        const CMatrix outer = mode.coupling * mode.coupling.adjoint();  // g_ki ḡ_kj
        const double detuning = mode.omega - epsilon;
        // π·δ_w(x) with δ_w the normalized Lorentzian of half-width w.
        const double pi_delta = linewidth / (detuning * detuning + linewidth * linewidth);
        gm += pi_delta * (mode.occupation + 1.0) * outer;
        gp += pi_delta * mode.occupation * outer;
        if (std::abs(detuning) >= linewidth) {
            dm += (mode.occupation + 1.0) / detuning * outer;
            dp += mode.occupation / detuning * outer;
        }
    }
    return BathSpec{gm, gp, dm, dp};
}

}  // namespace qreg
