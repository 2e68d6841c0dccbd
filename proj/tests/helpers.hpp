#pragma once

#include "qreg/bath.hpp"
#include "qreg/linalg.hpp"
#include "qreg/register.hpp"

#include <cstdint>
#include <random>

namespace qreg::testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

    CMatrix gaussian(Eigen::Index rows, Eigen::Index cols) {
        CMatrix m(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j) {
            for (Eigen::Index i = 0; i < rows; ++i) {
                m(i, j) = cplx(normal(), normal());
            }
        }
        return m;
    }

    CMatrix hermitian(Eigen::Index n) {
        const CMatrix g = gaussian(n, n);
        return 0.5 * (g + g.adjoint());
    }

    /// Random full-rank density matrix.
    CMatrix density(Eigen::Index n) {
        const CMatrix g = gaussian(n, n);
        CMatrix rho = g * g.adjoint();
        return rho / rho.trace();
    }

    PureState pure(Eigen::Index n) { return PureState::normalized(gaussian(n, 1).col(0)); }

    /// Random PSD matrix of rank ≤ r scaled to max eigenvalue ~ scale.
    CMatrix psd(Eigen::Index n, Eigen::Index r, double scale) {
        const CMatrix b = gaussian(n, r);
        CMatrix m = b * b.adjoint();
        return scale * m / m.norm();
    }

    /// Γ⁺ = P, Γ⁻ = P + Q with random PSD P, Q; optionally complex.
    BathSpec bath(int n, bool complex_entries = true) {
        CMatrix p = psd(n, integer(1, n), uniform(0.0, 0.1));
        CMatrix q = psd(n, integer(1, n), uniform(0.01, 0.2));
        if (!complex_entries) {
            p = p.real().cast<cplx>();
            q = q.real().cast<cplx>();
            // The real part of a PSD matrix is PSD.
        }
        return BathSpec{p + q, p, std::nullopt, std::nullopt};
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

inline double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace qreg::testing
