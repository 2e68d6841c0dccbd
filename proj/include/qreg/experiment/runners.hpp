// runners.hpp — turn an ExperimentConfig into result tables.
#pragma once

#include "qreg/bath.hpp"
#include "qreg/codes.hpp"
#include "qreg/experiment/config.hpp"
#include "qreg/register.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace qreg::experiment {

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // row-major, each row has columns.size() entries
    Json provenance;

    /// Throws InvalidArgument unless rectangular and finite.
    void check() const;
};

RegisterModel build_register(const ExperimentConfig& cfg);
BathSpec build_bath(const ExperimentConfig& cfg);
PureState build_state(const ExperimentConfig& cfg, std::size_t index);

/// Times stored by a run: multiples of the effective step at the configured stride, plus t_end.
std::vector<double> output_grid(const SolverConfig& solver);

/// Columns t, then F_s, delta_s, E_s per state s (suffixed with the sweep point
/// when a sweep is configured), then dF/ddelta when compare is set.
ResultTable run_simulate(const ExperimentConfig& cfg);

/// Columns <parameter>, then rate_s (first-order rate 1/τ₁) and divergent_s
/// (1 when the rate is below kDivergentRate) per state.
ResultTable run_tau_sweep(const ExperimentConfig& cfg);

inline constexpr double kDivergentRate = 1e-10;

struct CodesRun {
    ResultTable table;  // one row per basis vector: column, rate, eigen_residual
    CodeSubspace code;
};
CodesRun run_codes(const ExperimentConfig& cfg);

/// Evaluates fn(0..count−1) on up to `workers` threads; results keep index order.
/// The first exception thrown by any task is rethrown after all workers stop.
template <typename T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& fn, unsigned workers = 0) {
    std::vector<T> out(count);
    if (count == 0) {
        return out;
    }
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::atomic_flag error_claimed = ATOMIC_FLAG_INIT;
    const auto work = [&] {
        for (std::size_t i = next++; i < count && !failed; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                if (!error_claimed.test_and_set()) {
                    first_error = std::current_exception();
                }
                failed = true;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back(work);
    }
    work();
    for (auto& t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
    return out;
}

}  // namespace qreg::experiment
