#pragma once

#include <svineq/error.hpp>
#include <svineq/matrix.hpp>
#include <svineq/parallel.hpp>
#include <svineq/rng.hpp>
#include <svineq/spectrum.hpp>
#include <svineq/svd.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace svineq {

// Semi-unitary trace extrema over U (k x m) and V (k x n), U U^H = V V^H = I_k:
//   max Re tr(U B V^H) =  sum_{i<=k} sigma_i(B)
//   min Re tr(U B V^H) = -sum_{i<=k} sigma_i(B)
// For rectangular B (m x n) the product U B V^H is k x k.

enum class TraceMode { min, max };

inline const char* to_string(TraceMode m) { return m == TraceMode::min ? "min" : "max"; }

struct SemiUnitaryPair {
    Matrix u; ///< k x m
    Matrix v; ///< k x n
    std::size_t k;
};

struct OracleConfig {
    std::uint64_t seed = 0;
    std::size_t restarts = 20;
    std::size_t max_iterations = 500;
    double convergence = 1e-12; ///< stop once one sweep improves the objective by less than this
    unsigned threads = 1;
};

struct TraceExtremumReport {
    TraceMode mode = TraceMode::max;
    double closed_form = 0.0;
    double oracle_value = 0.0;
    SemiUnitaryPair oracle_pair;
    std::size_t iterations = 0; ///< sweeps used by the winning restart
    std::size_t best_restart = 0;
    bool converged = false;
    double gap = 0.0;
};

/// Raised when no restart converges; carries the best pair found anyway.
class OracleNotConverged : public NumericalError {
public:
    explicit OracleNotConverged(TraceExtremumReport best)
        : NumericalError("trace oracle did not converge on any restart"), best_(std::move(best)) {}

    const TraceExtremumReport& best() const noexcept { return best_; }

private:
    TraceExtremumReport best_;
};

namespace detail {

inline void check_trace_k(const Matrix& b, std::size_t k) {
    if (k < 1 || k > b.min_dim()) {
        throw IndexError("k = " + std::to_string(k) + " outside 1.." + std::to_string(b.min_dim()));
    }
}

/// Orthonormalise the rows of `m` in place (modified Gram-Schmidt, two passes).
inline Matrix orthonormalize_rows(const Matrix& m) {
    const std::size_t k = m.rows();
    const std::size_t n = m.cols();
    std::vector<Scalar> rows(m.data().begin(), m.data().end());
    for (std::size_t i = 0; i < k; ++i) {
        Scalar* ri = rows.data() + i * n;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t l = 0; l < i; ++l) {
                const Scalar* rl = rows.data() + l * n;
                Scalar proj{0.0, 0.0};
                for (std::size_t c = 0; c < n; ++c) {
                    proj += std::conj(rl[c]) * ri[c];
                }
                for (std::size_t c = 0; c < n; ++c) {
                    ri[c] -= proj * rl[c];
                }
            }
        }
        double nrm = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            nrm += std::norm(ri[c]);
        }
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) {
            throw NumericalError("orthonormalize_rows: linearly dependent rows");
        }
        for (std::size_t c = 0; c < n; ++c) {
            ri[c] /= nrm;
            if (m.field() == Field::real) {
                ri[c].imag(0.0);
            }
        }
    }
    return Matrix(k, n, m.field(), std::move(rows));
}

struct RestartOutcome {
    std::optional<SemiUnitaryPair> pair;
    double value = -std::numeric_limits<double>::infinity();
    std::size_t iterations = 0;
    bool converged = false;
};

} // namespace detail

inline double max_trace_closed_form(const Matrix& b, std::size_t k) {
    detail::check_trace_k(b, k);
    return ky_fan_sum(singular_values(b), k);
}

inline double min_trace_closed_form(const Matrix& b, std::size_t k) { return 0.0 - max_trace_closed_form(b, k); }

/// The value -sum_{i<=k} sigma_{n-i+1}(B) that has been claimed as the minimum
/// of Re tr(U B V^H). It is not the minimum whenever sigma_k(B) > sigma_n(B).
inline double claimed_min_trace(const Matrix& b, std::size_t k) {
    if (!b.is_square()) {
        throw DimensionError("claimed_min_trace is stated for square matrices only");
    }
    detail::check_trace_k(b, k);
    return 0.0 - tail_sum(singular_values(b), k);
}

/// Re tr(U B V^H).
inline double trace_objective(const Matrix& u, const Matrix& b, const Matrix& v) {
    if (u.cols() != b.rows() || v.cols() != b.cols() || u.rows() != v.rows()) {
        throw DimensionError("trace_objective: U must be k x m and V k x n for m x n B");
    }
    const Matrix ub = multiply(u, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < ub.rows(); ++i) {
        for (std::size_t j = 0; j < ub.cols(); ++j) {
            acc += (ub(i, j) * std::conj(v(i, j))).real();
        }
    }
    return acc;
}

/// ||X X^H - I||_F.
inline double semi_unitary_error(const Matrix& x) {
    const Matrix g = multiply(x, adjoint(x));
    double acc = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i) {
        for (std::size_t j = 0; j < g.cols(); ++j) {
            acc += std::norm(g(i, j) - (i == j ? Scalar{1.0, 0.0} : Scalar{0.0, 0.0}));
        }
    }
    return std::sqrt(acc);
}

/// k x n matrix with orthonormal rows from orthonormalised Gaussian rows.
inline Matrix random_semi_unitary(std::size_t k, std::size_t n, Field field, RandomStream& rng) {
    std::vector<Scalar> g(k * n);
    for (auto& z : g) {
        z = rng.scalar(field);
    }
    return detail::orthonormalize_rows(Matrix(k, n, field, std::move(g)));
}

/// Certify the trace extremum numerically by alternating Procrustes updates:
/// V <- polar(U B) maximises over V for fixed U, U <- polar(V B^H) maximises
/// over U for fixed V. The objective is monotone nondecreasing per sweep.
/// Restart r draws its start from stream (cfg.seed, r); the best restart wins,
/// ties going to the lowest index, so the result does not depend on threads.
/// mode = min runs the maximisation on -B and negates.
inline TraceExtremumReport trace_oracle(const Matrix& b, std::size_t k, TraceMode mode, const OracleConfig& cfg = {}) {
    detail::check_trace_k(b, k);
    if (cfg.restarts < 1) {
        throw ConfigError("trace oracle needs at least one restart");
    }
    const Matrix target = mode == TraceMode::max ? b : negate(b);
    const Matrix target_h = adjoint(target);

    std::vector<detail::RestartOutcome> outcomes(cfg.restarts);
    parallel_for(cfg.restarts, cfg.threads, [&](std::size_t r) {
        RandomStream rng(cfg.seed, r);
        Matrix u = random_semi_unitary(k, b.rows(), b.field(), rng);
        Matrix v(k, b.cols(), b.field());
        double prev = -std::numeric_limits<double>::infinity();
        detail::RestartOutcome& out = outcomes[r];
        for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
            v = svd::polar_factor(multiply(u, target));
            u = svd::polar_factor(multiply(v, target_h));
            const double value = trace_objective(u, target, v);
            out.iterations = it;
            if (value - prev < cfg.convergence) {
                out.converged = true;
                prev = value;
                break;
            }
            prev = value;
        }
        out.value = prev;
        out.pair = SemiUnitaryPair{std::move(u), std::move(v), k};
    });

    std::size_t winner = 0;
    bool any_converged = false;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        if (outcomes[r].value > outcomes[winner].value) {
            winner = r;
        }
        any_converged = any_converged || outcomes[r].converged;
    }
    const detail::RestartOutcome& w = outcomes[winner];

    TraceExtremumReport report{mode,
                               mode == TraceMode::max ? max_trace_closed_form(b, k) : min_trace_closed_form(b, k),
                               mode == TraceMode::max ? w.value : -w.value,
                               *w.pair,
                               w.iterations,
                               winner,
                               w.converged,
                               0.0};
    report.gap = std::abs(report.closed_form - report.oracle_value);
    if (!any_converged) {
        throw OracleNotConverged(std::move(report));
    }
    return report;
}

} // namespace svineq
