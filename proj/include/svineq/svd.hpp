#pragma once

#include <svineq/error.hpp>
#include <svineq/matrix.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace svineq::svd {

/// Thin SVD M = U diag(s) V^H with r = min(m, n).
/// `u` is m x r and `v` is n x r, both column-major with orthonormal columns;
/// `s` is nonincreasing.
struct ThinSvd {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Scalar> u;
    std::vector<double> s;
    std::vector<Scalar> v;
    int sweeps = 0;
};

inline constexpr int kMaxSweeps = 80;

namespace detail {

/// Column-major dense buffer used by the kernels.
struct ColMajor {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Scalar> data;

    Scalar* col(std::size_t j) { return data.data() + j * rows; }
    const Scalar* col(std::size_t j) const { return data.data() + j * rows; }
};

/// Column-major copy of `m` (transposed = false) or of its adjoint (transposed = true).
inline ColMajor load(const Matrix& m, bool transposed) {
    ColMajor out;
    out.rows = transposed ? m.cols() : m.rows();
    out.cols = transposed ? m.rows() : m.cols();
    out.data.resize(out.rows * out.cols);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (transposed) {
                out.data[i * out.rows + j] = std::conj(m(i, j));
            } else {
                out.data[j * out.rows + i] = m(i, j);
            }
        }
    }
    return out;
}

/// One-sided (Hestenes) Jacobi on a tall buffer (rows >= cols). On return the
/// columns of `a` are mutually orthogonal and equal A*V; `v`, when given,
/// accumulates the rotations and must start as the identity. Returns the
/// number of sweeps performed.
inline int hestenes(ColMajor& a, ColMajor* v) {
    const std::size_t m = a.rows;
    const std::size_t n = a.cols;
    const double tol = std::numeric_limits<double>::epsilon() * static_cast<double>(std::max<std::size_t>(m, 1));

    for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                Scalar* ci = a.col(i);
                Scalar* cj = a.col(j);
                double alpha = 0.0;
                double beta = 0.0;
                Scalar gamma{0.0, 0.0};
                for (std::size_t r = 0; r < m; ++r) {
                    alpha += std::norm(ci[r]);
                    beta += std::norm(cj[r]);
                    gamma += std::conj(ci[r]) * cj[r];
                }
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= tol * std::sqrt(alpha) * std::sqrt(beta)) {
                    continue;
                }
                rotated = true;

                // Rotate [c_i, phase * c_j] by the real Jacobi angle that zeroes
                // the off-diagonal Gram entry.
                const Scalar phase = std::conj(gamma / g);
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;

                auto rotate = [&](Scalar* x, Scalar* y, std::size_t len) {
                    for (std::size_t r = 0; r < len; ++r) {
                        const Scalar xi = x[r];
                        const Scalar yj = y[r] * phase;
                        x[r] = c * xi - s * yj;
                        y[r] = s * xi + c * yj;
                    }
                };
                rotate(ci, cj, m);
                if (v != nullptr) {
                    rotate(v->col(i), v->col(j), v->rows);
                }
            }
        }
        if (!rotated) {
            return sweep;
        }
    }
    throw NumericalError("one-sided Jacobi SVD did not converge in " + std::to_string(kMaxSweeps) + " sweeps");
}

/// Euclidean column norm, scaled so tiny or huge entries neither underflow nor overflow.
inline double column_norm(const ColMajor& a, std::size_t j) {
    const Scalar* c = a.col(j);
    double scale = 0.0;
    for (std::size_t r = 0; r < a.rows; ++r) {
        scale = std::max({scale, std::abs(c[r].real()), std::abs(c[r].imag())});
    }
    if (scale == 0.0) {
        return 0.0;
    }
    double acc = 0.0;
    for (std::size_t r = 0; r < a.rows; ++r) {
        acc += std::norm(c[r] / scale);
    }
    return scale * std::sqrt(acc);
}

/// Indices sorting `norms` nonincreasing, ties by original position.
inline std::vector<std::size_t> descending_order(const std::vector<double>& norms) {
    std::vector<std::size_t> order(norms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });
    return order;
}

/// Replace the columns flagged in `missing` by unit vectors orthogonal to
/// every other column (Gram-Schmidt over the standard basis).
inline void complete_orthonormal(ColMajor& q, const std::vector<bool>& missing) {
    const std::size_t m = q.rows;
    std::vector<bool> done(q.cols);
    for (std::size_t j = 0; j < q.cols; ++j) {
        done[j] = !missing[j];
    }
    for (std::size_t j = 0; j < q.cols; ++j) {
        if (done[j]) {
            continue;
        }
        std::vector<Scalar> best;
        double best_norm = -1.0;
        for (std::size_t e = 0; e < m; ++e) {
            std::vector<Scalar> w(m);
            w[e] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t l = 0; l < q.cols; ++l) {
                    if (!done[l]) {
                        continue;
                    }
                    const Scalar* ql = q.col(l);
                    Scalar proj{0.0, 0.0};
                    for (std::size_t r = 0; r < m; ++r) {
                        proj += std::conj(ql[r]) * w[r];
                    }
                    for (std::size_t r = 0; r < m; ++r) {
                        w[r] -= proj * ql[r];
                    }
                }
            }
            double nrm = 0.0;
            for (const auto& z : w) {
                nrm += std::norm(z);
            }
            nrm = std::sqrt(nrm);
            if (nrm > best_norm) {
                best_norm = nrm;
                best = std::move(w);
            }
        }
        Scalar* qj = q.col(j);
        for (std::size_t r = 0; r < m; ++r) {
            qj[r] = best[r] / best_norm;
        }
        done[j] = true;
    }
}

} // namespace detail

/// Singular values of `m`, nonincreasing, length min(rows, cols).
inline std::vector<double> singular_values(const Matrix& m) {
    detail::ColMajor a = detail::load(m, m.rows() < m.cols());
    detail::hestenes(a, nullptr);
    std::vector<double> s(a.cols);
    for (std::size_t j = 0; j < a.cols; ++j) {
        s[j] = detail::column_norm(a, j);
    }
    std::stable_sort(s.begin(), s.end(), std::greater<>());
    return s;
}

inline ThinSvd thin_svd(const Matrix& m) {
    const bool wide = m.rows() < m.cols();
    detail::ColMajor a = detail::load(m, wide);
    const std::size_t r = a.cols;

    detail::ColMajor w;
    w.rows = r;
    w.cols = r;
    w.data.assign(r * r, Scalar{0.0, 0.0});
    for (std::size_t i = 0; i < r; ++i) {
        w.data[i * r + i] = 1.0;
    }

    ThinSvd out;
    out.rows = m.rows();
    out.cols = m.cols();
    out.sweeps = detail::hestenes(a, &w);

    std::vector<double> norms(r);
    for (std::size_t j = 0; j < r; ++j) {
        norms[j] = detail::column_norm(a, j);
    }
    const auto order = detail::descending_order(norms);

    // `a` now holds (tall side) * w; normalising its columns gives the tall factor.
    detail::ColMajor tall{a.rows, r, std::vector<Scalar>(a.rows * r)};
    detail::ColMajor square{r, r, std::vector<Scalar>(r * r)};
    std::vector<bool> missing(r, false);
    out.s.resize(r);
    for (std::size_t k = 0; k < r; ++k) {
        const std::size_t src = order[k];
        out.s[k] = norms[src];
        std::copy_n(w.col(src), r, square.col(k));
        if (norms[src] == 0.0) {
            missing[k] = true;
            continue;
        }
        for (std::size_t row = 0; row < a.rows; ++row) {
            tall.col(k)[row] = a.col(src)[row] / norms[src];
        }
    }
    detail::complete_orthonormal(tall, missing);

    // Tall case: M = tall * S * square^H. Wide case: M^H = tall * S * square^H.
    if (wide) {
        out.u = std::move(square.data);
        out.v = std::move(tall.data);
    } else {
        out.u = std::move(tall.data);
        out.v = std::move(square.data);
    }
    return out;
}

/// Orthonormal polar factor U V^H of `m` (rows <= cols gives orthonormal rows).
/// For rank-deficient input any orthonormal completion is returned.
inline Matrix polar_factor(const Matrix& m) {
    const ThinSvd f = thin_svd(m);
    const std::size_t r = f.s.size();
    std::vector<Scalar> out(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Scalar acc{0.0, 0.0};
            for (std::size_t k = 0; k < r; ++k) {
                acc += f.u[k * m.rows() + i] * std::conj(f.v[k * m.cols() + j]);
            }
            if (m.field() == Field::real) {
                acc.imag(0.0);
            }
            out[i * m.cols() + j] = acc;
        }
    }
    return Matrix(m.rows(), m.cols(), m.field(), std::move(out));
}

} // namespace svineq::svd
