#pragma once

#include <svineq/error.hpp>
#include <svineq/matrix.hpp>
#include <svineq/svd.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace svineq {

/// Singular values sigma_1 >= sigma_2 >= ... >= 0 of one matrix.
/// Values are never clamped: tiny singular values are kept as computed.
class SingularSpectrum {
public:
    SingularSpectrum(std::vector<double> values, std::size_t rows, std::size_t cols)
        : values_(std::move(values)), rows_(rows), cols_(cols) {
        if (values_.size() != std::min(rows, cols)) {
            throw DimensionError("spectrum length must equal min(rows, cols)");
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!(values_[i] >= 0.0) || (i + 1 < values_.size() && values_[i] < values_[i + 1])) {
                throw Error("singular values must be nonnegative and nonincreasing");
            }
        }
    }

    /// Spectrum literal with source shape n x n.
    explicit SingularSpectrum(std::vector<double> values)
        : SingularSpectrum(values, values.size(), values.size()) {}

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::size_t source_rows() const noexcept { return rows_; }
    std::size_t source_cols() const noexcept { return cols_; }

    /// 1-based sigma_i.
    double operator[](std::size_t i) const {
        if (i < 1 || i > values_.size()) {
            throw IndexError("singular value index " + std::to_string(i) + " outside 1.." +
                             std::to_string(values_.size()));
        }
        return values_[i - 1];
    }

private:
    std::vector<double> values_;
    std::size_t rows_;
    std::size_t cols_;
};

inline SingularSpectrum singular_values(const Matrix& m) {
    return SingularSpectrum(svd::singular_values(m), m.rows(), m.cols());
}

namespace detail {

inline void check_k(std::size_t k, std::size_t len) {
    if (k < 1 || k > len) {
        throw IndexError("k = " + std::to_string(k) + " outside 1.." + std::to_string(len));
    }
}

} // namespace detail

/// Ky Fan k-sum: sigma_1 + ... + sigma_k, accumulated left to right.
inline double ky_fan_sum(const SingularSpectrum& s, std::size_t k) {
    detail::check_k(k, s.size());
    return std::accumulate(s.values().begin(), s.values().begin() + static_cast<std::ptrdiff_t>(k), 0.0);
}

/// Sum of the k smallest singular values sigma_{n-k+1} + ... + sigma_n.
inline double tail_sum(const SingularSpectrum& s, std::size_t k) {
    detail::check_k(k, s.size());
    return std::accumulate(s.values().end() - static_cast<std::ptrdiff_t>(k), s.values().end(), 0.0);
}

/// s_i = |sigma_i(A) - sigma_i(B)| in index order (`raw`) and sorted
/// nonincreasing (`sorted`, stable: ties keep index order). `order[j]` is the
/// 0-based raw index of sorted[j].
struct AbsDiffSpectrum {
    std::vector<double> raw;
    std::vector<double> sorted;
    std::vector<std::size_t> order;
};

inline AbsDiffSpectrum abs_diff_spectrum(const SingularSpectrum& a, const SingularSpectrum& b) {
    if (a.size() != b.size()) {
        throw DimensionError("abs_diff_spectrum: spectra have different lengths");
    }
    AbsDiffSpectrum out;
    out.raw.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out.raw[i] = std::abs(a.values()[i] - b.values()[i]);
    }
    out.order.resize(a.size());
    std::iota(out.order.begin(), out.order.end(), std::size_t{0});
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&](std::size_t x, std::size_t y) { return out.raw[x] > out.raw[y]; });
    out.sorted.reserve(a.size());
    for (std::size_t idx : out.order) {
        out.sorted.push_back(out.raw[idx]);
    }
    return out;
}

/// Sum of the k largest entries of `sorted` (which must already be nonincreasing).
inline double top_k_sum_sorted(const std::vector<double>& sorted, std::size_t k) {
    detail::check_k(k, sorted.size());
    return std::accumulate(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
}

/// max over index subsets {i_1 < ... < i_k} of the subset sum of `values`,
/// computed by sorting. Equals the brute-force maximum when each subset is
/// summed in nonincreasing value order.
inline double max_subset_sum(std::vector<double> values, std::size_t k) {
    detail::check_k(k, values.size());
    std::stable_sort(values.begin(), values.end(), std::greater<>());
    return top_k_sum_sorted(values, k);
}

/// Brute-force max over all k-subsets; each subset is summed in nonincreasing
/// value order. Exponential: intended for cross-checks on short inputs.
inline double max_subset_sum_brute_force(const std::vector<double>& values, std::size_t k) {
    detail::check_k(k, values.size());
    const std::size_t n = values.size();
    if (n > 24) {
        throw DimensionError("brute-force subset enumeration limited to 24 entries");
    }
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> subset;
    subset.reserve(k);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != k) {
            continue;
        }
        subset.clear();
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::uint32_t{1} << i)) {
                subset.push_back(values[i]);
            }
        }
        std::sort(subset.begin(), subset.end(), std::greater<>());
        best = std::max(best, std::accumulate(subset.begin(), subset.end(), 0.0));
    }
    return best;
}

} // namespace svineq
