#pragma once

#include <svineq/error.hpp>
#include <svineq/matrix.hpp>
#include <svineq/matrix_json.hpp>
#include <svineq/spectrum.hpp>

#include <array>
#include <numeric>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace svineq {

enum class Status { claimed_false, proven };
enum class IndexMode { per_index, prefix_sum };
enum class ShapeRule { square_only, same_shape };

inline const char* to_string(Status s) { return s == Status::proven ? "proven" : "claimed_false"; }
inline const char* to_string(IndexMode m) { return m == IndexMode::per_index ? "per_index" : "prefix_sum"; }
inline const char* to_string(ShapeRule r) { return r == ShapeRule::square_only ? "square_only" : "same_shape"; }

/// Spectra of A, B and A+B plus the tolerance scale, computed once per pair.
struct PairSpectra {
    SingularSpectrum a;
    SingularSpectrum b;
    SingularSpectrum sum;
    double frobenius_scale; ///< ||A||_F + ||B||_F
    bool square;

    std::size_t size() const noexcept { return a.size(); }
};

inline PairSpectra analyze(const MatrixPair& p) {
    return PairSpectra{singular_values(p.a()), singular_values(p.b()), singular_values(add(p)),
                       frobenius_norm(p.a()) + frobenius_norm(p.b()), p.a().is_square()};
}

/// Scale-aware slack: a bound holds iff lhs >= rhs - (atol + rtol * (||A||_F + ||B||_F)).
struct TolerancePolicy {
    double atol = 1e-10;
    double rtol = 1e-9;

    double tolerance(double frobenius_scale) const { return atol + rtol * frobenius_scale; }
};

struct InequalityEntry {
    using Evaluator = double (*)(const PairSpectra&, std::size_t);

    std::string_view id;
    Status status;
    IndexMode index_mode;
    ShapeRule shape_rule;
    bool first_index_only; ///< the statement is only made for index 1
    std::string_view description;
    Evaluator lhs;
    Evaluator rhs;
};

struct CheckReport {
    std::string inequality_id;
    std::size_t index = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0; ///< rhs - lhs; positive means the claimed lower bound is exceeded
    double tolerance = 0.0;
    bool holds = true;

    friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

namespace detail {

inline double sum_prefix_lhs(const PairSpectra& s, std::size_t k) { return ky_fan_sum(s.sum, k); }
inline double pointwise_lhs(const PairSpectra& s, std::size_t i) { return s.sum[i]; }

inline double g3b_sum_rhs(const PairSpectra& s, std::size_t k) { return ky_fan_sum(s.a, k) - tail_sum(s.b, k); }
inline double g3b_k1_rhs(const PairSpectra& s, std::size_t) { return s.a[1] - s.b[s.size()]; }
inline double thm813_rhs(const PairSpectra& s, std::size_t i) { return s.a[i] + s.b[s.size()]; }
inline double pointwise_corrected_rhs(const PairSpectra& s, std::size_t i) { return s.a[i] - s.b[1]; }
inline double sum_corrected_rhs(const PairSpectra& s, std::size_t k) { return ky_fan_sum(s.a, k) - ky_fan_sum(s.b, k); }
inline double tight_sum_rhs(const PairSpectra& s, std::size_t k) {
    return top_k_sum_sorted(abs_diff_spectrum(s.a, s.b).sorted, k);
}

} // namespace detail

/// The closed catalog of inequalities, in stable order.
inline const std::vector<InequalityEntry>& catalog_list() {
    static const std::vector<InequalityEntry> entries = {
        {"g3b_sum", Status::claimed_false, IndexMode::prefix_sum, ShapeRule::square_only, false,
         "sum_{i<=k} sigma_i(A+B) >= sum_{i<=k} sigma_i(A) - sum_{i<=k} sigma_{n-i+1}(B)", detail::sum_prefix_lhs,
         detail::g3b_sum_rhs},
        {"g3b_k1", Status::claimed_false, IndexMode::per_index, ShapeRule::square_only, true,
         "sigma_1(A+B) >= sigma_1(A) - sigma_n(B)", detail::pointwise_lhs, detail::g3b_k1_rhs},
        {"thm813", Status::claimed_false, IndexMode::per_index, ShapeRule::square_only, false,
         "sigma_i(A+B) >= sigma_i(A) + sigma_n(B), evaluated for every i in 1..n", detail::pointwise_lhs, detail::thm813_rhs},
        {"pointwise_corrected", Status::proven, IndexMode::per_index, ShapeRule::same_shape, false,
         "sigma_i(A+B) >= sigma_i(A) - sigma_1(B)", detail::pointwise_lhs, detail::pointwise_corrected_rhs},
        {"sum_corrected", Status::proven, IndexMode::prefix_sum, ShapeRule::same_shape, false,
         "sum_{i<=k} sigma_i(A+B) >= sum_{i<=k} sigma_i(A) - sum_{i<=k} sigma_i(B)", detail::sum_prefix_lhs,
         detail::sum_corrected_rhs},
        {"tight_sum", Status::proven, IndexMode::prefix_sum, ShapeRule::same_shape, false,
         "sum_{i<=k} sigma_i(A+B) >= sum_{i<=k} d_[i], d_i = |sigma_i(A) - sigma_i(B)| sorted nonincreasing",
         detail::sum_prefix_lhs, detail::tight_sum_rhs},
    };
    return entries;
}

inline const InequalityEntry& find_entry(std::string_view id) {
    for (const auto& e : catalog_list()) {
        if (e.id == id) {
            return e;
        }
    }
    throw ConfigError("unknown inequality id '" + std::string(id) + "'");
}

/// Indices at which `entry` is stated for a pair whose spectra have length `len`.
inline std::vector<std::size_t> legal_indices(const InequalityEntry& entry, std::size_t len) {
    std::vector<std::size_t> out;
    const std::size_t last = entry.first_index_only ? 1 : len;
    for (std::size_t i = 1; i <= last; ++i) {
        out.push_back(i);
    }
    return out;
}

inline void validate_shape(const InequalityEntry& entry, std::size_t rows, std::size_t cols) {
    if (entry.shape_rule == ShapeRule::square_only && rows != cols) {
        throw DimensionError(std::string(entry.id) + " is stated for square matrices only, got " +
                             std::to_string(rows) + "x" + std::to_string(cols));
    }
}

/// Evaluate `entry` on precomputed spectra. Claimed-false entries are evaluated
/// exactly like proven ones.
inline CheckReport check(const InequalityEntry& entry, const PairSpectra& s, std::size_t index,
                         const TolerancePolicy& policy = {}) {
    validate_shape(entry, s.a.source_rows(), s.a.source_cols());
    const std::size_t last = entry.first_index_only ? 1 : s.size();
    if (index < 1 || index > last) {
        throw IndexError(std::string(entry.id) + ": index " + std::to_string(index) + " outside 1.." +
                         std::to_string(last));
    }
    CheckReport r;
    r.inequality_id = std::string(entry.id);
    r.index = index;
    r.lhs = entry.lhs(s, index);
    r.rhs = entry.rhs(s, index);
    r.margin = r.rhs - r.lhs;
    r.tolerance = policy.tolerance(s.frobenius_scale);
    r.holds = r.lhs >= r.rhs - r.tolerance;
    return r;
}

inline CheckReport check(std::string_view id, const MatrixPair& p, std::size_t index,
                         const TolerancePolicy& policy = {}) {
    const InequalityEntry& entry = find_entry(id);
    validate_shape(entry, p.a().rows(), p.a().cols());
    return check(entry, analyze(p), index, policy);
}

/// One report per legal index.
inline std::vector<CheckReport> check_all(const InequalityEntry& entry, const PairSpectra& s,
                                          const TolerancePolicy& policy = {}) {
    std::vector<CheckReport> out;
    for (std::size_t i : legal_indices(entry, s.size())) {
        out.push_back(check(entry, s, i, policy));
    }
    return out;
}

inline std::vector<CheckReport> check_all(std::string_view id, const MatrixPair& p,
                                          const TolerancePolicy& policy = {}) {
    const InequalityEntry& entry = find_entry(id);
    validate_shape(entry, p.a().rows(), p.a().cols());
    return check_all(entry, analyze(p), policy);
}

enum class SubsetMode { sorted, brute_force };

/// The comparison chain for the tightened prefix-sum bound:
///   values[0] = sum_{i<=k} sigma_i(A+B)
///   values[1] = sum_{i<=k} d_[i],  d_i = |sigma_i(A) - sigma_i(B)|
///   values[2] = max over k-subsets of sum (sigma_i(A) - sigma_i(B))
///   values[3] = sum_{i<=k} (sigma_i(A) - sigma_i(B))
/// Each adjacent pair must be nonincreasing within tolerance. `subset_abs_max`
/// is the max over k-subsets of sum |sigma_i(A) - sigma_i(B)|, which must equal values[1].
struct ChainReport {
    std::size_t k = 0;
    std::array<double, 4> values{};
    std::array<bool, 3> links{};
    double subset_abs_max = 0.0;
    bool middle_equality = false;
    double tolerance = 0.0;
    bool holds = false;

    friend bool operator==(const ChainReport&, const ChainReport&) = default;
};

inline ChainReport verify_chain(const PairSpectra& s, std::size_t k, const TolerancePolicy& policy = {},
                                SubsetMode mode = SubsetMode::sorted) {
    detail::check_k(k, s.size());
    const AbsDiffSpectrum d = abs_diff_spectrum(s.a, s.b);

    std::vector<double> signed_diff(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        signed_diff[i] = s.a.values()[i] - s.b.values()[i];
    }
    auto subset_max = [&](const std::vector<double>& v) {
        return mode == SubsetMode::sorted ? max_subset_sum(v, k) : max_subset_sum_brute_force(v, k);
    };

    ChainReport r;
    r.k = k;
    r.values[0] = ky_fan_sum(s.sum, k);
    r.values[1] = top_k_sum_sorted(d.sorted, k);
    r.values[2] = subset_max(signed_diff);
    r.values[3] = std::accumulate(signed_diff.begin(), signed_diff.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
    r.subset_abs_max = subset_max(d.raw);
    r.middle_equality = r.subset_abs_max == r.values[1];
    r.tolerance = policy.tolerance(s.frobenius_scale);
    r.holds = r.middle_equality;
    for (std::size_t j = 0; j < 3; ++j) {
        r.links[j] = r.values[j] >= r.values[j + 1] - r.tolerance;
        r.holds = r.holds && r.links[j];
    }
    return r;
}

inline ChainReport verify_chain(const MatrixPair& p, std::size_t k, const TolerancePolicy& policy = {},
                                SubsetMode mode = SubsetMode::sorted) {
    return verify_chain(analyze(p), k, policy, mode);
}

inline Json to_json(const CheckReport& r) {
    Json j;
    j["ineq"] = r.inequality_id;
    j["index"] = r.index;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["margin"] = r.margin;
    j["tol"] = r.tolerance;
    j["holds"] = r.holds;
    return j;
}

inline CheckReport check_report_from_json(const Json& j) {
    CheckReport r;
    r.inequality_id = j.at("ineq").get<std::string>();
    r.index = j.at("index").get<std::size_t>();
    r.lhs = j.at("lhs").get<double>();
    r.rhs = j.at("rhs").get<double>();
    r.margin = j.at("margin").get<double>();
    r.tolerance = j.at("tol").get<double>();
    r.holds = j.at("holds").get<bool>();
    return r;
}

inline Json to_json(const ChainReport& r) {
    Json j;
    j["k"] = r.k;
    j["values"] = r.values;
    j["links"] = r.links;
    j["subset_abs_max"] = r.subset_abs_max;
    j["middle_equality"] = r.middle_equality;
    j["tol"] = r.tolerance;
    j["holds"] = r.holds;
    return j;
}

inline Json to_json(const InequalityEntry& e) {
    Json j;
    j["id"] = e.id;
    j["status"] = to_string(e.status);
    j["index_mode"] = to_string(e.index_mode);
    j["shape_rule"] = to_string(e.shape_rule);
    j["description"] = e.description;
    return j;
}

} // namespace svineq
