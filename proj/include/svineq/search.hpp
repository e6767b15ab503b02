#pragma once

#include <svineq/bounds.hpp>
#include <svineq/error.hpp>
#include <svineq/matrix.hpp>
#include <svineq/matrix_json.hpp>
#include <svineq/parallel.hpp>
#include <svineq/rng.hpp>

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace svineq {

enum class Generator { dense_gaussian, diagonal_gaussian, diagonal_integer };

inline const char* to_string(Generator g) {
    switch (g) {
    case Generator::dense_gaussian: return "dense_gaussian";
    case Generator::diagonal_gaussian: return "diagonal_gaussian";
    case Generator::diagonal_integer: return "diagonal_integer";
    }
    return "unknown";
}

inline Generator parse_generator(std::string_view name) {
    if (name == "dense_gaussian") return Generator::dense_gaussian;
    if (name == "diagonal_gaussian") return Generator::diagonal_gaussian;
    if (name == "diagonal_integer") return Generator::diagonal_integer;
    throw ConfigError("unknown generator '" + std::string(name) + "'");
}

/// Which indices a trial is evaluated at: every legal one, or a single fixed one.
struct IndexPolicy {
    std::optional<std::size_t> fixed;

    static IndexPolicy all() { return {}; }
    static IndexPolicy at(std::size_t i) { return {i}; }
};

struct SearchConfig {
    std::string inequality_id;
    std::size_t rows = 2;
    std::size_t cols = 2;
    Field field = Field::real;
    Generator generator = Generator::dense_gaussian;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::size_t refine_steps = 0;
    IndexPolicy index_policy;
    TolerancePolicy tolerance;
};

struct SearchResult {
    bool found = false;
    CheckReport best_report;
    Matrix a;
    Matrix b;
    std::size_t trials_used = 0;
    std::size_t best_trial = 0;
    double margin_before_refine = 0.0;
    std::size_t accepted_steps = 0;
    SearchConfig config;
};

/// Draw one matrix. dense_gaussian: i.i.d. standard normal entries.
/// diagonal_gaussian: normal diagonal, zero elsewhere. diagonal_integer:
/// diagonal entries uniform on {-3, ..., 3}, zero elsewhere.
inline Matrix generate(Generator gen, std::size_t rows, std::size_t cols, Field field, RandomStream& rng) {
    Matrix m(rows, cols, field);
    switch (gen) {
    case Generator::dense_gaussian:
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                m.set(i, j, rng.scalar(field));
            }
        }
        break;
    case Generator::diagonal_gaussian:
        for (std::size_t i = 0; i < m.min_dim(); ++i) {
            m.set(i, i, rng.scalar(field));
        }
        break;
    case Generator::diagonal_integer:
        for (std::size_t i = 0; i < m.min_dim(); ++i) {
            m.set(i, i, static_cast<double>(rng.uniform_int(-3, 3)));
        }
        break;
    }
    return m;
}

inline void validate(const SearchConfig& cfg) {
    const InequalityEntry& entry = find_entry(cfg.inequality_id);
    if (cfg.rows < 1 || cfg.cols < 1) {
        throw ConfigError("rows and cols must be positive");
    }
    if (entry.shape_rule == ShapeRule::square_only && cfg.rows != cfg.cols) {
        throw ConfigError(std::string(entry.id) + " requires rows == cols");
    }
    if (cfg.trials < 1) {
        throw ConfigError("trials must be positive");
    }
    if (cfg.index_policy.fixed) {
        const std::size_t last = entry.first_index_only ? 1 : std::min(cfg.rows, cfg.cols);
        if (*cfg.index_policy.fixed < 1 || *cfg.index_policy.fixed > last) {
            throw ConfigError("fixed index outside 1.." + std::to_string(last));
        }
    }
}

namespace detail {

/// Report with the largest margin over the policy's indices; ties to the lowest index.
inline CheckReport worst_report(const InequalityEntry& entry, const MatrixPair& p, const SearchConfig& cfg) {
    const PairSpectra s = analyze(p);
    if (cfg.index_policy.fixed) {
        return check(entry, s, *cfg.index_policy.fixed, cfg.tolerance);
    }
    std::optional<CheckReport> worst;
    for (std::size_t i : legal_indices(entry, s.size())) {
        CheckReport r = check(entry, s, i, cfg.tolerance);
        if (!worst || r.margin > worst->margin) {
            worst = std::move(r);
        }
    }
    return *worst;
}

inline constexpr std::uint64_t kRefineStream = std::numeric_limits<std::uint64_t>::max();

} // namespace detail

/// Default pair source: A then B from the configured generator.
struct GeneratorSource {
    MatrixPair operator()(RandomStream& rng, const SearchConfig& cfg) const {
        Matrix a = generate(cfg.generator, cfg.rows, cfg.cols, cfg.field, rng);
        Matrix b = generate(cfg.generator, cfg.rows, cfg.cols, cfg.field, rng);
        return {std::move(a), std::move(b)};
    }
};

/// Randomised hunt for violations of one catalog inequality.
///
/// Trial t draws its pair from stream (seed, t) and keeps its worst-margin
/// report; the best trial is the largest margin, ties to the lowest trial. With
/// refine_steps > 0 the best pair is then hill-climbed one entry at a time
/// (step ~ Normal(0, 0.1 * (1 + |entry|)), accepted iff the margin increases).
/// Output is a function of the config alone, independent of `threads`.
template <typename PairSource>
    requires std::invocable<PairSource&, RandomStream&, const SearchConfig&>
SearchResult search(const SearchConfig& cfg, PairSource&& source, unsigned threads = 1) {
    validate(cfg);
    const InequalityEntry& entry = find_entry(cfg.inequality_id);

    struct Trial {
        std::optional<MatrixPair> pair;
        std::optional<CheckReport> report;
    };
    std::vector<Trial> trials(cfg.trials);
    parallel_for(cfg.trials, threads, [&](std::size_t t) {
        RandomStream rng(cfg.seed, t);
        MatrixPair p = source(rng, cfg);
        if (p.a().rows() != cfg.rows || p.a().cols() != cfg.cols) {
            throw ConfigError("pair source produced a pair of the wrong shape");
        }
        trials[t].report = detail::worst_report(entry, p, cfg);
        trials[t].pair = std::move(p);
    });

    std::size_t best = 0;
    for (std::size_t t = 1; t < trials.size(); ++t) {
        if (trials[t].report->margin > trials[best].report->margin) {
            best = t;
        }
    }

    Matrix a = trials[best].pair->a();
    Matrix b = trials[best].pair->b();
    CheckReport report = *trials[best].report;
    const double before = report.margin;
    std::size_t accepted = 0;

    if (cfg.refine_steps > 0) {
        RandomStream rng(cfg.seed, detail::kRefineStream);
        const std::size_t entries = cfg.rows * cfg.cols;
        for (std::size_t step = 0; step < cfg.refine_steps; ++step) {
            const bool pick_a = rng.index_below(2) == 0;
            const std::size_t flat = rng.index_below(entries);
            const std::size_t i = flat / cfg.cols;
            const std::size_t j = flat % cfg.cols;
            Matrix candidate = pick_a ? a : b;
            const Scalar old = candidate(i, j);
            const double stddev = 0.1 * (1.0 + std::abs(old));
            const double dre = rng.normal(stddev);
            const double dim = cfg.field == Field::complex ? rng.normal(stddev) : 0.0;
            const Scalar updated = old + Scalar{dre, dim};
            if (!is_finite(updated)) {
                continue;
            }
            candidate.set(i, j, updated);
            MatrixPair trial = pick_a ? MatrixPair(candidate, b) : MatrixPair(a, candidate);
            CheckReport r = detail::worst_report(entry, trial, cfg);
            if (r.margin > report.margin) {
                report = std::move(r);
                (pick_a ? a : b) = std::move(candidate);
                ++accepted;
            }
        }
    }

    SearchResult out{!report.holds, std::move(report), std::move(a), std::move(b), cfg.trials, best, before,
                     accepted, cfg};
    return out;
}

inline SearchResult search(const SearchConfig& cfg, unsigned threads = 1) {
    return search(cfg, GeneratorSource{}, threads);
}

inline Json to_json(const SearchResult& r) {
    Json j;
    j["found"] = r.found;
    j["ineq"] = r.config.inequality_id;
    j["rows"] = r.config.rows;
    j["cols"] = r.config.cols;
    j["field"] = to_string(r.config.field);
    j["generator"] = to_string(r.config.generator);
    j["trials"] = r.config.trials;
    j["seed"] = r.config.seed;
    j["refine_steps"] = r.config.refine_steps;
    if (r.config.index_policy.fixed) {
        j["index_policy"] = *r.config.index_policy.fixed;
    } else {
        j["index_policy"] = "all";
    }
    j["atol"] = r.config.tolerance.atol;
    j["rtol"] = r.config.tolerance.rtol;
    j["trials_used"] = r.trials_used;
    j["best_trial"] = r.best_trial;
    j["margin_before_refine"] = r.margin_before_refine;
    j["accepted_steps"] = r.accepted_steps;
    j["best_report"] = to_json(r.best_report);
    j["a"] = to_json(r.a);
    j["b"] = to_json(r.b);
    return j;
}

} // namespace svineq
