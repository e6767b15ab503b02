// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "oracle.hpp"

#include <svineq/svineq.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace svineq;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_seconds, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs >= budget_seconds) {
        o.pass = false;
        o.detail += " (over time budget)";
    }
    std::printf("[%s] %d %s: %s [%.2fs / %.0fs]\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(),
                secs, budget_seconds);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
}

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(3);
    s << x;
    return s.str();
}

MatrixPair eq3_pair() { return {Matrix::diagonal({1, 0}), Matrix::diagonal({-1, 0})}; }

std::string capture(const std::string& cmd, int& exit_code) {
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        exit_code = -1;
        return {};
    }
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
        out.append(buf, n);
    }
    exit_code = WEXITSTATUS(pclose(pipe));
    return out;
}

} // namespace

int main() {
    criterion(1, "counterexample refutes sigma_1(A+B) >= sigma_1(A) - sigma_n(B)", 1.0, [] {
        const CheckReport r = check("g3b_k1", eq3_pair(), 1);
        const bool ok = std::abs(r.lhs) <= 1e-12 && std::abs(r.rhs - 1.0) <= 1e-12 &&
                        std::abs(r.margin - 1.0) <= 1e-12 && !r.holds;
        return Outcome{ok, "lhs=" + fmt(r.lhs) + " rhs=" + fmt(r.rhs) + " margin=" + fmt(r.margin)};
    });

    criterion(2, "counterexample refutes sigma_i(A+B) >= sigma_i(A) + sigma_n(B) at i=1", 1.0, [] {
        const CheckReport r = check("thm813", eq3_pair(), 1);
        const bool ok = std::abs(r.margin - 1.0) <= 1e-12 && !r.holds;
        return Outcome{ok, "margin=" + fmt(r.margin) + " holds=" + (r.holds ? "true" : "false")};
    });

    // Criteria 3 and 4 share one sweep: 10,000 pairs per field, dims 1..8.
    std::size_t violations = 0;
    std::size_t reports = 0;
    std::size_t broken_links = 0;
    std::size_t subset_mismatches = 0;
    std::size_t chains = 0;
    const auto sweep_start = Clock::now();
    for (Field field : {Field::real, Field::complex}) {
        for (std::size_t t = 0; t < 10000; ++t) {
            RandomStream rng(field == Field::real ? 3001 : 3002, t);
            const std::size_t rows = 1 + rng.index_below(8);
            const std::size_t cols = 1 + rng.index_below(8);
            const MatrixPair p(oracle::random_dense(rows, cols, field, rng), oracle::random_dense(rows, cols, field, rng));
            const PairSpectra s = analyze(p);
            for (std::string_view id : {"pointwise_corrected", "sum_corrected", "tight_sum"}) {
                for (const auto& r : check_all(find_entry(id), s)) {
                    ++reports;
                    violations += r.holds ? 0 : 1;
                }
            }
            const AbsDiffSpectrum d = abs_diff_spectrum(s.a, s.b);
            for (std::size_t k = 1; k <= s.size(); ++k) {
                const ChainReport c = verify_chain(s, k);
                ++chains;
                for (bool link : c.links) {
                    broken_links += link ? 0 : 1;
                }
                const double brute = oracle::max_subset_sum(d.raw, k);
                if (!(brute == c.values[1] && brute == c.subset_abs_max && c.middle_equality)) {
                    ++subset_mismatches;
                }
            }
        }
    }
    const double sweep_secs = std::chrono::duration<double>(Clock::now() - sweep_start).count();

    criterion(3, "proven bounds hold on 2 x 10,000 random pairs", 120.0 - sweep_secs, [&] {
        return Outcome{violations == 0 && reports > 0, std::to_string(violations) + " violations in " +
                                                           std::to_string(reports) + " reports (sweep " +
                                                           fmt(sweep_secs) + "s)"};
    });

    criterion(4, "comparison chain nonincreasing; subset maximum equals sorted prefix", 120.0 - sweep_secs, [&] {
        return Outcome{broken_links == 0 && subset_mismatches == 0,
                       std::to_string(chains) + " chains, " + std::to_string(broken_links) + " broken links, " +
                           std::to_string(subset_mismatches) + " subset mismatches"};
    });

    criterion(5, "oracle certifies max Re tr(U B V^H); claimed minimum is not the minimum", 120.0, [] {
        double worst_gap = 0.0;
        std::size_t claimed_checked = 0;
        std::size_t claimed_bad = 0;
        for (std::size_t t = 0; t < 200; ++t) {
            RandomStream rng(5005, t);
            const Field field = t % 2 ? Field::complex : Field::real;
            const std::size_t m = 1 + rng.index_below(6);
            // every fourth matrix square so the claimed-minimum comparison gets exercised
            const std::size_t n = t % 4 == 0 ? m : 1 + rng.index_below(6);
            const Matrix b = oracle::random_dense(m, n, field, rng);
            const std::size_t k = 1 + rng.index_below(std::min<std::size_t>(3, b.min_dim()));

            const auto ref = oracle::singular_values(b);
            double top_k = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                top_k += ref[i];
            }
            const auto rep = trace_oracle(b, k, TraceMode::max, {.seed = t, .restarts = 20});
            worst_gap = std::max(worst_gap, std::abs(rep.oracle_value - top_k));

            if (b.is_square()) {
                const auto s = singular_values(b);
                if (s[k] > s[s.size()]) {
                    ++claimed_checked;
                    if (!(claimed_min_trace(b, k) - min_trace_closed_form(b, k) > 0.0)) {
                        ++claimed_bad;
                    }
                }
            }
        }
        return Outcome{worst_gap <= 1e-6 && claimed_bad == 0 && claimed_checked > 0,
                       "worst gap " + fmt(worst_gap) + "; claimed minimum exceeds true minimum on " +
                           std::to_string(claimed_checked - claimed_bad) + "/" + std::to_string(claimed_checked) +
                           " square cases"};
    });

    criterion(6, "search rediscovers the k=1 counterexample class", 60.0, [] {
        SearchConfig cfg;
        cfg.inequality_id = "g3b_k1";
        cfg.rows = cfg.cols = 2;
        cfg.generator = Generator::diagonal_integer;
        cfg.trials = 1000;
        cfg.seed = 7;
        const SearchResult r = search(cfg);

        // Measured violation rate of the generator family under the same seed.
        std::size_t violating = 0;
        const InequalityEntry& entry = find_entry(cfg.inequality_id);
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            RandomStream rng(cfg.seed, t);
            const MatrixPair p = GeneratorSource{}(rng, cfg);
            violating += check(entry, analyze(p), 1).holds ? 0 : 1;
        }
        const double rate = static_cast<double>(violating) / static_cast<double>(cfg.trials);

        // Exact rate over all 7^4 equally likely diagonal pairs, for comparison.
        std::size_t exact = 0;
        for (int code = 0; code < 7 * 7 * 7 * 7; ++code) {
            const double a1 = code % 7 - 3, a2 = code / 7 % 7 - 3, b1 = code / 49 % 7 - 3, b2 = code / 343 - 3;
            const double lhs = std::max(std::abs(a1 + b1), std::abs(a2 + b2));
            const double rhs = std::max(std::abs(a1), std::abs(a2)) - std::min(std::abs(b1), std::abs(b2));
            exact += lhs < rhs ? 1 : 0;
        }
        const double exact_rate = static_cast<double>(exact) / 2401.0;
        const bool replay_ok = check(cfg.inequality_id, MatrixPair(r.a, r.b), r.best_report.index) == r.best_report;
        return Outcome{r.found && replay_ok, std::string("found=") + (r.found ? "true" : "false") +
                                                 " margin=" + fmt(r.best_report.margin) +
                                                 " measured violation rate " + fmt(100.0 * rate) + "% (exact " +
                                                 fmt(100.0 * exact_rate) + "%)"};
    });

    criterion(7, "search output byte-identical across SVINEQ_THREADS", 120.0, [] {
        const std::vector<std::string> configs = {
            "--ineq g3b_k1 --rows 2 --cols 2 --gen diagonal_integer --trials 1000 --seed 7",
            "--ineq thm813 --rows 4 --cols 4 --field complex --trials 500 --seed 11 --refine 200",
            "--ineq tight_sum --rows 3 --cols 5 --field complex --gen diagonal_gaussian --trials 2000 --seed 5",
        };
        std::size_t identical = 0;
        for (const auto& args : configs) {
            std::string baseline;
            int baseline_code = 0;
            bool same = true;
            for (const char* threads : {"1", "2", "4", "7"}) {
                int code = 0;
                const std::string out =
                    capture(std::string("SVINEQ_THREADS=") + threads + " " + SVINEQ_CLI + " search " + args, code);
                if (baseline.empty()) {
                    baseline = out;
                    baseline_code = code;
                } else if (out != baseline || code != baseline_code) {
                    same = false;
                }
            }
            identical += (same && !baseline.empty()) ? 1 : 0;
        }
        return Outcome{identical == configs.size(),
                       std::to_string(identical) + "/" + std::to_string(configs.size()) +
                           " configs identical over thread counts 1,2,4,7"};
    });

    criterion(8, "spectrum identities under negation, adjoint, Frobenius norm", 60.0, [] {
        double worst_neg = 0.0;
        double worst_adj = 0.0;
        double worst_fro = 0.0;
        for (std::size_t t = 0; t < 1000; ++t) {
            RandomStream rng(8008, t);
            const std::size_t m = 1 + rng.index_below(8);
            const std::size_t n = 1 + rng.index_below(8);
            const Matrix b = oracle::random_dense(m, n, t % 2 ? Field::complex : Field::real, rng);
            const auto s = singular_values(b).values();
            const auto sn = singular_values(negate(b)).values();
            const auto sh = singular_values(adjoint(b)).values();
            double sq = 0.0;
            for (std::size_t i = 0; i < s.size(); ++i) {
                worst_neg = std::max(worst_neg, std::abs(s[i] - sn[i]));
                worst_adj = std::max(worst_adj, std::abs(s[i] - sh[i]));
                sq += s[i] * s[i];
            }
            const double fro = frobenius_norm_squared(b);
            worst_fro = std::max(worst_fro, std::abs(sq - fro) / fro);
        }
        return Outcome{worst_neg <= 1e-12 && worst_adj <= 1e-12 && worst_fro <= 1e-10,
                       "max |s(-B)-s(B)| " + fmt(worst_neg) + ", max |s(B^H)-s(B)| " + fmt(worst_adj) +
                           ", max rel Frobenius error " + fmt(worst_fro)};
    });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
