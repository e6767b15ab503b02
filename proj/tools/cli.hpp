#pragma once

// Command-line front end. stdout carries JSON lines only; diagnostics go to
// stderr. Exit codes: 0 all bounds hold / nothing found, 1 violation confirmed
// or found, 2 usage or parse error, 3 numerical failure.

#include <svineq/svineq.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace svineq::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2, kNumerical = 3 };

class UsageError : public Error {
public:
    using Error::Error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Matrix load_matrix(const std::string& path) {
    try {
        return parse_matrix(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(e.kind(), path + ": " + e.what());
    }
}

/// Matrices for check/chain: either --A and --B, or --pair pointing at a search result.
struct PairSource {
    std::string a_path;
    std::string b_path;
    std::string pair_path;

    void add_options(CLI::App& app) {
        app.add_option("--A", a_path, "matrix A (JSON)");
        app.add_option("--B", b_path, "matrix B (JSON)");
        app.add_option("--pair", pair_path, "search result JSON supplying both A and B");
    }

    MatrixPair load() const {
        if (!pair_path.empty()) {
            if (!a_path.empty() || !b_path.empty()) {
                throw UsageError("--pair cannot be combined with --A/--B");
            }
            Json j;
            try {
                j = Json::parse(read_file(pair_path));
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(ParseErrorKind::malformed_json, pair_path + ": " + e.what());
            }
            if (!j.is_object() || !j.contains("a") || !j.contains("b")) {
                throw ParseError(ParseErrorKind::schema, pair_path + ": expected an object with \"a\" and \"b\"");
            }
            return MatrixPair(matrix_from_json(j["a"]), matrix_from_json(j["b"]));
        }
        if (a_path.empty() || b_path.empty()) {
            throw UsageError("both --A and --B are required");
        }
        return MatrixPair(load_matrix(a_path), load_matrix(b_path));
    }
};

inline void pretty_report(std::ostream& err, const CheckReport& r) {
    err << std::left << std::setw(20) << r.inequality_id << " index " << std::setw(3) << r.index << " lhs "
        << std::setw(14) << r.lhs << " rhs " << std::setw(14) << r.rhs << " margin " << std::setw(14) << r.margin
        << (r.holds ? " holds" : " VIOLATED") << '\n';
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Singular value inequalities for sums of matrices: check, refute, certify"};
    app.name("svineq");
    app.require_subcommand(1);

    bool pretty = false;
    TolerancePolicy tol;

    auto* catalog_cmd = app.add_subcommand("catalog", "list the inequality catalog");

    auto* check_cmd = app.add_subcommand("check", "evaluate one inequality on a pair (A, B)");
    std::string check_ineq;
    std::optional<std::size_t> check_index;
    bool check_all_flag = false;
    PairSource check_src;
    check_cmd->add_option("--ineq", check_ineq, "inequality id")->required();
    check_src.add_options(*check_cmd);
    auto* k_opt = check_cmd->add_option("--k,--i", check_index, "index i or prefix length k");
    check_cmd->add_flag("--all", check_all_flag, "evaluate every legal index (default)")->excludes(k_opt);
    check_cmd->add_option("--atol", tol.atol, "absolute tolerance")->capture_default_str();
    check_cmd->add_option("--rtol", tol.rtol, "relative tolerance")->capture_default_str();
    check_cmd->add_flag("--pretty", pretty, "human-readable rendering on stderr");

    auto* chain_cmd = app.add_subcommand("chain", "verify the tightened prefix-sum comparison chain");
    PairSource chain_src;
    std::size_t chain_k = 0;
    bool brute_force = false;
    chain_src.add_options(*chain_cmd);
    chain_cmd->add_option("--k", chain_k, "prefix length")->required();
    chain_cmd->add_flag("--brute-force", brute_force, "compute subset maxima by enumeration");
    chain_cmd->add_option("--atol", tol.atol, "absolute tolerance")->capture_default_str();
    chain_cmd->add_option("--rtol", tol.rtol, "relative tolerance")->capture_default_str();
    chain_cmd->add_flag("--pretty", pretty, "human-readable rendering on stderr");

    auto* trace_cmd = app.add_subcommand("trace", "semi-unitary trace extremum of B");
    std::string trace_b;
    std::size_t trace_k = 0;
    std::string trace_mode = "max";
    bool use_oracle = false;
    OracleConfig oracle;
    trace_cmd->add_option("--B", trace_b, "matrix B (JSON)")->required();
    trace_cmd->add_option("--k", trace_k, "number of rows of U and V")->required();
    trace_cmd->add_option("--mode", trace_mode, "min or max")->check(CLI::IsMember({"min", "max"}));
    trace_cmd->add_flag("--oracle", use_oracle, "certify with the alternating-maximisation oracle");
    trace_cmd->add_option("--restarts", oracle.restarts, "oracle restarts")->capture_default_str();
    trace_cmd->add_option("--seed", oracle.seed, "oracle seed")->capture_default_str();
    trace_cmd->add_option("--max-iter", oracle.max_iterations, "oracle sweeps per restart")->capture_default_str();
    trace_cmd->add_flag("--pretty", pretty, "human-readable rendering on stderr");

    auto* search_cmd = app.add_subcommand("search", "randomised counterexample search");
    SearchConfig scfg;
    std::string field_name = "real";
    std::string gen_name = "dense_gaussian";
    std::optional<std::size_t> fixed_index;
    search_cmd->add_option("--ineq", scfg.inequality_id, "inequality id")->required();
    search_cmd->add_option("--rows", scfg.rows, "rows")->capture_default_str();
    search_cmd->add_option("--cols", scfg.cols, "cols")->capture_default_str();
    search_cmd->add_option("--field", field_name, "real or complex")->check(CLI::IsMember({"real", "complex"}));
    search_cmd->add_option("--gen", gen_name, "dense_gaussian, diagonal_gaussian or diagonal_integer")
        ->check(CLI::IsMember({"dense_gaussian", "diagonal_gaussian", "diagonal_integer"}));
    search_cmd->add_option("--trials", scfg.trials, "candidate pairs")->capture_default_str();
    search_cmd->add_option("--seed", scfg.seed, "64-bit seed")->capture_default_str();
    search_cmd->add_option("--refine", scfg.refine_steps, "hill-climbing steps")->capture_default_str();
    search_cmd->add_option("--i,--k", fixed_index, "evaluate only this index");
    search_cmd->add_option("--atol", scfg.tolerance.atol, "absolute tolerance")->capture_default_str();
    search_cmd->add_option("--rtol", scfg.tolerance.rtol, "relative tolerance")->capture_default_str();
    search_cmd->add_flag("--pretty", pretty, "human-readable rendering on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            err << app.help();
            return kOk;
        }
        err << "svineq: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*catalog_cmd) {
            for (const auto& e : catalog_list()) {
                out << to_json(e).dump() << '\n';
            }
            return kOk;
        }

        if (*check_cmd) {
            const InequalityEntry& entry = find_entry(check_ineq);
            const MatrixPair pair = check_src.load();
            validate_shape(entry, pair.a().rows(), pair.a().cols());
            const PairSpectra spectra = analyze(pair);
            std::vector<CheckReport> reports;
            if (check_index) {
                reports.push_back(check(entry, spectra, *check_index, tol));
            } else {
                reports = check_all(entry, spectra, tol);
            }
            bool violated = false;
            for (const auto& r : reports) {
                out << to_json(r).dump() << '\n';
                if (pretty) {
                    pretty_report(err, r);
                }
                violated = violated || !r.holds;
            }
            return violated ? kViolation : kOk;
        }

        if (*chain_cmd) {
            const MatrixPair pair = chain_src.load();
            const ChainReport r =
                verify_chain(pair, chain_k, tol, brute_force ? SubsetMode::brute_force : SubsetMode::sorted);
            out << to_json(r).dump() << '\n';
            if (pretty) {
                err << "chain k=" << r.k << ": " << r.values[0] << " >= " << r.values[1] << " >= " << r.values[2]
                    << " >= " << r.values[3] << (r.holds ? "  holds" : "  BROKEN") << '\n';
            }
            return r.holds ? kOk : kViolation;
        }

        if (*trace_cmd) {
            const Matrix b = load_matrix(trace_b);
            const TraceMode mode = trace_mode == "min" ? TraceMode::min : TraceMode::max;
            Json j;
            j["mode"] = to_string(mode);
            j["k"] = trace_k;
            j["closed_form"] = mode == TraceMode::max ? max_trace_closed_form(b, trace_k)
                                                      : min_trace_closed_form(b, trace_k);
            if (mode == TraceMode::min && b.is_square()) {
                j["claimed_min"] = claimed_min_trace(b, trace_k);
            }
            int code = kOk;
            if (use_oracle) {
                oracle.threads = threads_from_env(1);
                std::optional<TraceExtremumReport> rep;
                try {
                    rep = trace_oracle(b, trace_k, mode, oracle);
                } catch (const OracleNotConverged& e) {
                    rep = e.best();
                    err << "svineq: " << e.what() << '\n';
                    code = kNumerical;
                }
                j["oracle_value"] = rep->oracle_value;
                j["gap"] = rep->gap;
                j["iterations"] = rep->iterations;
                j["best_restart"] = rep->best_restart;
                j["converged"] = rep->converged;
                j["restarts"] = oracle.restarts;
                j["seed"] = oracle.seed;
                j["u"] = to_json(rep->oracle_pair.u);
                j["v"] = to_json(rep->oracle_pair.v);
            }
            out << j.dump() << '\n';
            if (pretty) {
                err << "trace " << trace_mode << " k=" << trace_k << ": closed form " << j["closed_form"].get<double>();
                if (use_oracle) {
                    err << ", oracle " << j["oracle_value"].get<double>() << ", gap " << j["gap"].get<double>();
                }
                err << '\n';
            }
            return code;
        }

        if (*search_cmd) {
            scfg.field = field_name == "complex" ? Field::complex : Field::real;
            scfg.generator = parse_generator(gen_name);
            if (fixed_index) {
                scfg.index_policy = IndexPolicy::at(*fixed_index);
            }
            const SearchResult r = search(scfg, threads_from_env(1));
            out << to_json(r).dump() << '\n';
            if (pretty) {
                err << (r.found ? "violation found" : "no violation") << " after " << r.trials_used << " trials\n";
                pretty_report(err, r.best_report);
            }
            return r.found ? kViolation : kOk;
        }
    } catch (const NumericalError& e) {
        err << "svineq: numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        err << "svineq: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

} // namespace svineq::cli
