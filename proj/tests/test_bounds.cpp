#include <svineq/bounds.hpp>
#include <svineq/rng.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace svineq;

namespace {

MatrixPair eq3_pair() { return {Matrix::diagonal({1, 0}), Matrix::diagonal({-1, 0})}; }

Matrix random_dense(std::size_t r, std::size_t c, Field f, RandomStream& rng) {
    Matrix m(r, c, f);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            m.set(i, j, rng.scalar(f));
        }
    }
    return m;
}

} // namespace

TEST(Catalog, SixEntriesStableOrderUniqueIds) {
    const auto& c = catalog_list();
    ASSERT_EQ(c.size(), 6u);
    const std::vector<std::string_view> ids = {"g3b_sum",      "g3b_k1",        "thm813",
                                               "pointwise_corrected", "sum_corrected", "tight_sum"};
    std::set<std::string_view> seen;
    for (std::size_t i = 0; i < c.size(); ++i) {
        EXPECT_EQ(c[i].id, ids[i]);
        seen.insert(c[i].id);
    }
    EXPECT_EQ(seen.size(), 6u);
    EXPECT_EQ(find_entry("g3b_sum").status, Status::claimed_false);
    EXPECT_EQ(find_entry("tight_sum").status, Status::proven);
    EXPECT_EQ(find_entry("thm813").shape_rule, ShapeRule::square_only);
    EXPECT_EQ(find_entry("sum_corrected").index_mode, IndexMode::prefix_sum);
    EXPECT_THROW(find_entry("nope"), ConfigError);
}

TEST(Check, CounterexampleRefutesKOne) {
    const CheckReport r = check("g3b_k1", eq3_pair(), 1);
    EXPECT_EQ(r.lhs, 0.0);
    EXPECT_EQ(r.rhs, 1.0);
    EXPECT_NEAR(r.margin, 1.0, 1e-12);
    EXPECT_FALSE(r.holds);
}

TEST(Check, CounterexampleRefutesThm813) {
    const CheckReport r = check("thm813", eq3_pair(), 1);
    EXPECT_EQ(r.lhs, 0.0);
    EXPECT_EQ(r.rhs, 1.0);
    EXPECT_NEAR(r.margin, 1.0, 1e-12);
    EXPECT_FALSE(r.holds);
}

TEST(Check, CounterexampleRefutesPrefixSumClaim) {
    // k = 1 of the prefix form coincides with the k = 1 statement.
    const CheckReport r = check("g3b_sum", eq3_pair(), 1);
    EXPECT_EQ(r.rhs, 1.0);
    EXPECT_FALSE(r.holds);
}

TEST(Check, SumCorrectedHoldsOnCounterexample) {
    // sigma_1(A) - sigma_1(B) = 1 - 1 = 0 and sigma_1(A+B) = 0.
    const CheckReport r = check("sum_corrected", eq3_pair(), 1);
    EXPECT_EQ(r.lhs, 0.0);
    EXPECT_EQ(r.rhs, 0.0);
    EXPECT_TRUE(r.holds);
}

TEST(Check, SumCorrectedTightWhenBIsZero) {
    RandomStream rng(4, 4);
    for (int t = 0; t < 20; ++t) {
        const Matrix a = random_dense(1 + rng.index_below(6), 1 + rng.index_below(6), Field::complex, rng);
        const MatrixPair p(a, Matrix(a.rows(), a.cols(), a.field()));
        for (const auto& r : check_all("sum_corrected", p)) {
            EXPECT_EQ(r.margin, 0.0);
            EXPECT_TRUE(r.holds);
        }
    }
}

TEST(Check, ToleranceFormula) {
    const MatrixPair p(Matrix::diagonal({3, 4}), Matrix::diagonal({0, 0}));
    TolerancePolicy tol{1e-3, 1e-2};
    const CheckReport r = check("pointwise_corrected", p, 1, tol);
    EXPECT_DOUBLE_EQ(r.tolerance, 1e-3 + 1e-2 * 5.0);
}

TEST(Check, HoldsIffWithinTolerance) {
    // lhs = 0, rhs = 1: holds only once the slack reaches 1.
    EXPECT_FALSE(check("g3b_k1", eq3_pair(), 1, {0.999, 0.0}).holds);
    EXPECT_TRUE(check("g3b_k1", eq3_pair(), 1, {1.0, 0.0}).holds);
}

TEST(Check, Errors) {
    const MatrixPair rect(Matrix(2, 3), Matrix(2, 3));
    EXPECT_THROW(check("g3b_sum", rect, 1), DimensionError);
    EXPECT_THROW(check("thm813", rect, 1), DimensionError);
    EXPECT_NO_THROW(check("tight_sum", rect, 2));
    EXPECT_THROW(check("tight_sum", rect, 3), IndexError);
    EXPECT_THROW(check("tight_sum", rect, 0), IndexError);
    EXPECT_THROW(check("g3b_k1", eq3_pair(), 2), IndexError);
    EXPECT_THROW(check("unknown", eq3_pair(), 1), ConfigError);
}

TEST(Check, LegalIndices) {
    EXPECT_EQ(legal_indices(find_entry("g3b_k1"), 4), (std::vector<std::size_t>{1}));
    EXPECT_EQ(legal_indices(find_entry("thm813"), 3), (std::vector<std::size_t>{1, 2, 3}));
}

TEST(Check, Deterministic) {
    RandomStream rng(9, 9);
    const MatrixPair p(random_dense(4, 4, Field::complex, rng), random_dense(4, 4, Field::complex, rng));
    for (const auto& e : catalog_list()) {
        EXPECT_EQ(check_all(e.id, p), check_all(e.id, p));
    }
}

TEST(Check, ProvenEntriesHoldAndTightDominatesCorrected) {
    RandomStream rng(123, 0);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t r = 1 + rng.index_below(8);
        const std::size_t c = 1 + rng.index_below(8);
        const Field f = t % 2 ? Field::complex : Field::real;
        const MatrixPair p(random_dense(r, c, f, rng), random_dense(r, c, f, rng));
        const PairSpectra s = analyze(p);
        for (std::string_view id : {"pointwise_corrected", "sum_corrected", "tight_sum"}) {
            for (const auto& rep : check_all(find_entry(id), s)) {
                EXPECT_TRUE(rep.holds) << id << " index " << rep.index;
            }
        }
        const auto tight = check_all(find_entry("tight_sum"), s);
        const auto corrected = check_all(find_entry("sum_corrected"), s);
        for (std::size_t k = 0; k < tight.size(); ++k) {
            EXPECT_GE(tight[k].rhs, corrected[k].rhs - tight[k].tolerance);
        }
    }
}

TEST(Check, ReportJsonLayout) {
    const std::string line = to_json(check("g3b_k1", eq3_pair(), 1)).dump();
    EXPECT_EQ(line, R"({"ineq":"g3b_k1","index":1,"lhs":0.0,"rhs":1.0,"margin":1.0,"tol":2.1e-09,"holds":false})");
    EXPECT_EQ(check_report_from_json(Json::parse(line)), check("g3b_k1", eq3_pair(), 1));
}

TEST(Chain, CounterexamplePairAllZero) {
    const ChainReport r = verify_chain(eq3_pair(), 1);
    EXPECT_EQ(r.values, (std::array<double, 4>{0, 0, 0, 0}));
    EXPECT_TRUE(r.middle_equality);
    EXPECT_TRUE(r.holds);
}

TEST(Chain, DiagonalExample) {
    // sigma(A) = (1,0), sigma(B) = (5,0), A+B = diag(1,5):
    // |diffs| = (4,0), signed diffs = (-4,0), so the signed subset max picks index 2.
    const MatrixPair p(Matrix::diagonal({1, 0}), Matrix::diagonal({0, 5}));
    const ChainReport r = verify_chain(p, 1);
    EXPECT_EQ(r.values, (std::array<double, 4>{5, 4, 0, -4}));
    EXPECT_EQ(r.subset_abs_max, 4.0);
    EXPECT_TRUE(r.middle_equality);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(verify_chain(p, 1, {}, SubsetMode::brute_force), r);
}

TEST(Chain, ZeroBCollapsesChain) {
    RandomStream rng(6, 1);
    for (int t = 0; t < 20; ++t) {
        const Matrix a = random_dense(1 + rng.index_below(6), 1 + rng.index_below(6), Field::real, rng);
        const MatrixPair p(a, Matrix(a.rows(), a.cols()));
        const auto sa = singular_values(a);
        for (std::size_t k = 1; k <= sa.size(); ++k) {
            const ChainReport r = verify_chain(p, k);
            for (double v : r.values) {
                EXPECT_EQ(v, ky_fan_sum(sa, k));
            }
            EXPECT_TRUE(r.holds);
        }
    }
}

TEST(Chain, SortedAndBruteForceAgreeExactly) {
    RandomStream rng(31, 0);
    for (int t = 0; t < 300; ++t) {
        const std::size_t r = 1 + rng.index_below(8);
        const std::size_t c = 1 + rng.index_below(8);
        const Field f = t % 2 ? Field::complex : Field::real;
        const PairSpectra s = analyze({random_dense(r, c, f, rng), random_dense(r, c, f, rng)});
        for (std::size_t k = 1; k <= s.size(); ++k) {
            const ChainReport fast = verify_chain(s, k);
            const ChainReport slow = verify_chain(s, k, {}, SubsetMode::brute_force);
            EXPECT_EQ(fast, slow);
            EXPECT_TRUE(fast.holds);
            EXPECT_EQ(fast.values[1], check(find_entry("tight_sum"), s, k).rhs);
        }
    }
}

TEST(Chain, RejectsBadK) {
    EXPECT_THROW(verify_chain(eq3_pair(), 0), IndexError);
    EXPECT_THROW(verify_chain(eq3_pair(), 3), IndexError);
}
