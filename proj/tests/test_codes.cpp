#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "plateau/codes.hpp"

using namespace plateau;
using testing_support::analyzed;
using testing_support::label;
using testing_support::nwrf_functions;

namespace {

FunctionTable table_of(const std::string& poly, int p, int n) { return eval_to_table(parse_poly(poly, p, n)); }

const std::string ex1 = "2*x1^2*x4^2+2*x1^2+x2^2+x3*x4";

FunctionTable random_table(std::mt19937& rng, int p, int n) {
    FunctionTable f{p, n, std::vector<int>(static_cast<std::size_t>(domain_size(p, n)))};
    std::uniform_int_distribution<int> d(0, p - 1);
    for (auto& v : f.values) v = d(rng);
    return f;
}

} // namespace

TEST(DefiningSet, Sizes) {
    const FunctionTable f = table_of(ex1, 3, 5);
    EXPECT_EQ(defining_set(f, CodeKind::defset_zero).length(), 98);
    EXPECT_EQ(defining_set(f, CodeKind::defset_sq).length(), 72);
    EXPECT_EQ(defining_set(f, CodeKind::defset_nsq).length(), 72);
    const CodeSpec z = defining_set(f, CodeKind::defset_zero);
    EXPECT_TRUE(std::is_sorted(z.coords.begin(), z.coords.end()));
    for (i64 x : z.coords) {
        EXPECT_NE(x, 0);
        EXPECT_EQ(f[x], 0);
    }
}

TEST(DefiningSet, EmptyIsAnError) {
    const FunctionTable one{3, 2, std::vector<int>(9, 1)};
    try {
        defining_set(one, CodeKind::defset_zero);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::empty_defining_set);
    }
}

TEST(Puncture, KeepsOneRepresentativePerOrbit) {
    const FunctionTable f = table_of(ex1, 3, 5);
    const CodeSpec z = puncture_representatives(defining_set(f, CodeKind::defset_zero));
    EXPECT_EQ(z.length(), 49);
    EXPECT_TRUE(z.provenance.punctured);
    const CodeSpec q = build_code(f, CodeKind::defset_sq, true);
    EXPECT_EQ(q.length(), 36);
    for (i64 x : q.coords)
        for (int a = 2; a < 3; ++a) EXPECT_GT(scale_index(3, 5, x, a), x);
}

TEST(Puncture, RejectsSetsNotClosedUnderScaling) {
    // Zero only at (0,1); its multiple (0,2) is not a zero.
    FunctionTable f{3, 2, std::vector<int>(9, 1)};
    f.values[static_cast<std::size_t>(encode_point(3, 2, std::vector<int>{0, 1}))] = 0;
    try {
        build_code(f, CodeKind::defset_zero, true);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::not_scaling_closed);
    }
    EXPECT_THROW(build_code(f, CodeKind::first_gen, true), error);
}

TEST(Exhaustive, FirstGenReferenceFunction) {
    const FunctionTable f = table_of(ex1, 3, 5);
    const WeightDistribution wd = weight_distribution_exhaustive(firstgen_spec(f), f);
    EXPECT_EQ(wd.length, 242);
    EXPECT_EQ(wd.dimension, 6);
    EXPECT_EQ(enumerator_string(wd), "1+30z^144+72z^153+566z^162+24z^171+36z^180");
}

TEST(Exhaustive, ThreadCountDoesNotMatter) {
    const FunctionTable f = table_of(ex1, 3, 5);
    const CodeSpec c = build_code(f, CodeKind::defset_zero, false);
    EXPECT_EQ(weight_distribution_exhaustive(c, f, {1, default_budget}), weight_distribution_exhaustive(c, f, {3, default_budget}));
}

TEST(Exhaustive, BudgetExceeded) {
    const FunctionTable f = table_of(ex1, 3, 5);
    try {
        weight_distribution_exhaustive(firstgen_spec(f), f, {1, 1000});
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::budget_exceeded);
    }
}

TEST(Exhaustive, LinearFunctionCollapsesDimension) {
    const FunctionTable f = table_of("x1+2*x2", 3, 2);
    try {
        weight_distribution_exhaustive(firstgen_spec(f), f);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::dimension_collapse);
    }
    EXPECT_THROW(firstgen_weight_distribution_fast(firstgen_spec(f), walsh_counts_fast(f, 1), f[0]), error);
}

TEST(FastPath, AgreesWithExhaustiveOnRandomTables) {
    std::mt19937 rng(20261015);
    int compared = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int p = trial % 2 ? 5 : 3;
        const int n = p == 3 ? 2 + trial % 3 : 2 + trial % 2;
        const FunctionTable f = random_table(rng, p, n);
        const CodeSpec c = firstgen_spec(f);
        std::optional<WeightDistribution> slow;
        try {
            slow = weight_distribution_exhaustive(c, f);
        } catch (const error& e) {
            ASSERT_EQ(e.code(), errc::dimension_collapse);
        }
        if (!slow) {
            EXPECT_THROW(firstgen_weight_distribution_fast(c, walsh_counts_fast(f, 1), f[0]), error);
            continue;
        }
        EXPECT_EQ(firstgen_weight_distribution_fast(c, walsh_counts_fast(f, 1), f[0]), *slow) << "trial " << trial;
        ++compared;
    }
    EXPECT_GE(compared, 45);
}

TEST(Verify, MatchAndDeltas) {
    const FunctionTable f = table_of(ex1, 3, 5);
    const WeightDistribution actual = weight_distribution_exhaustive(firstgen_spec(f), f);
    const auto good = predict_weights(PredictionInput{3, 5, 1, 27, 1, 1, CodeKind::first_gen, false});
    EXPECT_TRUE(verify_prediction(actual, good).match);
    const auto bad = predict_weights(PredictionInput{3, 5, 1, 54, 1, 1, CodeKind::first_gen, false});
    const VerifyReport r = verify_prediction(actual, bad);
    EXPECT_FALSE(r.match);
    EXPECT_TRUE(r.length_ok);
    EXPECT_TRUE(r.dimension_ok);
    ASSERT_FALSE(r.deltas.empty());
    for (const auto& d : r.deltas) EXPECT_NE(d.actual, d.predicted);
}

TEST(Predictions, MatchExhaustiveForReferenceFunctions) {
    for (const auto& r : nwrf_functions()) {
        SCOPED_TRACE(label(r));
        const FunctionAnalysis a = analyzed(r);
        for (CodeKind kind : {CodeKind::first_gen, CodeKind::defset_zero, CodeKind::defset_sq, CodeKind::defset_nsq})
            for (bool punctured : {false, true}) {
                if (kind == CodeKind::first_gen && punctured) continue;
                SCOPED_TRACE(to_string(kind) + (punctured ? " punctured" : ""));
                const CodeSpec c = build_code(a.f, kind, punctured);
                const WeightDistribution wd = weight_distribution_exhaustive(c, a.f);
                const PredictionOutcome o = predict_for(a, kind, punctured, wd);
                EXPECT_EQ(o.status, "match") << o.reason;
                if (kind == CodeKind::first_gen) {
                    EXPECT_EQ(firstgen_weight_distribution_fast(c, a.spectrum, a.f[0]), wd);
                }
            }
    }
}
