#include <gtest/gtest.h>

#include "helpers.hpp"
#include "plateau/embedded_fixtures.hpp"
#include "plateau/theory.hpp"

using namespace plateau;
using testing_support::analyzed;
using testing_support::label;
using testing_support::nwrf_functions;

namespace {

WeightDistribution wd_of(const std::string& enumerator, i64 length, int dim) {
    return WeightDistribution{length, dim, parse_enumerator(enumerator)};
}

PredictionInput input(int p, int n, int s, i64 k, int e0, int e0s, CodeKind kind, bool punctured = false) {
    return PredictionInput{p, n, s, k, e0, e0s, kind, punctured};
}

bigint binom(i64 n, i64 k) {
    if (k < 0 || k > n) return 0;
    bigint r = 1;
    for (i64 i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Full dual distribution through Krawtchouk polynomials.
std::vector<bigint> macwilliams_dual(const WeightDistribution& wd, int p, int upto) {
    bigint size = 1;
    for (int i = 0; i < wd.dimension; ++i) size *= p;
    std::vector<bigint> out;
    for (int j = 0; j <= upto; ++j) {
        bigint acc = 0;
        for (const auto& [w, a] : wd.counts) {
            bigint k = 0, pw = 1;
            for (int i = 0; i < j; ++i) pw *= p - 1;
            for (int i = 0; i <= j; ++i) {
                const bigint term = pw * binom(w, i) * binom(wd.length - w, j - i);
                k += (i % 2 ? -term : term);
                if (i < j) pw /= p - 1;
            }
            acc += a * k;
        }
        EXPECT_EQ(acc % size, 0);
        out.push_back(acc / size);
    }
    return out;
}

struct ReferenceCode {
    std::string id;
    int p;
    WeightDistribution wd;
};

std::vector<ReferenceCode> reference_codes() {
    std::vector<ReferenceCode> out;
    const json fx = json::parse(embedded_reference_examples);
    for (const json& ex : fx.at("examples"))
        for (const json& c : ex.at("codes")) {
            const auto params = c.at("params").get<std::vector<i64>>();
            out.push_back({ex.at("id").get<std::string>(), ex.at("p").get<int>(),
                           wd_of(c.at("enumerator").get<std::string>(), params[0], static_cast<int>(params[1]))});
        }
    return out;
}

} // namespace

TEST(ValueDistribution, KnownValues) {
    EXPECT_EQ(value_distribution_f(3, 5, 1, 1, 0), (std::vector<i64>{99, 72, 72}));
    const auto odd = value_distribution_f(5, 4, 1, 1, 0);
    EXPECT_EQ(odd, (std::vector<i64>{125, 150, 100, 100, 150}));
    EXPECT_EQ(value_distribution_fstar(3, 5, 1, 1, 0), (std::vector<i64>{33, 24, 24}));
    EXPECT_EQ(value_distribution_fstar(5, 4, 1, 1, 0), (std::vector<i64>{25, 30, 20, 20, 30}));
    EXPECT_THROW(value_distribution_f(3, 5, 1, 0, 0), error);
}

TEST(BplusCounts, KnownValues) {
    const BplusCounts c = bplus_value_counts(3, 5, 1, 27, 1, 0);
    EXPECT_EQ(c.c, (std::vector<i64>{15, 6, 6}));
    EXPECT_EQ(c.d, (std::vector<i64>{18, 18, 18}));
    const BplusCounts o = bplus_value_counts(5, 4, 1, 25, 1, 0);
    EXPECT_EQ(o.c[0], 5);
    EXPECT_EQ(o.d[0], 20);
    try {
        bplus_value_counts(3, 5, 1, 28, 1, 0);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::divisibility_violation);
    }
    EXPECT_THROW(bplus_value_counts(3, 5, 1, 81, 1, 0), error);
}

TEST(BplusCounts, InternalIdentities) {
    for (int p : {3, 5, 7})
        for (int n = 2; n <= 6; ++n)
            for (int s = 0; s <= n - 1; ++s) {
                const i64 supp = checked_pow(p, n - s);
                for (int side : {1, -1})
                    for (i64 k = p; k < supp; k += p) {
                        BplusCounts b;
                        try {
                            b = bplus_value_counts(p, n, s, k, side, 0);
                        } catch (const error&) {
                            continue;  // parameters no function can realize
                        }
                        i64 sc = 0, sd = 0;
                        const auto N = value_distribution_fstar(p, n, s, side, 0);
                        for (int j = 0; j < p; ++j) {
                            sc += b.c[static_cast<std::size_t>(j)];
                            sd += b.d[static_cast<std::size_t>(j)];
                            EXPECT_EQ(b.c[static_cast<std::size_t>(j)] + b.d[static_cast<std::size_t>(j)], N[static_cast<std::size_t>(j)]);
                        }
                        EXPECT_EQ(sc, k);
                        EXPECT_EQ(sd, supp - k);
                    }
            }
}

TEST(BplusCounts, DifferenceFormula) {
    // e_j depends only on k and the parity branch, not on the side of 0.
    for (int p : {3, 5, 7})
        for (int n = 2; n <= 5; ++n)
            for (int s = 0; s <= n - 1; ++s) {
                const int m = n - s;
                const i64 supp = checked_pow(p, m);
                const FieldCtx F(p);
                for (int side : {1, -1})
                    for (i64 k = p; k < supp; k += p) {
                        BplusCounts b;
                        try {
                            b = bplus_value_counts(p, n, s, k, side, 0);
                        } catch (const error&) {
                            continue;
                        }
                        for (int j = 0; j < p; ++j) {
                            i64 want;
                            if ((n + s) % 2 == 0) {
                                const i64 q = m >= 2 ? checked_pow(p, m / 2 - 1) : 0;
                                want = j == 0 ? 2 * k / p - q * (checked_pow(p, m / 2) - p + 1) : 2 * k / p - q * (checked_pow(p, m / 2) + 1);
                            } else {
                                const i64 base = 2 * k / p - checked_pow(p, m - 1);
                                const int sg = p % 4 == 1 ? 1 : -1;
                                want = j == 0 ? base : base + sg * F.eta(j) * checked_pow(p, (m - 1) / 2);
                            }
                            EXPECT_EQ(b.e[static_cast<std::size_t>(j)], want) << p << n << s << k;
                        }
                    }
            }
}

TEST(StructuralProperties, CountsMatchTallies) {
    for (const auto& r : nwrf_functions()) {
        SCOPED_TRACE(label(r));
        const FunctionAnalysis a = analyzed(r);
        const PlateauProfile& pr = a.profile;
        ASSERT_TRUE(pr.eps0 && pr.dual);
        const int p = r.p;
        std::vector<i64> nf(static_cast<std::size_t>(p), 0), nfs(static_cast<std::size_t>(p), 0), c(static_cast<std::size_t>(p), 0), d(static_cast<std::size_t>(p), 0);
        for (int v : a.f.values) ++nf[static_cast<std::size_t>(v)];
        for (i64 x : pr.supp) ++nfs[static_cast<std::size_t>(pr.fstar[static_cast<std::size_t>(x)])];
        for (i64 x : pr.b_plus) ++c[static_cast<std::size_t>(pr.fstar[static_cast<std::size_t>(x)])];
        for (i64 x : pr.b_minus) ++d[static_cast<std::size_t>(pr.fstar[static_cast<std::size_t>(x)])];
        EXPECT_EQ(value_distribution_f(p, r.n, pr.s, *pr.eps0, pr.fstar[0]), nf);
        EXPECT_EQ(value_distribution_fstar(p, r.n, pr.s, pr.dual->sign_star[0], a.f[0]), nfs);
        const BplusCounts b = bplus_value_counts(p, r.n, pr.s, pr.k, pr.dual->sign_star[0], a.f[0]);
        EXPECT_EQ(b.c, c);
        EXPECT_EQ(b.d, d);
    }
}

TEST(StructuralProperties, HomogeneityOfDualAndSigns) {
    for (const auto& r : nwrf_functions()) {
        SCOPED_TRACE(label(r));
        const FunctionAnalysis a = analyzed(r);
        const PlateauProfile& pr = a.profile;
        ASSERT_TRUE(pr.dual_h);
        const int p = r.p;
        EXPECT_TRUE(pr.in_supp(0));
        EXPECT_EQ(pr.fstar[0], 0);
        for (i64 x : pr.supp)
            for (int s = 1; s < p; ++s) {
                const i64 y = scale_index(p, r.n, x, s);
                ASSERT_TRUE(pr.in_supp(y));
                EXPECT_EQ(pr.fstar[static_cast<std::size_t>(y)], pow_mod(s, *pr.dual_h, p) * pr.fstar[static_cast<std::size_t>(x)] % p);
                EXPECT_EQ(pr.eps[static_cast<std::size_t>(y)], pr.eps[static_cast<std::size_t>(x)]);
            }
    }
}

TEST(StructuralProperties, TypeAgreementIffResidueOne) {
    for (const auto& r : nwrf_functions()) {
        SCOPED_TRACE(label(r));
        const FunctionAnalysis a = analyzed(r);
        const PlateauProfile& pr = a.profile;
        ASSERT_TRUE(pr.dual && pr.eps0);
        EXPECT_TRUE(pr.dual->involution_ok);
        const bool residue_one = pow_mod(r.p, r.n + pr.s, 4) == 1;
        EXPECT_EQ(*pr.eps0 == pr.dual->sign_star[0], residue_one);
    }
}

TEST(PredictFirstGen, KnownValues) {
    EXPECT_EQ(predict_weights_firstgen(input(3, 5, 1, 27, 1, 1, CodeKind::first_gen)).counts,
              parse_enumerator("1+30z^144+72z^153+566z^162+24z^171+36z^180"));
    EXPECT_EQ(predict_weights_firstgen(input(3, 5, 1, 54, -1, -1, CodeKind::first_gen)).counts,
              parse_enumerator("1+36z^144+48z^153+566z^162+72z^171+6z^180"));
    const WeightDistribution w = predict_weights_firstgen(input(5, 4, 1, 25, 1, 1, CodeKind::first_gen));
    EXPECT_EQ(w.counts, parse_enumerator("1+240z^475+2724z^500+160z^525"));
    EXPECT_EQ(w.length, 624);
    EXPECT_EQ(w.dimension, 5);
}

TEST(PredictFirstGen, Hypotheses) {
    EXPECT_THROW(predict_weights_firstgen(input(3, 5, 4, 3, 1, 1, CodeKind::first_gen)), error);  // s above n-2 for even n+s
    EXPECT_THROW(predict_weights_firstgen(input(3, 5, 1, 81, 1, 1, CodeKind::first_gen)), error);  // k must stay below p^{n-s}
    try {
        predict_weights_firstgen(input(3, 5, 1, 28, 1, 1, CodeKind::first_gen));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::divisibility_violation);
    }
    EXPECT_THROW(predict_weights_firstgen(input(3, 5, 1, 27, 1, 1, CodeKind::defset_zero)), error);
    EXPECT_THROW(predict_weights_firstgen(input(3, 5, 1, 27, 1, 1, CodeKind::first_gen, true)), error);
}

TEST(PredictDefSet, KnownValues) {
    const auto full = predict_weights_defset(input(3, 5, 1, 27, 1, 1, CodeKind::defset_zero));
    EXPECT_EQ(full.length, 98);
    EXPECT_EQ(full.counts, parse_enumerator("1+14z^54+36z^60+162z^66+12z^72+18z^78"));
    const auto pun = predict_weights_defset(input(3, 5, 1, 27, 1, 1, CodeKind::defset_zero, true));
    EXPECT_EQ(pun.length, 49);
    EXPECT_EQ(pun.counts, parse_enumerator("1+14z^27+36z^30+162z^33+12z^36+18z^39"));
    const auto odd = predict_weights_defset(input(5, 4, 1, 25, 1, 1, CodeKind::defset_zero));
    EXPECT_EQ(odd.length, 124);
    EXPECT_EQ(odd.counts, parse_enumerator("1+60z^80+524z^100+40z^120"));
    const auto minus = predict_weights_defset(input(3, 5, 1, 54, -1, -1, CodeKind::defset_zero));
    EXPECT_EQ(minus.counts, parse_enumerator("1+18z^30+24z^36+162z^42+36z^48+2z^54"));
}

TEST(PredictQuadratic, KnownValues) {
    const auto sq = predict_weights_quadratic_defset(input(3, 5, 1, 27, 1, 1, CodeKind::defset_sq));
    EXPECT_EQ(sq.length, 72);
    EXPECT_EQ(sq.counts, parse_enumerator("1+6z^36+36z^42+162z^48+20z^54+18z^60"));
    const auto f54 = predict_weights_quadratic_defset(input(5, 4, 1, 25, 1, 1, CodeKind::defset_sq));
    EXPECT_EQ(f54.length, 300);
    EXPECT_EQ(f54.counts, parse_enumerator("1+4z^200+40z^220+540z^240+20z^260+20z^280"));
    const auto f55 = predict_weights_quadratic_defset(input(5, 5, 0, 625, 1, 1, CodeKind::defset_sq));
    EXPECT_EQ(f55.length, 1300);
    EXPECT_EQ(f55.counts, parse_enumerator("1+124z^1000+1000z^1020+1200z^1040+300z^1060+500z^1080"));
}

TEST(Predictions, TotalsAndPuncturingConsistency) {
    for (int p : {3, 5})
        for (int n = 3; n <= 7; ++n)
            for (int s = 0; s <= n; ++s)
                for (CodeKind kind : {CodeKind::first_gen, CodeKind::defset_zero, CodeKind::defset_sq, CodeKind::defset_nsq})
                    for (int e0 : {1, -1})
                        for (int e0s : {1, -1}) {
                            const i64 supp = checked_pow(p, n - s);
                            for (i64 k = p; k < supp; k += std::max<i64>(p, supp / 7 / p * p)) {
                                WeightDistribution w;
                                try {
                                    w = predict_weights(input(p, n, s, k, e0, e0s, kind));
                                } catch (const error&) {
                                    continue;
                                }
                                EXPECT_EQ(w.total(), checked_pow(p, w.dimension));
                                EXPECT_EQ(w.counts.at(0), 1);
                                EXPECT_LE(w.max_weight().value_or(0), w.length);
                                if (kind == CodeKind::first_gen) continue;
                                const WeightDistribution pw = predict_weights(input(p, n, s, k, e0, e0s, kind, true));
                                EXPECT_EQ(pw.length * (p - 1), w.length);
                                std::map<i64, i64> scaled;
                                for (const auto& [wt, c] : pw.counts) scaled[wt * (p - 1)] = c;
                                EXPECT_EQ(scaled, w.counts);
                            }
                        }
}

TEST(Pless, KnownValues) {
    const DualLowWeights d1 = pless_dual_low_weights(wd_of("1+30z^144+72z^153+566z^162+24z^171+36z^180", 242, 6), 3);
    EXPECT_EQ(d1.a[0], 0);
    EXPECT_GT(d1.a[1], 0);
    EXPECT_EQ(d1.label, "2");
    EXPECT_EQ(d1.dual_dimension, 236);
    const DualLowWeights d2 = pless_dual_low_weights(wd_of("1+14z^27+36z^30+162z^33+12z^36+18z^39", 49, 5), 3);
    EXPECT_EQ(d2.a[0], 0);
    EXPECT_EQ(d2.a[1], 0);
    EXPECT_GT(d2.a[2], 0);
    EXPECT_EQ(d2.label, "3");
    const DualLowWeights whole = pless_dual_low_weights(WeightDistribution{1, 1, {{0, 1}, {1, 2}}}, 3);
    EXPECT_EQ(whole.a[0], 0);
    EXPECT_EQ(whole.label, "trivial");
}

TEST(Pless, AgreesWithMacWilliams) {
    for (const auto& [id, p, wd] : reference_codes()) {
        SCOPED_TRACE(id + " " + enumerator_string(wd));
        const DualLowWeights d = pless_dual_low_weights(wd, p);
        const auto mw = macwilliams_dual(wd, p, 4);
        EXPECT_EQ(mw[0], 1);
        for (int j = 1; j <= 4; ++j) EXPECT_EQ(bigint(d.a[static_cast<std::size_t>(j - 1)]), mw[static_cast<std::size_t>(j)]) << "A" << j;
    }
}

TEST(Pless, RejectsInconsistentInput) {
    WeightDistribution w = wd_of("1+14z^27+36z^30+162z^33+12z^36+18z^39", 49, 5);
    w.counts[30] -= 1;
    w.counts[31] += 1;
    try {
        pless_dual_low_weights(w, 3);
        FAIL();
    } catch (const error& e) {
        EXPECT_TRUE(e.code() == errc::non_integral_solution || e.code() == errc::negative_solution);
    }
    w.counts[31] += 1;
    EXPECT_THROW(pless_dual_low_weights(w, 3), error);
}

TEST(Minimality, KnownValues) {
    EXPECT_TRUE(minimality_check(wd_of("1+30z^144+72z^153+566z^162+24z^171+36z^180", 242, 6), 3).minimal);
    EXPECT_TRUE(minimality_check(wd_of("1+14z^54+36z^60+162z^66+12z^72+18z^78", 98, 5), 3).minimal);
    const MinimalityVerdict v = minimality_check(wd_of("1+6z^12+36z^14+20z^18+18z^20", 24, 4), 3);
    EXPECT_FALSE(v.minimal);
    EXPECT_EQ(v.wmin, 12);
    EXPECT_EQ(v.wmax, 20);
    EXPECT_THROW(minimality_check(WeightDistribution{4, 0, {{0, 1}}}, 3), error);
}

TEST(Bounds, KnownValues) {
    EXPECT_TRUE(bound_checks(4, 2, 3, 5).mds);
    for (int p : {3, 5, 7}) {
        const BoundReport b = bound_checks(p * p - 1, p * p - 4, 3, p);
        EXPECT_TRUE(b.amds);
        EXPECT_FALSE(b.mds);
    }
    EXPECT_TRUE(bound_checks(49, 44, 3, 3).sphere_packing_ok);
    // Distances 3 and 4 share the packing radius 1; radius 2 is the first violation.
    EXPECT_TRUE(bound_checks(49, 44, 4, 3).sphere_packing_ok);
    EXPECT_FALSE(bound_checks(49, 44, 5, 3).sphere_packing_ok);
    EXPECT_EQ(bound_checks(49, 44, 3, 3).singleton_defect, 3);
}
