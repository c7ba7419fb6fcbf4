#include <gtest/gtest.h>

#include "optcurve/zeta.hpp"
#include "oracles.hpp"

using namespace optcurve;

TEST(ExtensionCounts, SpecExamples) {
    const EllipticCurve e{47, 1, 38};
    EXPECT_EQ(count_over_extension(e, 1), 61);
    // N_2 = q^2 + 1 - (t^2 - 2q) with t = -13.
    const i64 t = -13;
    EXPECT_EQ(count_over_extension(e, 2), 47 * 47 + 1 - (t * t - 2 * 47));
    EXPECT_EQ(count_over_extension(e, 2), 2135);
    EXPECT_THROW(count_over_extension(e, 4), std::invalid_argument);
}

TEST(ExtensionCounts, GenusOnePowerSumIdentity) {
    // N_r = q^r + 1 - (alpha^r + conj^r) with power sums from the trace.
    for (u64 q : {47, 61}) {
        const PrimeField F(q);
        for (u64 a = 0; a < q; a += 23) {
            for (u64 b = 1; b < q; b += 19) {
                const EllipticCurve e{q, a, b};
                if (!is_nonsingular(F, e)) continue;
                const i64 t = static_cast<i64>(q) + 1 - oracle::elliptic_count(q, a, b);
                const i64 qq = static_cast<i64>(q);
                const i64 s2 = t * t - 2 * qq;
                const i64 s3 = t * s2 - qq * t;
                EXPECT_EQ(count_over_extension(e, 2), qq * qq + 1 - s2);
                EXPECT_EQ(count_over_extension(e, 3), qq * qq * qq + 1 - s3);
            }
        }
    }
}

TEST(LPoly, SpecExamples) {
    const auto L1 = lpoly_from_counts(ExtensionCounts{47, 1, {61}});
    EXPECT_EQ(L1.coeffs, (std::vector<i64>{1, 13, 47}));
    const auto L5 = lpoly_from_counts(ExtensionCounts{5, 1, {6}});
    EXPECT_EQ(L5.coeffs, (std::vector<i64>{1, 0, 5}));
}

TEST(LPoly, InconsistentCountsFailLoudly) {
    // g = 2 with S_1 = 1 (odd) and S_2 = 0 needs a_2 = (S_1^2 - S_2) / 2 = 1/2.
    EXPECT_THROW(lpoly_from_counts(ExtensionCounts{5, 2, {5, 26}}), std::invalid_argument);
    EXPECT_THROW(lpoly_from_counts(ExtensionCounts{5, 2, {5}}), std::invalid_argument);
    EXPECT_THROW(lpoly_from_counts(ExtensionCounts{5, 4, {5, 26, 1, 1}}), std::invalid_argument);
}

TEST(LPoly, OptimalityCriterion) {
    const auto field = make_disc19_field(47);
    const auto cube = oracle::poly_product({{1, 13, 47}, {1, 13, 47}, {1, 13, 47}});
    EXPECT_EQ(cube[0], 1);
    EXPECT_EQ(cube[1], 39);
    EXPECT_EQ(cube[2], 648);
    EXPECT_EQ(cube[3], 5863);
    EXPECT_EQ(optimal_lpoly_coeffs(field, 3, Kind::maximal), cube);
    EXPECT_TRUE(is_optimal_lpoly(LPolynomial{47, 3, cube}, field, 3, Kind::maximal));
    EXPECT_FALSE(is_optimal_lpoly(LPolynomial{47, 3, cube}, field, 3, Kind::minimal));
    const auto neg = oracle::poly_product({{1, -13, 47}, {1, -13, 47}, {1, -13, 47}});
    EXPECT_FALSE(is_optimal_lpoly(LPolynomial{47, 3, neg}, field, 3, Kind::maximal));
    EXPECT_TRUE(is_optimal_lpoly(LPolynomial{47, 3, neg}, field, 3, Kind::minimal));
    const auto mixed = oracle::poly_product({{1, 13, 47}, {1, 13, 47}, {1, -13, 47}});
    EXPECT_FALSE(is_optimal_lpoly(LPolynomial{47, 3, mixed}, field, 3, Kind::maximal));
    EXPECT_FALSE(is_optimal_lpoly(LPolynomial{47, 3, mixed}, field, 3, Kind::minimal));
}

TEST(LPoly, RoundTripGenusOnePaperCurves) {
    struct Row {
        u64 q, a, b;
    };
    for (const Row& r : {Row{47, 1, 38}, Row{47, 32, 27}, Row{61, 6, 29}, Row{61, 32, 57}, Row{137, 1, 36},
                         Row{137, 61, 47}}) {
        const EllipticCurve e{r.q, r.a, r.b};
        const auto L = lpoly_from_counts(ExtensionCounts{r.q, 1, {count_over_extension(e, 1)}});
        EXPECT_EQ(L.coeffs[2], static_cast<i64>(r.q));  // functional equation
        EXPECT_EQ(predict_count(L, 2), count_over_extension(e, 2)) << r.q;
        EXPECT_EQ(predict_count(L, 3), count_over_extension(e, 3)) << r.q;
        EXPECT_TRUE(satisfies_weil(r.q, 1, 3, predict_count(L, 3)));
    }
}

TEST(LPoly, GenusTwoOptimalAtQ47) {
    const Genus2Curve c{47, Poly{33, 0, 22, 0, 4, 0, 1}, Kind::maximal};
    ExtensionCounts counts{47, 2, {count_over_extension(c, 1), count_over_extension(c, 2)}};
    EXPECT_EQ(counts.n[0], 74);
    // Jac is isogenous to E1 x E2 with both maximal: q^2 + 1 - 2 (m^2 - 2q).
    EXPECT_EQ(counts.n[1], 47 * 47 + 1 - 2 * (169 - 94));
    const auto L = lpoly_from_counts(counts);
    EXPECT_TRUE(is_optimal_lpoly(L, make_disc19_field(47), 2, Kind::maximal));
    // Functional equation and the predicted third count.
    EXPECT_EQ(L.coeffs[3], 47 * L.coeffs[1]);
    EXPECT_EQ(L.coeffs[4], 47 * 47);
    EXPECT_EQ(predict_count(L, 3), count_over_extension(c, 3));
}

TEST(LPoly, GenusOneOptimalAtQ47) {
    const auto field = make_disc19_field(47);
    for (auto [e, k] : {std::pair{EllipticCurve{47, 1, 38}, Kind::maximal}, std::pair{EllipticCurve{47, 32, 27}, Kind::minimal}}) {
        const auto L = lpoly_from_counts(ExtensionCounts{47, 1, {count_over_extension(e, 1)}});
        EXPECT_TRUE(is_optimal_lpoly(L, field, 1, k));
    }
}

TEST(LPoly, GenusThreeVerifiedCoverAtQ47) {
    // A cover certified by the search (B = 4, 87 points over F_47).
    const Genus3Cover c{EllipticCurve{47, 1, 38}, Poly{23, 19, 44}, Poly{1}};
    ExtensionCounts counts{47, 3, {}};
    for (int r = 1; r <= 3; ++r) counts.n.push_back(count_over_extension(c, r));
    EXPECT_EQ(counts.n[0], 87);
    // q^2 + 1 - 3 (m^2 - 2q) for (1 + 13t + 47t^2)^3.
    EXPECT_EQ(counts.n[1], 47 * 47 + 1 - 3 * (169 - 94));
    const auto L = lpoly_from_counts(counts);
    EXPECT_EQ(L.coeffs, oracle::poly_product({{1, 13, 47}, {1, 13, 47}, {1, 13, 47}}));
    EXPECT_TRUE(is_optimal_lpoly(L, make_disc19_field(47), 3, Kind::maximal));
    for (int r = 1; r <= 3; ++r) EXPECT_TRUE(satisfies_weil(47, 3, r, counts.n[static_cast<std::size_t>(r - 1)]));
}

TEST(Weil, Bound) {
    EXPECT_TRUE(satisfies_weil(47, 3, 1, 87));
    EXPECT_FALSE(satisfies_weil(47, 3, 1, 90));
    EXPECT_TRUE(satisfies_weil(47, 1, 1, 35));
}
