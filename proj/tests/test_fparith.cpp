#include <gtest/gtest.h>

#include <random>

#include "optcurve/ext_field.hpp"
#include "optcurve/poly.hpp"
#include "optcurve/prime_field.hpp"
#include "oracles.hpp"

using namespace optcurve;

TEST(Legendre, SpecExamples) {
    const PrimeField F(47);
    EXPECT_EQ(F.chi(0), 0);
    EXPECT_EQ(F.chi(1), 1);
    EXPECT_EQ(F.chi(5), -1);
    EXPECT_EQ(oracle::modpow(5, 23, 47), 46U);
}

TEST(Legendre, MatchesEulerCriterion) {
    for (u64 q : {3, 5, 7, 11, 13, 47, 61, 137, 997}) {
        const PrimeField F(q);
        for (u64 x = 0; x < q; ++x) ASSERT_EQ(F.chi(x), oracle::euler_chi(x, q)) << "q=" << q << " x=" << x;
    }
}

TEST(Legendre, EulerFallbackAboveTableLimit) {
    const u64 q = 2147483647;  // 2^31 - 1, beyond the precomputed table
    const PrimeField F(q);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const u64 x = rng() % q;
        ASSERT_EQ(F.chi(x), oracle::euler_chi(x, q));
    }
}

TEST(Legendre, MultiplicativeExhaustive) {
    for (u64 q : {47, 61, 137, 277}) {
        const PrimeField F(q);
        for (u64 x = 1; x < q; ++x) {
            for (u64 y = 1; y < q; ++y) ASSERT_EQ(F.chi(F.mul(x, y)), F.chi(x) * F.chi(y));
        }
    }
}

TEST(Legendre, CharacterSumVanishes) {
    for (u64 q : {47, 61, 137, 277, 311, 347, 467, 557, 761, 997}) {
        const PrimeField F(q);
        int s = 0;
        for (u64 x = 0; x < q; ++x) s += F.chi(x);
        EXPECT_EQ(s, 0) << q;
    }
}

TEST(PrimeField, RejectsBadModulus) {
    EXPECT_THROW(PrimeField(2), std::invalid_argument);
    EXPECT_THROW(PrimeField(49), std::invalid_argument);
    EXPECT_THROW(PrimeField(1), std::invalid_argument);
}

TEST(PrimeField, SqrtAndInverse) {
    const PrimeField F(61);
    for (u64 x = 1; x < 61; ++x) {
        EXPECT_EQ(F.mul(x, F.inv(x)), 1U);
        const auto r = F.sqrt(x);
        EXPECT_EQ(r.has_value(), F.chi(x) == 1);
        if (r) EXPECT_EQ(F.mul(*r, *r), x);
    }
    EXPECT_THROW(F.inv(0), std::domain_error);
}

namespace {

/// Multiplicative order of a in K* by brute force.
u64 element_order(const ExtField& K, const ExtElement& a) {
    ExtElement x = a;
    for (u64 k = 1;; ++k) {
        if (x == K.one()) return k;
        x = K.mul(x, a);
    }
}

} // namespace

TEST(ExtChi, SpecExamplesInQuadraticExtension) {
    const ExtField K(47, 2);
    EXPECT_EQ(K.chi(K.zero()), 0);
    EXPECT_EQ(K.chi(K.one()), 1);
    // Find a generator by order testing, then check it is a nonsquare.
    bool found = false;
    for (u64 i = 2; i < K.size() && !found; ++i) {
        const auto g = K.element(i);
        if (element_order(K, g) == K.size() - 1) {
            EXPECT_EQ(K.chi(g), -1);
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(ExtChi, MatchesSquareEnumeration) {
    for (auto [q, r] : {std::pair<u64, int>{5, 2}, {7, 2}, {5, 3}, {3, 3}, {11, 2}}) {
        const ExtField K(q, r);
        std::vector<int> is_sq(K.size(), 0);
        for (u64 i = 0; i < K.size(); ++i) {
            const auto z = K.element(i);
            const auto s = K.mul(z, z);
            u64 idx = 0;
            for (int k = r - 1; k >= 0; --k) idx = idx * q + s.c[static_cast<std::size_t>(k)];
            is_sq[idx] = 1;
        }
        for (u64 i = 1; i < K.size(); ++i) ASSERT_EQ(K.chi(K.element(i)), is_sq[i] ? 1 : -1) << q << "^" << r;
    }
}

TEST(ExtChi, BaseFieldElementsAreSquaresInQuadraticExtension) {
    for (u64 q : {47, 61}) {
        const ExtField K(q, 2);
        for (u64 a = 1; a < q; ++a) ASSERT_EQ(K.chi(K.from_base(a)), 1);
    }
}

TEST(ExtChi, CubicExtensionAgreesWithBaseCharacter) {
    for (u64 q : {47, 61}) {
        const PrimeField F(q);
        const ExtField K(q, 3);
        for (u64 a = 0; a < q; ++a) ASSERT_EQ(K.chi(K.from_base(a)), F.chi(a));
    }
}

TEST(ExtField, FieldAxiomsAndModulusIrreducible) {
    const ExtField K(7, 3);
    const auto& m = K.modulus();
    for (u64 x = 0; x < 7; ++x) {
        const u64 val = (x * x * x + m[2] * x * x + m[1] * x + m[0]) % 7;
        EXPECT_NE(val, 0U) << "modulus has a root";
    }
    for (u64 i = 1; i < K.size(); i += 5) {
        const auto a = K.element(i);
        EXPECT_EQ(K.mul(a, K.inv(a)), K.one());
        const auto s = K.sqrt(K.mul(a, a));
        ASSERT_TRUE(s.has_value());
        EXPECT_EQ(K.mul(*s, *s), K.mul(a, a));
    }
    EXPECT_THROW(ExtField(47, 4), std::invalid_argument);
}

TEST(PolyEval, SpecExamples) {
    const PrimeField F(47);
    const Poly f{38, 1, 0, 1};
    EXPECT_EQ(poly_eval(F, f, 0), 38U);
    EXPECT_EQ(poly_eval(F, f, 1), 40U);
    const Poly s = poly_compose(F, f, Poly{F.reduce(-30), 0, 1});
    EXPECT_EQ(poly_eval(F, s, 0), 33U);
}

TEST(PolyEval, ExtensionAgreesOnEmbeddedInputs) {
    const PrimeField F(61);
    std::mt19937_64 rng(3);
    for (int r : {2, 3}) {
        const ExtField K(61, r);
        for (int t = 0; t < 20; ++t) {
            std::vector<u64> c(5);
            for (auto& x : c) x = rng() % 61;
            const Poly p(c);
            for (u64 x = 0; x < 61; ++x) {
                ASSERT_EQ(poly_eval(K, p, K.from_base(x)), K.from_base(poly_eval(F, p, x)));
            }
        }
    }
}

TEST(Squarefree, SpecExamples) {
    const PrimeField F(47);
    const Poly a{1, 0, 1};
    EXPECT_TRUE(poly_is_squarefree(F, a));
    const auto da = poly_squarefree(F, a);
    ASSERT_EQ(da.parts.size(), 1U);
    EXPECT_EQ(da.parts[0].first, a);
    EXPECT_EQ(da.parts[0].second, 1);

    const Poly b = poly_pow(F, Poly{46, 1}, 2);  // (x - 1)^2
    const auto db = poly_squarefree(F, b);
    ASSERT_EQ(db.parts.size(), 1U);
    EXPECT_EQ(db.parts[0].first, (Poly{46, 1}));
    EXPECT_EQ(db.parts[0].second, 2);

    const auto dc = poly_squarefree(F, Poly{0, 0, 0, 1});
    ASSERT_EQ(dc.parts.size(), 1U);
    EXPECT_EQ(dc.parts[0].first, (Poly{0, 1}));
    EXPECT_EQ(dc.parts[0].second, 3);
}

TEST(Squarefree, ReconstructsInput) {
    std::mt19937_64 rng(11);
    for (u64 q : {3, 5, 7, 47}) {
        const PrimeField F(q);
        for (int t = 0; t < 200; ++t) {
            // Random product of small factors with random multiplicities,
            // including p-th powers in small characteristic.
            Poly p{1 + rng() % (q - 1)};
            const int nf = 1 + static_cast<int>(rng() % 3);
            for (int k = 0; k < nf; ++k) {
                const Poly fac{rng() % q, rng() % q, 1};
                p = poly_mul(F, p, poly_pow(F, fac, 1 + static_cast<int>(rng() % 4)));
            }
            const auto d = poly_squarefree(F, p);
            Poly back{d.leading};
            for (const auto& [part, mult] : d.parts) {
                EXPECT_TRUE(poly_is_squarefree(F, part));
                back = poly_mul(F, back, poly_pow(F, part, mult));
            }
            ASSERT_EQ(back, p) << poly_to_string(p);
            for (std::size_t i = 0; i < d.parts.size(); ++i) {
                for (std::size_t j = i + 1; j < d.parts.size(); ++j) {
                    EXPECT_NE(d.parts[i].second, d.parts[j].second);
                    EXPECT_EQ(poly_gcd(F, d.parts[i].first, d.parts[j].first).degree(), 0);
                }
            }
        }
    }
}

TEST(Poly, DivmodIdentity) {
    const PrimeField F(61);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        std::vector<u64> a(1 + rng() % 8);
        std::vector<u64> b(1 + rng() % 4);
        for (auto& x : a) x = rng() % 61;
        for (auto& x : b) x = rng() % 61;
        b.back() = 1 + rng() % 60;
        const Poly pa(a);
        const Poly pb(b);
        const auto [qq, rr] = poly_divmod(F, pa, pb);
        EXPECT_LT(rr.degree(), pb.degree());
        EXPECT_EQ(poly_add(F, poly_mul(F, qq, pb), rr), pa);
    }
}

TEST(Poly, ToString) {
    EXPECT_EQ(poly_to_string(Poly{33, 0, 22, 0, 4, 0, 1}), "x^6+4x^4+22x^2+33");
    EXPECT_EQ(poly_to_string(Poly{}), "0");
}
