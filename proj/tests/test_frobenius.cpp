#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace symptrace;

namespace {

std::vector<std::int64_t> small(const IntPoly& f) {
    std::vector<std::int64_t> out;
    for (const auto& c : f.coeffs()) out.push_back(static_cast<std::int64_t>(c));
    return out;
}

struct Known {
    std::uint64_t p, n1, n2;
    std::int64_t a1, a2;
};

void expect_table(const char* curve, const std::vector<Known>& rows) {
    const auto c = CurveSpec::parse(curve);
    for (const auto& k : rows) {
        EXPECT_EQ(count_points(c, k.p), k.n1) << curve << " p=" << k.p;
        EXPECT_EQ(count_points(c, k.p, 2), k.n2) << curve << " p=" << k.p;
        const auto w = weil_polynomial(c, k.p);
        EXPECT_EQ(w.a(1), k.a1) << curve << " p=" << k.p;
        EXPECT_EQ(w.a(2), k.a2) << curve << " p=" << k.p;
    }
}

}  // namespace

TEST(CurveSpec, Validation) {
    EXPECT_THROW(CurveSpec::parse("x^2+1"), Error);
    EXPECT_THROW(CurveSpec::parse("x^7+1"), Error);
    EXPECT_THROW(CurveSpec::parse("x^3"), Error);
    const auto c = CurveSpec::parse("x^3+x+1");
    EXPECT_EQ(c.genus(), 1);
    EXPECT_EQ(c.disc(), -31);
    EXPECT_EQ(c.bad_primes_upto(40), (std::vector<std::uint64_t>{2, 31}));
    EXPECT_EQ(CurveSpec::parse("x^6+x+1").genus(), 2);
    EXPECT_EQ(c.id().size(), 16U);
    EXPECT_EQ(c.id(), CurveSpec::parse("1 + x + x^3").id());
    EXPECT_NE(c.id(), CurveSpec::parse("x^3+x+2").id());
}

TEST(CountPoints, Examples) {
    const auto e = CurveSpec::parse("x^3+x+1");
    EXPECT_EQ(count_points(e, 5), 9U);
    EXPECT_EQ(count_points(e, 3), 4U);
    const auto h = CurveSpec::parse("x^5+1");
    EXPECT_EQ(count_points(h, 3), 4U);
    EXPECT_EQ(count_points(h, 3, 2), 10U);
}

TEST(CountPoints, BadReductionAndBudget) {
    const auto e = CurveSpec::parse("x^3+x+1");
    try {
        count_points(e, 31);
        FAIL();
    } catch (const Error& err) {
        EXPECT_NE(std::string(err.what()).find("bad reduction"), std::string::npos);
    }
    EXPECT_THROW(count_points(e, 2), Error);
    EXPECT_THROW(count_points(e, 10000019), BudgetError);
    EXPECT_THROW(count_points(e, 3001, 2), BudgetError);
}

TEST(CountPoints, AgreesWithBruteForceOverFp) {
    for (const char* curve : {"x^3+x+1", "x^5+1", "x^4+x+2", "x^6+x+1", "x^5+3x^3+x+1", "2x^3-x+5"}) {
        const auto c = CurveSpec::parse(curve);
        const auto f = small(c.f());
        for (auto p : oracle::segmented_primes(200))
            if (!c.is_bad(p)) {
                ASSERT_EQ(count_points(c, p), oracle::brute_count_fp(f, p)) << curve << " p=" << p;
            }
    }
}

TEST(CountPoints, AgreesWithBruteForceOverFp2) {
    for (const char* curve : {"x^5+1", "x^6+x+1", "x^5+3x^3+x+1", "x^3+x+1"}) {
        const auto c = CurveSpec::parse(curve);
        const auto f = small(c.f());
        for (auto p : oracle::segmented_primes(200))
            if (!c.is_bad(p)) {
                ASSERT_EQ(count_points(c, p, 2), oracle::brute_count_fp2(f, p)) << curve << " p=" << p;
            }
    }
}

TEST(Weil, GenusOneExamples) {
    const auto e = CurveSpec::parse("x^3+x+1");
    EXPECT_EQ(weil_polynomial(e, 5).a(1), 3);
    EXPECT_EQ(weil_polynomial(e, 7).a(1), -3);
    EXPECT_EQ(frobenius_trace(e, 3), 0);
    EXPECT_EQ(frobenius_trace(e, 5), 3);
    EXPECT_EQ(frobenius_trace(e, 7), -3);
    const std::map<std::uint64_t, std::uint64_t> n1{{3, 4}, {5, 9}, {7, 5}, {11, 14}, {13, 18}, {17, 18}, {19, 21}, {23, 28}, {29, 36}, {37, 48}};
    for (auto [p, n] : n1) EXPECT_EQ(count_points(e, p), n) << p;
    const std::map<std::uint64_t, std::uint64_t> quartic{{3, 4}, {5, 7}, {7, 12}, {11, 18}, {13, 8}, {17, 21}, {19, 21}, {23, 30}, {29, 39}, {31, 36}, {37, 40}};
    const auto q = CurveSpec::parse("x^4+x+2");
    EXPECT_EQ(q.disc(), 2021);
    for (auto [p, n] : quartic) EXPECT_EQ(count_points(q, p), n) << p;
}

TEST(Weil, GenusTwoFrozenTables) {
    expect_table("x^5+1", {{3, 4, 10, 0, 0}, {7, 8, 50, 0, 0}, {11, 8, 118, -4, 6}, {13, 14, 170, 0, 0},
                           {17, 18, 290, 0, 0}, {19, 20, 438, 0, 38}, {23, 24, 530, 0, 0}});
    expect_table("x^5+3x^3+x+1", {{5, 9, 39, 3, 11}, {7, 3, 61, -5, 18}, {11, 14, 118, 2, 0}, {13, 15, 195, 1, 13},
                                  {17, 15, 337, -3, 28}, {19, 20, 354, 0, -4}, {23, 24, 522, 0, -4}});
    expect_table("x^6+x+1", {{3, 7, 13, 3, 6}, {5, 6, 36, 0, 5}, {7, 9, 67, 1, 9}, {11, 19, 129, 7, 28},
                             {13, 10, 192, -4, 19}, {17, 25, 305, 7, 32}, {19, 18, 378, -2, 10}, {23, 18, 548, -6, 27}});
    EXPECT_EQ(CurveSpec::parse("x^5+3x^3+x+1").disc(), 11469);
    EXPECT_EQ(CurveSpec::parse("x^6+x+1").disc(), -43531);
}

TEST(Weil, FullPolynomialAndRecord) {
    const auto rec = frobenius_record(CurveSpec::parse("x^5+1"), 3);
    EXPECT_EQ(rec.P, (IntPoly{9, 0, 0, 0, 1}));
    EXPECT_EQ(rec.Q, rec.P);
    EXPECT_EQ(rec.discP, 186624);
    EXPECT_TRUE(disc_bound_check(rec));
    EXPECT_LE(rec.discP, boost::multiprecision::pow(BigInt(12), 6));
    EXPECT_TRUE(degree_bound_check(rec));
    EXPECT_EQ(rec.n2, std::optional<std::uint64_t>(10));
}

TEST(Weil, InvariantsOverRangeOfPrimes) {
    for (const char* curve : {"x^3+x+1", "x^4+x+2", "x^5+1", "x^6+x+1"}) {
        const auto c = CurveSpec::parse(curve);
        const int g = c.genus();
        for (auto p : oracle::segmented_primes(1000)) {
            if (c.is_bad(p)) continue;
            const auto rec = frobenius_record(c, p);
            const auto P = rec.P;
            ASSERT_EQ(P.degree(), 2 * g);
            for (int k = 0; k <= g; ++k) ASSERT_EQ(P.coeff(g - k), boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(k)) * P.coeff(g + k));
            for (const auto& r : rec.weil.complex_roots()) ASSERT_NEAR(static_cast<double>(std::abs(r)), std::sqrt(static_cast<double>(p)), 1e-6);
            ASSERT_EQ(rec.discP, oracle::sylvester_discriminant(P));
            ASSERT_TRUE(disc_bound_check(rec));
            ASSERT_TRUE(degree_bound_check(rec));
            ASSERT_TRUE(disc_divides_check(rec));
            ASSERT_EQ(rec.Q, squarefree_radical(P));
            // P(1) counts points on the Jacobian, which is positive
            ASSERT_GT(P.eval(1), 0);
        }
    }
}

TEST(Weil, HasseWeilViolationIsCountInconsistency) {
    try {
        WeilPolynomial(1, 5, {5});
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("count inconsistency"), std::string::npos);
    }
    EXPECT_THROW(weil_from_counts(2, 5, 6, 100), Error);
    EXPECT_THROW(weil_from_counts(2, 5, 6, std::nullopt), Error);
    EXPECT_NO_THROW(WeilPolynomial(1, 5, {4}));
}

TEST(Weil, Reducibility) {
    EXPECT_TRUE(WeilPolynomial(1, 7, {3}).irreducible());
    // (X^2 - p)^2 and products of two quadratics
    EXPECT_FALSE(WeilPolynomial(2, 3, {0, -6}).irreducible());
    EXPECT_FALSE(WeilPolynomial(2, 5, {0, 10}).irreducible());
    EXPECT_TRUE(WeilPolynomial(2, 3, {0, 0}).irreducible());
}

TEST(SplitTest, Examples) {
    const IntPoly q{5, 3, 1};
    const BigInt d = discriminant(q);
    EXPECT_TRUE(split_test(q, d, 7, 3));
    EXPECT_FALSE(split_test(q, d, 7, 11));
    EXPECT_FALSE(split_test(q, d, 7, 19));
    EXPECT_THROW(split_test(q, d, 3, 3), Error);
    EXPECT_TRUE(keyprop_consequence(q, d, q, 7, 3));
    EXPECT_THROW(keyprop_consequence(q, d, q, 7, 11), Error);
}

TEST(SplitTest, RecordsRememberTestedPrimes) {
    auto rec = frobenius_record(CurveSpec::parse("x^3+x+1"), 5);
    const bool s3 = split_test(rec, 3), s7 = split_test(rec, 7);
    EXPECT_EQ(rec.split_primes_tested.size(), 2U);
    EXPECT_EQ(rec.split_primes_tested.at(3), s3);
    EXPECT_EQ(rec.split_primes_tested.at(7), s7);
}

TEST(SplitTest, KeyPropertyOnGenusTwoScan) {
    const auto c = CurveSpec::parse("x^5+1");
    int hits = 0;
    for (auto p : oracle::segmented_primes(200)) {
        if (c.is_bad(p)) continue;
        const auto rec = frobenius_record(c, p);
        for (std::uint32_t l : {3U, 5U, 7U}) {
            if (l == p) continue;
            if (split_test(rec, l)) {
                ++hits;
                ASSERT_TRUE(keyprop_consequence(rec, l)) << p << " " << l;
                // independently: P mod l has 2g roots in F_l^x
                std::vector<std::uint64_t> raw;
                for (const auto& x : rec.P.coeffs()) raw.push_back(static_cast<std::uint64_t>(((x % l) + l) % l));
                const auto roots = oracle::scan_roots(raw, l);
                ASSERT_EQ(roots.size(), 4U);
                for (auto r : roots) ASSERT_NE(r, 0U);
            }
        }
    }
    EXPECT_GT(hits, 0);
}

TEST(Hall, Examples) {
    const IntPoly built{-19, 74, -85, 45, -11, 1};
    EXPECT_EQ(discriminant(built), 5 * 195541);
    EXPECT_EQ(hall_criterion(built, 100), std::optional<std::uint32_t>(5));
    EXPECT_THROW(hall_criterion(IntPoly{0, 0, 0, 0, 0, 1}, 100), Error);
    EXPECT_EQ(hall_criterion(IntPoly{-1, -1, 0, 0, 0, 1}, 100), std::optional<std::uint32_t>(19));
    EXPECT_EQ(hall_criterion(IntPoly{-1, -1, 0, 0, 0, 1}, 17), std::nullopt);
}

TEST(Hall, WitnessHasExactlyOneDoubleRoot) {
    oracle::Gen gen(41);
    for (int trial = 0; trial < 200; ++trial) {
        IntPoly f = gen.int_poly(5, 10, true);
        if (discriminant(f) == 0) continue;
        const auto w = hall_criterion(f, 60);
        if (!w) continue;
        ASSERT_EQ(discriminant(f) % *w, 0);
        std::vector<std::uint64_t> raw;
        for (const auto& x : f.coeffs()) raw.push_back(static_cast<std::uint64_t>(((x % *w) + *w) % *w));
        const auto roots = oracle::scan_roots(raw, *w);
        // a repeated root in F_p shows up twice in the scan, never three times
        std::map<std::uint32_t, int> mult;
        for (auto r : roots) ++mult[r];
        int doubles = 0;
        for (auto [r, m] : mult) {
            ASSERT_LE(m, 2);
            doubles += m == 2;
        }
        ASSERT_LE(doubles, 1);
    }
}
