#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace symptrace;

namespace {

const TraceClassContext& ctx(int g, std::uint32_t l) {
    static std::map<std::pair<int, std::uint32_t>, std::unique_ptr<TraceClassContext>> cache;
    auto& slot = cache[{g, l}];
    if (!slot) slot = std::make_unique<TraceClassContext>(g, l, 4);
    return *slot;
}

// diagonal similitudes diag(a_1..a_g, mu/a_1..mu/a_g) with trace -t, counted directly
std::size_t diagonal_count(int g, std::uint32_t l, std::int64_t t) {
    const std::uint32_t target = detail::reduce(-t, l);
    std::size_t n = 0;
    std::vector<std::uint32_t> a(static_cast<std::size_t>(g), 1);
    for (std::uint32_t mu = 1; mu < l; ++mu) {
        std::fill(a.begin(), a.end(), 1U);
        while (true) {
            std::uint64_t tr = 0;
            for (auto x : a) tr += x + static_cast<std::uint64_t>(mu) * detail::invmod(x, l) % l;
            n += tr % l == target;
            std::size_t i = 0;
            while (i < a.size() && ++a[i] == l) a[i++] = 1;
            if (i == a.size()) break;
        }
    }
    return n;
}

bool all_ok(const std::vector<Verdict>& vs, std::string* first = nullptr) {
    for (const auto& v : vs)
        if (!v.ok) {
            if (first) *first = v.check + ": " + v.witness;
            return false;
        }
    return true;
}

}  // namespace

TEST(TraceSelector, AllowedResidues) {
    auto a = TraceSelector::at(2).allowed_traces(7);
    EXPECT_EQ(std::count(a.begin(), a.end(), true), 1);
    EXPECT_TRUE(a[5]);
    auto w = TraceSelector::within(1).allowed_traces(7);
    EXPECT_EQ(std::count(w.begin(), w.end(), true), 3);
    EXPECT_TRUE(w[0] && w[1] && w[6]);
    auto all = TraceSelector::within(10).allowed_traces(5);
    EXPECT_EQ(std::count(all.begin(), all.end(), true), 5);
    EXPECT_THROW(TraceSelector::within(-1), Error);
}

TEST(SemisimpleWitness, Examples) {
    const auto w = semisimple_witness(1, 7, 2);
    EXPECT_EQ(w.at(0, 0), 1U);
    EXPECT_EQ(w.at(1, 1), 4U);
    EXPECT_EQ(w.multiplicator(), 4U);
    EXPECT_EQ(w.trace(), detail::reduce(-2, 7));
    // l | t + g: the scalar 1/2
    const auto s = semisimple_witness(1, 7, 6);
    EXPECT_TRUE(s.is_scalar());
    EXPECT_EQ(s.at(0, 0), 4U);
    EXPECT_EQ(s.trace(), 1U);
    EXPECT_THROW(semisimple_witness(3, 3, 0), Error);
}

TEST(SemisimpleWitness, AlwaysLandsInCss) {
    for (auto [g, l] : {std::pair{1, 5U}, {1, 7U}, {1, 11U}, {1, 13U}, {2, 5U}, {2, 7U}, {3, 5U}})
        for (std::int64_t t = -20; t <= 20; ++t) {
            const auto w = semisimple_witness(g, l, t);
            ASSERT_TRUE(w.verify());
            ASSERT_EQ(w.trace(), detail::reduce(-t, l));
            ASSERT_TRUE(semisimple(w));
            ASSERT_TRUE(eigenvalues_in_fl(char_poly_symp(w)));
        }
}

TEST(TraceClasses, PartitionOfGSp) {
    for (auto [g, l] : {std::pair{1, 3U}, {1, 5U}, {1, 7U}, {2, 3U}}) {
        EXPECT_TRUE(verify_trace_partition(ctx(g, l)));
        std::size_t sum = 0;
        for (std::uint32_t t = 0; t < l; ++t) sum += build_trace_class(ctx(g, l), TraceKind::C0, TraceSelector::at(t)).size();
        EXPECT_EQ(sum, ctx(g, l).gsp().order());
    }
    const auto c = c0_counts(ctx(2, 3));
    EXPECT_EQ(c, (std::vector<std::size_t>{37422, 33129, 33129}));
}

TEST(TraceClasses, SubsetChainAndHatConsistency) {
    for (auto [g, l] : {std::pair{1, 3U}, {1, 5U}, {1, 7U}, {1, 11U}, {2, 3U}})
        for (std::uint32_t t = 0; t < l; ++t) {
            const auto& c = ctx(g, l);
            const auto sel = TraceSelector::at(t);
            for (const auto& v : verify_trace_counts(c, sel)) {
                if (v.check.rfind("#hatCB", 0) == 0) continue;  // bounds are checked separately
                EXPECT_TRUE(v.ok) << g << " " << l << " " << v.check << ": " << v.witness;
            }
        }
}

TEST(TraceClasses, HatTorusImageMatchesDirectCount) {
    for (auto [g, l] : {std::pair{1, 3U}, {1, 5U}, {1, 7U}, {1, 11U}, {2, 3U}})
        for (std::uint32_t t = 0; t < l; ++t) {
            const auto hat = build_trace_class(ctx(g, l), TraceKind::hatCB, TraceSelector::at(t));
            EXPECT_EQ(hat.size(), diagonal_count(g, l, t)) << g << " " << l << " " << t;
        }
}

TEST(TraceClasses, HatBoundsHoldInGenusOne) {
    for (auto l : {3U, 5U, 7U, 11U, 13U})
        for (std::uint32_t t = 0; t < l; ++t) {
            const auto hat = build_trace_class(ctx(1, l), TraceKind::hatCB, TraceSelector::at(t));
            EXPECT_LE(hat.size(), l - 1);
        }
    EXPECT_EQ(build_trace_class(ctx(1, 5), TraceKind::hatCBprime, TraceSelector::at(0)).size(), 1U);
}

TEST(TraceClasses, HatCountsExceedNaiveBoundAtGenusTwo) {
    // diag(a1, a2, mu/a1, mu/a2) over F_3 has trace (a1 + a2)(1 + mu): all four with mu = 2,
    // and the two with a1 != a2 when mu = 1
    const auto& c = ctx(2, 3);
    EXPECT_EQ(build_trace_class(c, TraceKind::hatCB, TraceSelector::at(0)).size(), 6U);
    EXPECT_EQ(build_trace_class(c, TraceKind::hatCBprime, TraceSelector::at(0)).size(), 3U);
    EXPECT_EQ(build_trace_class(c, TraceKind::hatCB, TraceSelector::at(1)).size(), 1U);
    EXPECT_EQ(diagonal_count(2, 5, 0), 4U * 7U);
    EXPECT_EQ(diagonal_count(2, 7, 0), 6U * 11U);
}

TEST(TraceClasses, StabilityGenusOne) {
    for (auto l : {3U, 5U, 7U})
        for (std::uint32_t t = 0; t < l; ++t) {
            std::string why;
            EXPECT_TRUE(all_ok(verify_stability(ctx(1, l), TraceSelector::at(t)), &why)) << why;
        }
}

TEST(TraceClasses, StabilityGenusTwo) {
    for (std::uint32_t t = 0; t < 3; ++t) {
        std::string why;
        EXPECT_TRUE(all_ok(verify_stability(ctx(2, 3), TraceSelector::at(t)), &why)) << why;
    }
}

TEST(TraceClasses, WindowSelector) {
    const auto& c = ctx(1, 7);
    const auto w = build_trace_class(c, TraceKind::C0, TraceSelector::within(1));
    std::size_t sum = 0;
    for (std::int64_t t = -1; t <= 1; ++t) sum += build_trace_class(c, TraceKind::C0, TraceSelector::at(t)).size();
    EXPECT_EQ(w.size(), sum);
    std::string why;
    EXPECT_TRUE(all_ok(verify_trace_counts(c, TraceSelector::within(1)), &why)) << why;
    EXPECT_THROW(build_trace_class(c, TraceKind::hatC0, TraceSelector::at(1)), Error);
    EXPECT_THROW(build_trace_class(c, TraceKind::hatCBprime, TraceSelector::within(0)), Error);
}

TEST(TraceClasses, ScalarOrbitsOfTraceZero) {
    for (auto [g, l] : {std::pair{1, 5U}, {1, 7U}, {2, 3U}}) {
        const auto& c = ctx(g, l);
        const auto c0 = build_trace_class(c, TraceKind::C0, TraceSelector::at(0));
        const auto hc0 = build_trace_class(c, TraceKind::hatC0, TraceSelector::at(0));
        EXPECT_EQ(hc0.size() * (l - 1), c0.size());
        for (const auto& m : hc0.members) {
            for (std::uint32_t lambda = 2; lambda < l; ++lambda) ASSERT_LT(m.key(), m.scaled(lambda).key());
        }
    }
}

TEST(TraceClasses, ElementFlagsAgreeWithOracle) {
    const auto& c = ctx(1, 5);
    for (std::size_t i = 0; i < c.gsp().order(); ++i) {
        const auto& m = c.gsp()[i];
        const auto& f = c.flags(i);
        ASSERT_EQ(f.trace, m.trace());
        ASSERT_EQ(f.semisimple, oracle::brute_semisimple(m.to_fp_matrix()));
        const auto p = char_poly_symp(m);
        std::vector<std::uint64_t> raw(p.raw().begin(), p.raw().end());
        ASSERT_EQ(f.split, oracle::scan_roots(raw, 5).size() == 2U);
    }
}
