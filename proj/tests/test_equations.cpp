#include <gtest/gtest.h>

#include "rpq/rpq.hpp"
#include "support/oracles.hpp"

using namespace rpq;

namespace {

FiniteAlgebra z3xr2() { return direct_product(cyclic_group(3), right_zero(2)); }

ElementSet brute_solutions(const FiniteAlgebra& s, Element a, Element b) {
    ElementSet out;
    for (Element x = 0; x < s.size(); ++x)
        if (s.mul()(x, a) == b) out.push_back(x);
    return out;
}

std::vector<FiniteAlgebra> models() {
    std::vector<FiniteAlgebra> out;
    for (const auto& e : corpus())
        if (oracle::holds_all(e.algebra, system_named("A").plain())) out.push_back(e.algebra);
    for (std::size_t n = 1; n <= 3; ++n)
        for (const auto& rows : oracle::latin_squares(n))
            for (std::size_t k = 1; k <= 3; ++k) out.push_back(oracle::product(oracle::quasigroup(rows), oracle::right_zero(k)));
    return out;
}

}  // namespace

TEST(SolveAxB, Examples) {
    EXPECT_EQ(solve_ax_b(right_zero(3), 0, 2), 2u);
    EXPECT_EQ(solve_ax_b(cyclic_group(3), 1, 0), 2u);
    const auto& t1 = corpus_algebra("noid-left");
    EXPECT_EQ(solve_ax_b(t1, 0, 2), 2u);
    EXPECT_EQ(t1.mul()(0, 2), 2u);
}

TEST(SolveAxB, RequiresRightQuasigroup) {
    FiniteAlgebra zero(Table(2), Table(2), Table(2));
    EXPECT_THROW(solve_ax_b(zero, 0, 1), ClassificationError);
    EXPECT_THROW(solve_ax_b(right_zero(2), 0, 2), StructuralError);
}

TEST(SolveAxB, UniqueSolutionMatchesBruteForce) {
    for (const auto& s : models())
        for (Element a = 0; a < s.size(); ++a)
            for (Element b = 0; b < s.size(); ++b) {
                Element x = solve_ax_b(s, a, b);
                ElementSet all;
                for (Element y = 0; y < s.size(); ++y)
                    if (s.mul()(a, y) == b) all.push_back(y);
                ASSERT_EQ(all, ElementSet{x});
            }
}

TEST(Consistency, Examples) {
    EXPECT_FALSE(consistent_xa_b(right_zero(2), 0, 1));
    EXPECT_TRUE(consistent_xa_b(right_zero(2), 1, 1));
    auto s = z3xr2();
    for (Element a = 0; a < 6; ++a)
        for (Element b = 0; b < 6; ++b) EXPECT_EQ(consistent_xa_b(s, a, b), a % 2 == b % 2);
}

TEST(Consistency, ErrorCarriesWitness) {
    try {
        solve_xa_b(right_zero(2), 0, 1);
        FAIL() << "expected ConsistencyError";
    } catch (const ConsistencyError& e) {
        EXPECT_EQ(e.a(), 0u);
        EXPECT_EQ(e.b(), 1u);
        EXPECT_EQ(e.witness(), 0u);
    }
}

TEST(SolveXaB, Examples) {
    auto s = z3xr2();
    // a = (1,0) = 2, b = (0,0) = 0: x = (2, r).
    EXPECT_EQ(solve_xa_b(s, 2, 0).solutions, (ElementSet{4, 5}));
    EXPECT_EQ(solve_xa_b(right_zero(3), 1, 1).solutions, (ElementSet{0, 1, 2}));
    for (const auto& rows : oracle::latin_squares(3)) {
        auto q = oracle::quasigroup(rows);
        for (Element a = 0; a < 3; ++a)
            for (Element b = 0; b < 3; ++b) ASSERT_EQ(solve_xa_b(q, a, b).solutions.size(), 1u);
    }
}

TEST(SolveXaB, GeneratorTraceCoversEveryParameter) {
    auto s = solve_xa_b(z3xr2(), 2, 0);
    EXPECT_EQ(s.generator_trace.size(), 6u);
    EXPECT_EQ(s.side, Side::Right);
    for (const auto& [p, x] : s.generator_trace) EXPECT_EQ(z3xr2().mul()(x, 2), 0u);
}

TEST(SolveXaB, MatchesBruteForceOnAllModels) {
    for (const auto& s : models()) {
        const auto r_size = decompose(s).R.size();
        for (Element a = 0; a < s.size(); ++a)
            for (Element b = 0; b < s.size(); ++b) {
                auto brute = brute_solutions(s, a, b);
                ASSERT_EQ(consistent_xa_b(s, a, b), !brute.empty());
                if (brute.empty()) {
                    ASSERT_THROW(solve_xa_b(s, a, b), ConsistencyError);
                    continue;
                }
                auto sol = solve_xa_b(s, a, b);
                ASSERT_EQ(sol.solutions, brute);
                ASSERT_EQ(sol.solutions.size(), r_size);
                ASSERT_EQ(solve_xa_b_idempotent(s, a, b).solutions, brute);
            }
    }
}

TEST(Reproductive, Examples) {
    auto s = z3xr2();
    for (Element a = 0; a < 6; ++a)
        for (Element b = 0; b < 6; ++b) {
            if (!consistent_xa_b(s, a, b)) continue;
            Element ba = s.rdiv()(b, a);
            EXPECT_TRUE(check_reproductive(s, [&](Element x) { return s.rdiv()(s.mul()(ba, x), x); }));
        }
    EXPECT_TRUE(check_reproductive(s, [](Element x) { return x; }));
    EXPECT_FALSE(check_reproductive(cyclic_group(3), [](Element x) { return (x + 1) % 3; }));
}

TEST(IdempotentSolve, SameSetAsFullSolve) {
    auto s = z3xr2();
    for (Element a = 0; a < 6; ++a)
        for (Element b = 0; b < 6; ++b) {
            if (!consistent_xa_b(s, a, b)) continue;
            auto full = solve_xa_b(s, a, b);
            auto idem = solve_xa_b_idempotent(s, a, b);
            EXPECT_EQ(idem.solutions, full.solutions);
            EXPECT_FALSE(idem.fallback);
            EXPECT_EQ(idem.generator_trace.size(), 2u);
            EXPECT_EQ(idem.simplified_form_agrees, std::optional<bool>(true));
        }
}

TEST(IdempotentSolve, FallsBackWithoutIdempotents) {
    auto s = solve_xa_b_idempotent(corpus_algebra("noid-left"), 0, 1);
    EXPECT_TRUE(s.fallback);
    EXPECT_EQ(s.solutions.size(), 1u);
}

TEST(IdempotentSolve, SimplifiedFormOnRightLoops) {
    for (const auto& s : models()) {
        if (!is_in(s, Variety::RPRightLoop)) continue;
        const auto es = idempotents(s);
        for (Element a = 0; a < s.size(); ++a)
            for (Element b = 0; b < s.size(); ++b) {
                if (!consistent_xa_b(s, a, b)) continue;
                Element ba = s.rdiv()(b, a);
                for (Element e : es) ASSERT_EQ(s.mul()(ba, e), s.rdiv()(s.mul()(ba, e), e));
                ASSERT_EQ(solve_xa_b_idempotent(s, a, b).simplified_form_agrees, std::optional<bool>(true));
            }
    }
}

TEST(Consistency, LoopCriteria) {
    // Left loops: consistent iff a/a = b/b. Right loops: iff a\a = b\b.
    for (const auto& s : models()) {
        bool ll = is_in(s, Variety::RPLeftLoop), rl = is_in(s, Variety::RPRightLoop);
        for (Element a = 0; a < s.size(); ++a)
            for (Element b = 0; b < s.size(); ++b) {
                bool c = consistent_xa_b(s, a, b);
                if (ll) { ASSERT_EQ(c, s.rdiv()(a, a) == s.rdiv()(b, b)); }
                if (rl) { ASSERT_EQ(c, s.ldiv()(a, a) == s.ldiv()(b, b)); }
            }
    }
}

TEST(IdempotentSolve, UniqueFactorIdempotentGivesInjectiveParameters) {
    for (const auto& s : models()) {
        auto d = decompose(s);
        if (idempotents(d.L).size() != 1) continue;
        for (Element a = 0; a < s.size(); ++a)
            for (Element b = 0; b < s.size(); ++b) {
                if (!consistent_xa_b(s, a, b)) continue;
                auto sol = solve_xa_b_idempotent(s, a, b);
                ElementSet images;
                for (const auto& [p, x] : sol.generator_trace) images.push_back(x);
                std::sort(images.begin(), images.end());
                ASSERT_EQ(std::adjacent_find(images.begin(), images.end()), images.end());
                ASSERT_EQ(images, sol.solutions);
            }
    }
}
