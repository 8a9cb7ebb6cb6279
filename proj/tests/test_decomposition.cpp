#include <gtest/gtest.h>

#include <random>

#include "rpq/rpq.hpp"
#include "support/oracles.hpp"

using namespace rpq;

namespace {

FiniteAlgebra z3xr2() { return direct_product(cyclic_group(3), right_zero(2)); }

// Every (A)-model in the corpus plus products of small Latin squares.
std::vector<FiniteAlgebra> rpq_models() {
    std::vector<FiniteAlgebra> out;
    for (const auto& e : corpus())
        if (oracle::holds_all(e.algebra, system_named("A").plain())) out.push_back(e.algebra);
    for (std::size_t n = 1; n <= 3; ++n)
        for (const auto& rows : oracle::latin_squares(n))
            for (std::size_t k = 1; k <= 3; ++k) out.push_back(oracle::product(oracle::quasigroup(rows), oracle::right_zero(k)));
    return out;
}

bool is_band_oracle(const Table& s) {
    const auto n = static_cast<Element>(s.size());
    for (Element x = 0; x < n; ++x) {
        if (s(x, x) != x) return false;
        for (Element y = 0; y < n; ++y)
            for (Element z = 0; z < n; ++z)
                if (s(s(x, y), z) != s(x, z) || s(x, s(y, z)) != s(x, z)) return false;
    }
    return true;
}

}  // namespace

TEST(Star, RightZeroPicksRight) {
    auto s = star(right_zero(2));
    for (Element x = 0; x < 2; ++x)
        for (Element y = 0; y < 2; ++y) EXPECT_EQ(s(x, y), y);
}

TEST(Star, QuasigroupPicksLeft) {
    for (const auto& rows : oracle::latin_squares(3)) {
        auto s = star(oracle::quasigroup(rows));
        for (Element x = 0; x < 3; ++x)
            for (Element y = 0; y < 3; ++y) ASSERT_EQ(s(x, y), x);
    }
}

TEST(Star, ProductIsComponentwise) {
    auto s = star(z3xr2());
    for (Element a = 0; a < 3; ++a)
        for (Element r = 0; r < 2; ++r)
            for (Element b = 0; b < 3; ++b)
                for (Element t = 0; t < 2; ++t) EXPECT_EQ(s(2 * a + r, 2 * b + t), 2 * a + t);
}

TEST(Star, DisagreementIsReported) {
    try {
        star(corpus_algebra("notA3"));
        FAIL() << "expected NotStarCompatible";
    } catch (const NotStarCompatible& e) {
        const auto& a = corpus_algebra("notA3");
        EXPECT_NE(a.mul()(a.rdiv()(e.x(), e.y()), e.y()), a.rdiv()(a.mul()(e.x(), e.y()), e.y()));
    }
    EXPECT_THROW(star(corpus_algebra("example-1-3")), MissingTable);
}

TEST(Band, GroupTableIsNotABand) {
    auto r = is_rectangular_band(Table::from_rows({{0, 1}, {1, 0}}));
    EXPECT_FALSE(r.is_band);
    EXPECT_EQ(r.failed_law, "idempotent");
    EXPECT_EQ((*r.witness)[0], 1u);
}

TEST(Band, NotA5StarIsNotABand) {
    // A3 holds there, so the star table exists; the oracle decides band-ness.
    auto s = star(corpus_algebra("notA5"));
    EXPECT_EQ(is_rectangular_band(s).is_band, is_band_oracle(s));
    EXPECT_FALSE(is_band_oracle(s));
    EXPECT_THROW(decompose(corpus_algebra("notA5")), NotRPQ);
}

TEST(Band, StarOfEveryModelIsARectangularBand) {
    for (const auto& a : rpq_models()) {
        auto s = star(a);
        ASSERT_TRUE(is_rectangular_band(s).is_band);
        ASSERT_TRUE(is_band_oracle(s));
        ASSERT_EQ(star_law_violations(a, s).total(), 0u);
    }
}

TEST(Band, RandomTablesAgreeWithOracle) {
    std::mt19937 rng(23);
    for (int i = 0; i < 3000; ++i) {
        std::size_t n = 1 + rng() % 3;
        Table t(n);
        // Bias towards bands: start from a rectangular band and perturb a cell.
        std::size_t rows = 1 + rng() % n;
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y) t.at(x, y) = static_cast<Element>((x % rows) + (y / rows) * rows) % n;
        if (rng() % 2) t.at(rng() % n, rng() % n) = static_cast<Element>(rng() % n);
        ASSERT_EQ(is_rectangular_band(t).is_band, is_band_oracle(t));
    }
}

TEST(Decompose, Examples) {
    auto rz = decompose(right_zero(3));
    EXPECT_EQ(rz.L.size(), 1u);
    EXPECT_EQ(rz.R.size(), 3u);

    auto z3 = decompose(cyclic_group(3));
    EXPECT_EQ(z3.L.size(), 3u);
    EXPECT_EQ(z3.R.size(), 1u);
    EXPECT_TRUE(find_isomorphism(z3.L, cyclic_group(3)).has_value());

    auto p = decompose(z3xr2());
    EXPECT_EQ(p.L.size(), 3u);
    EXPECT_EQ(p.R.size(), 2u);
    EXPECT_TRUE(find_isomorphism(p.L, cyclic_group(3)).has_value());
    EXPECT_EQ(p.R, right_zero(2));
}

TEST(Decompose, ClassesNumberedByFirstAppearance) {
    auto d = decompose(z3xr2());
    EXPECT_EQ(d.l_class, (std::vector<Element>{0, 0, 1, 1, 2, 2}));
    EXPECT_EQ(d.r_class, (std::vector<Element>{0, 1, 0, 1, 0, 1}));
    EXPECT_EQ(d.l_representative, (std::vector<Element>{0, 2, 4}));
    EXPECT_EQ(d.r_representative, (std::vector<Element>{0, 1}));
}

TEST(Decompose, PointIsCarried) {
    auto d = decompose(corpus_algebra("z3xR2-pointed-01"));
    EXPECT_EQ(d.L.point(), std::optional<Element>(0));
    EXPECT_EQ(d.R.point(), std::optional<Element>(1));
}

TEST(Decompose, RefusesNonModels) {
    try {
        decompose(corpus_algebra("notA3"));
        FAIL() << "expected NotRPQ";
    } catch (const NotRPQ& e) {
        EXPECT_EQ(e.label(), "A3");
        EXPECT_FALSE(e.counterexample().empty());
    }
    EXPECT_THROW(decompose(corpus_algebra("notA4")), NotRPQ);
}

TEST(Decompose, RoundTripOnSampledQuasigroups) {
    std::mt19937 rng(29);
    auto squares4 = oracle::latin_squares(4);
    std::vector<oracle::Rows> sample = oracle::latin_squares(3);
    for (int i = 0; i < 40; ++i) sample.push_back(squares4[rng() % squares4.size()]);
    for (const auto& rows : sample)
        for (std::size_t k = 1; k <= 3; ++k) {
            auto q = oracle::quasigroup(rows);
            auto s = direct_product(q, right_zero(k));
            auto d = decompose(s);
            ASSERT_EQ(d.L.size() * d.R.size(), s.size());
            ASSERT_EQ(d.R.size(), k);
            ASSERT_TRUE(oracle::isomorphic(d.L, q));
            ASSERT_TRUE(oracle::is_hom(s, oracle::product(d.L, d.R), d.witness_map()));
            ASSERT_TRUE(oracle::holds_all(d.L, system_named("Q").plain()));
            ASSERT_EQ(d.R, oracle::right_zero(k));
        }
}

TEST(Decompose, SucceedsExactlyOnModelsOfA) {
    // All 4096 two-element algebras, plus every corpus entry.
    std::size_t models = 0;
    auto check = [&](const FiniteAlgebra& a) {
        bool is_model = oracle::check(a, identity_labelled("A1").identity) == true &&
                        oracle::holds_all(a, system_named("A").plain());
        bool ok = true;
        try {
            decompose(a);
        } catch (const NotRPQ&) {
            ok = false;
        } catch (const MissingTable&) {
            ok = false;
        }
        ASSERT_EQ(ok, is_model);
        ASSERT_EQ(is_in(a, Variety::RPQ), is_model);
        models += is_model;
    };
    for (const auto& a : oracle::all_two_element_algebras(false)) check(a);
    for (const auto& e : corpus()) check(e.algebra);
    EXPECT_GT(models, 0u);
}

TEST(Decompose, RelabelledCopiesDecompose) {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        auto base = direct_product(cyclic_group(2 + rng() % 2), right_zero(1 + rng() % 3));
        std::vector<Element> perm(base.size());
        std::iota(perm.begin(), perm.end(), Element{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        std::array<std::optional<Table>, 3> t;
        for (Op op : kAllOps) {
            Table x(base.size());
            for (Element i = 0; i < base.size(); ++i)
                for (Element j = 0; j < base.size(); ++j) x.at(perm[i], perm[j]) = perm[base.table(op)(i, j)];
            t[static_cast<std::size_t>(op)] = x;
        }
        FiniteAlgebra s(*t[0], t[1], t[2]);
        auto d = decompose(s);
        ASSERT_EQ(d.L.size() * d.R.size(), s.size());
        ASSERT_TRUE(oracle::is_hom(s, oracle::product(d.L, d.R), d.witness_map()));
    }
}

TEST(Structure, Z3xR2) {
    auto s = z3xr2();
    auto r = loop_structure_report(s);
    EXPECT_EQ(r.idempotents, (ElementSet{0, 1}));
    EXPECT_EQ(r.idempotents, r.rdiv_squares);
    EXPECT_EQ(r.left_neutrals, r.idempotents);
    EXPECT_TRUE(r.factor_loop);
    EXPECT_TRUE(r.verified());
    ASSERT_EQ(r.parts.size(), 2u);
    for (const auto& p : r.parts) {
        EXPECT_TRUE(p.maximal);
        EXPECT_EQ(p.is_subloop, std::optional<bool>(true));
    }
    // Three split formulas per idempotent, each checked independently here.
    EXPECT_EQ(r.splits.size(), 6u);
    for (const auto& sp : r.splits) EXPECT_TRUE(sp.ok()) << sp.formula;
    const auto& mul = s.mul();
    const auto& ld = s.ldiv();
    const auto& rd = s.rdiv();
    for (const auto& p : r.parts) {
        Element e = p.e;
        EXPECT_TRUE(oracle::split_is_isomorphism(
            s, [&](Element x) { return rd(mul(x, e), e); }, [&](Element x) { return rd(x, x); }, p.se, r.idempotents));
        EXPECT_TRUE(oracle::split_is_isomorphism(
            s, [&](Element x) { return mul(x, e); }, [&](Element x) { return ld(x, x); }, p.se, r.idempotents));
        EXPECT_TRUE(oracle::split_is_isomorphism(
            s, [&](Element x) { return mul(x, e); }, [&](Element x) { return rd(x, x); }, p.se, r.idempotents));
    }
}

TEST(Structure, RightZero) {
    auto r = loop_structure_report(right_zero(3));
    EXPECT_EQ(r.idempotents, (ElementSet{0, 1, 2}));
    EXPECT_EQ(r.maximal_left_zero, (std::vector<ElementSet>{{0}, {1}, {2}}));
    EXPECT_TRUE(r.maximal_left_zero_verified);
    EXPECT_TRUE(r.verified());
}

TEST(Structure, IdempotentSubalgebra) {
    auto r = loop_structure_report(corpus_algebra("table2-right"));
    EXPECT_EQ(r.idempotents, (ElementSet{0, 1, 2}));
    EXPECT_TRUE(r.idempotents_closed);
    EXPECT_EQ(r.largest_idempotent_subalgebra, std::optional<bool>(true));
    auto l = loop_structure_report(corpus_algebra("table2-left"));
    EXPECT_FALSE(l.idempotents_closed);
    EXPECT_FALSE(l.largest_idempotent_subalgebra.has_value());
}

TEST(Structure, MaximalSubalgebrasMatchBruteForce) {
    for (const auto& a : rpq_models()) {
        if (a.size() > kMaximalSubalgebraBound) continue;
        auto r = loop_structure_report(a);
        ASSERT_EQ(r.maximal_subalgebras_match, std::optional<bool>(true));
    }
}

TEST(Structure, EveryModelVerifies) {
    for (const auto& a : rpq_models()) {
        auto r = a.pointed() ? pointed_structure_report(a) : loop_structure_report(a);
        ASSERT_TRUE(r.verified());
    }
}

TEST(Structure, PointedZ3xR2) {
    auto r = pointed_structure_report(corpus_algebra("z3xR2-pointed"));
    ASSERT_TRUE(r.point_se.has_value());
    EXPECT_EQ(*r.point_se, (ElementSet{0, 2, 4}));
    ElementSet meet;
    std::set_intersection(r.point_se->begin(), r.point_se->end(), r.idempotents.begin(), r.idempotents.end(),
                          std::back_inserter(meet));
    EXPECT_EQ(meet, (ElementSet{0}));
    EXPECT_TRUE(r.verified());
}

TEST(Structure, PointedRightZero) {
    auto r = pointed_structure_report(right_zero(2).with_point(0));
    EXPECT_EQ(*r.point_se, (ElementSet{0}));
    EXPECT_EQ(r.idempotents, (ElementSet{0, 1}));
    EXPECT_TRUE(r.verified());
}

TEST(Structure, PointedSplitWithOffDiagonalPoint) {
    const auto& s = corpus_algebra("z3xR2-pointed-01");
    auto r = pointed_structure_report(s);
    EXPECT_TRUE(r.verified());
    bool found = false;
    for (const auto& sp : r.splits) found = found || (sp.formula == "(xe/e, ex/x)" && sp.ok());
    EXPECT_TRUE(found);
    const Element e = 1;
    const auto& mul = s.mul();
    const auto& rd = s.rdiv();
    EXPECT_TRUE(oracle::split_is_isomorphism(
        s.with_point(std::nullopt), [&](Element x) { return rd(mul(x, e), e); },
        [&](Element x) { return rd(mul(e, x), x); }, *r.point_se, r.idempotents));
    EXPECT_THROW(pointed_structure_report(z3xr2()), SignatureError);
}
