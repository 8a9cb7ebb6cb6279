#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rpq/algebra.hpp"
#include "rpq/axioms.hpp"
#include "rpq/corpus.hpp"
#include "rpq/decomposition.hpp"
#include "rpq/equations.hpp"
#include "rpq/model_search.hpp"
#include "rpq/products.hpp"
#include "rpq/rewriting.hpp"
#include "rpq/term.hpp"

namespace rpq {

struct VerifyCheck {
    std::string id;
    std::string description;
    bool passed = false;
    std::string detail;  // exception text on failure
};

namespace detail {

struct CheckSpec {
    const char* id;
    const char* description;
    std::function<bool()> run;
};

inline bool pattern_is(const FiniteAlgebra& a, std::string_view failing) {
    auto r = check_system(a, system_named("A"));
    for (const auto& [label, h] : r.results)
        if (h.holds == (label == failing)) return false;
    return true;
}

inline bool search_finds(std::string_view failing, const FiniteAlgebra& expected) {
    SearchProblem p;
    p.n = 2;
    p.limit = kNoLimit;
    for (const auto& li : system_named("A").identities)
        (li.label == failing ? p.violate : p.satisfy).push_back(li.identity);
    for (const auto& m : find_models(p))
        if (m == expected) return true;
    return false;
}

inline bool wp_holds(std::string_view text) {
    auto id = parse_identity(text);
    return wp_rpq(id.lhs, id.rhs);
}

inline std::vector<CheckSpec> corpus_checks() {
    const FiniteAlgebra table1 = corpus_algebra("noid-left");
    const FiniteAlgebra table2l = corpus_algebra("table2-left");
    const FiniteAlgebra table2r = corpus_algebra("table2-right");
    const FiniteAlgebra t3 = corpus_algebra("notA3");
    const FiniteAlgebra t4 = corpus_algebra("notA4");
    const FiniteAlgebra t5 = corpus_algebra("notA5");
    return {
        {"apply-table3", "Table 3: 0/0 = 1", [=] { return t3.apply(Op::RDiv, 0, 0) == 1; }},
        {"derive-table1", "Table 1 left: both divisions derive and invert *",
         [=] {
             auto a = derive_divisions(table1.mul(), Require::Both);
             for (Element x = 0; x < 3; ++x)
                 for (Element y = 0; y < 3; ++y)
                     if (a.mul()(x, a.ldiv()(x, y)) != y || a.mul()(a.rdiv()(x, y), y) != x) return false;
             return true;
         }},
        {"derive-example-1-3", "Example 1.3: \\ derives, / fails at column 0",
         [=] {
             const auto& mul = corpus_algebra("example-1-3").mul();
             if (left_division(mul) != Table::from_rows({{1, 0}, {1, 0}})) return false;
             try {
                 derive_divisions(mul, Require::Right);
             } catch (const NotCancellative& e) {
                 return e.kind() == NotCancellative::Kind::Column && e.index() == 0;
             }
             return false;
         }},
        {"idempotents-table1", "Table 1 left has no idempotents", [=] { return idempotents(table1).empty(); }},
        {"idempotents-table2-left", "Table 2 left: E_S = {0,1}, 0*1 = 2, not closed",
         [=] {
             return idempotents(table2l) == ElementSet{0, 1} && table2l.mul()(0, 1) == 2 &&
                    !is_closed(table2l, {0, 1});
         }},
        {"idempotents-table2-right", "Table 2 right: E_S = {0,1,2} is closed",
         [=] { return idempotents(table2r) == ElementSet{0, 1, 2} && is_closed(table2r, {0, 1, 2}); }},
        {"tail", "tail(x\\(x*y)) = y", [] { return tail(parse_term("x\\(x*y)")) == "y"; }},
        {"holds-table3-A3", "Table 3 fails A3 with a counterexample",
         [=] {
             auto h = holds(t3, identity_labelled("A3").identity);
             return !h.holds && h.counterexample.has_value();
         }},
        {"catalog-A", "system A is A1..A5",
         [] {
             const auto& s = system_named("A");
             std::vector<std::string> labels;
             for (const auto& li : s.identities) labels.push_back(li.label);
             return labels == std::vector<std::string>{"A1", "A2", "A3", "A4", "A5"};
         }},
        {"catalog-LL", "system LL contains (x/x)*y = y",
         [] {
             for (const auto& li : system_named("LL").identities)
                 if (li.identity == parse_identity("(x/x)*y = y")) return true;
             return false;
         }},
        {"catalog-Q", "system Q is Q1..Q4",
         [] {
             const auto& s = system_named("Q");
             std::vector<std::string> labels;
             for (const auto& li : s.identities) labels.push_back(li.label);
             return labels == std::vector<std::string>{"Q1", "Q2", "Q3", "Q4"};
         }},
        {"check-table3", "Table 3 satisfies A1, A2, A4, A5, not A3", [=] { return pattern_is(t3, "A3"); }},
        {"check-table4", "Table 4 satisfies A1, A2, A3, A5, not A4", [=] { return pattern_is(t4, "A4"); }},
        {"check-table5", "Table 5 satisfies A1, A2, A3, A4, not A5", [=] { return pattern_is(t5, "A5"); }},
        {"classify-example-1-3", "Example 1.3 with / = 0 is only a right quasigroup",
         [] { return classify(corpus_algebra("example-1-3-rdiv0")) == std::vector{Variety::RightQuasigroup}; }},
        {"lift-commutativity", "x*y = y*x lifts to (x*y)*z = (y*x)*z",
         [] {
             return to_string(lift_identity(parse_identity("x*y = y*x"), LiftMode::MulZ)) == "(x*y)*z = (y*x)*z";
         }},
        {"lift-plain-tails", "plain lifting of x*y = y*x is refused",
         [] {
             try {
                 lift_identity(parse_identity("x*y = y*x"), LiftMode::Plain);
             } catch (const ClassificationError&) {
                 return true;
             }
             return false;
         }},
        {"star-band", "star of every corpus model of (A) is a rectangular band",
         [] {
             for (const auto& e : corpus())
                 if (is_in(e.algebra, Variety::RPQ) && !is_rectangular_band(star(e.algebra))) return false;
             return true;
         }},
        {"structure-table2-right", "Table 2 right: E_S is the largest subalgebra of idempotents",
         [=] {
             auto r = loop_structure_report(table2r);
             return r.idempotents == ElementSet{0, 1, 2} && r.largest_idempotent_subalgebra == true;
         }},
        {"solve-table1", "Table 1 left: 0*x = 2 has x = 2", [=] { return solve_ax_b(table1, 0, 2) == 2; }},
        {"reproductive", "x = (b/a)x/x is reproductive for every consistent x*a = b",
         [] {
             for (const auto& e : corpus()) {
                 const auto& a = e.algebra;
                 if (!is_in(a, Variety::RPQ)) continue;
                 for (Element p = 0; p < a.size(); ++p)
                     for (Element q = 0; q < a.size(); ++q) {
                         if (!consistent_xa_b(a, p, q)) continue;
                         Element ba = a.rdiv()(q, p);
                         auto f = [&](Element x) { return a.rdiv()(a.mul()(ba, x), x); };
                         if (!check_reproductive(a, f)) return false;
                     }
             }
             return true;
         }},
        {"idempotent-fallback", "Table 1 left: idempotent parameters fall back",
         [=] { return solve_xa_b_idempotent(table1, 0, 1).fallback; }},
        {"adjoin-unit", "adjoin_unit(right_zero(2)) makes 2 neutral",
         [] {
             auto ext = adjoin_unit(right_zero(2));
             if (ext.unit != 2 || ext.algebra.size() != 3) return false;
             for (Op op : kAllOps)
                 for (Element x = 0; x < 3; ++x)
                     if (ext.algebra(op, 2, x) != x || ext.algebra(op, x, 2) != x) return false;
             return true;
         }},
        {"wp-A", "A1..A5 are valid in right product quasigroups",
         [] {
             for (const auto& li : system_named("A").identities)
                 if (!wp_rpq(li.identity.lhs, li.identity.rhs)) return false;
             return true;
         }},
        {"wp-Q3", "(x*y)/y = x is not valid (tails differ)", [] { return !wp_holds("(x*y)/y = x"); }},
        {"wp-B2", "((x*y)*(z/u))/(z/u) = x*((y*u)/u) is valid",
         [] { return wp_holds("(x*y*(z/u))/(z/u) = x*((y*u)/u)"); }},
        {"commutativity-table2-left", "Table 2 left refutes x*y = y*x (0*1 = 2, 1*0 = 3)",
         [=] {
             return is_in(table2l, Variety::RPQ) && !holds(table2l, parse_identity("x*y = y*x")) &&
                    table2l.mul()(0, 1) == 2 && table2l.mul()(1, 0) == 3;
         }},
        {"search-table3", "n=2 search without A3 finds Table 3", [=] { return search_finds("A3", t3); }},
        {"search-table4", "n=2 search without A4 finds Table 4", [=] { return search_finds("A4", t4); }},
        {"search-table5", "n=2 search without A5 finds Table 5", [=] { return search_finds("A5", t5); }},
    };
}

}  // namespace detail

/// Re-derives every example taken from the printed tables and statements.
inline std::vector<VerifyCheck> corpus_verify() {
    std::vector<VerifyCheck> out;
    for (const auto& c : detail::corpus_checks()) {
        VerifyCheck v{c.id, c.description, false, {}};
        try {
            v.passed = c.run();
        } catch (const std::exception& e) {
            v.detail = e.what();
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace rpq
