#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "rpq/algebra.hpp"
#include "rpq/axioms.hpp"
#include "rpq/error.hpp"

namespace rpq {

/// The derived band operation x ⋆ y = (x*y)/y = (x/y)*y, materialized.
using StarTable = Table;

class NotStarCompatible : public Error {
public:
    NotStarCompatible(Element x, Element y)
        : Error("(x/y)*y != (x*y)/y at x=" + std::to_string(x) + ", y=" + std::to_string(y)), x_(x), y_(y) {}
    Element x() const noexcept { return x_; }
    Element y() const noexcept { return y_; }

private:
    Element x_, y_;
};

/// System (A) fails; carries the first failing label and its counterexample.
class NotRPQ : public ClassificationError {
public:
    NotRPQ(std::string label, Assignment counterexample)
        : ClassificationError("not a right product quasigroup: " + label + " fails at " +
                              describe(counterexample)),
          label_(std::move(label)), counterexample_(std::move(counterexample)) {}

    const std::string& label() const noexcept { return label_; }
    const Assignment& counterexample() const noexcept { return counterexample_; }

    static std::string describe(const Assignment& a) {
        std::string out;
        for (const auto& [k, v] : a) out += (out.empty() ? "" : ", ") + k + "=" + std::to_string(v);
        return out;
    }

private:
    std::string label_;
    Assignment counterexample_;
};

inline StarTable star(const FiniteAlgebra& a) {
    const auto& mul = a.mul();
    const auto& rdiv = a.rdiv();
    StarTable s(a.size());
    for (Element x = 0; x < a.size(); ++x)
        for (Element y = 0; y < a.size(); ++y) {
            Element via_rdiv = mul(rdiv(x, y), y);
            if (via_rdiv != rdiv(mul(x, y), y)) throw NotStarCompatible(x, y);
            s.at(x, y) = via_rdiv;
        }
    return s;
}

struct BandCheck {
    bool is_band = true;
    std::string failed_law;                     // "idempotent", "left" or "right"
    std::optional<std::array<Element, 3>> witness;

    explicit operator bool() const noexcept { return is_band; }
};

/// Checks x⋆x = x and (x⋆y)⋆z = x⋆z = x⋆(y⋆z) for all triples.
inline BandCheck is_rectangular_band(const StarTable& s) {
    const auto n = static_cast<Element>(s.size());
    for (Element x = 0; x < n; ++x)
        if (s(x, x) != x) return {false, "idempotent", std::array<Element, 3>{x, x, x}};
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
            for (Element z = 0; z < n; ++z) {
                if (s(s(x, y), z) != s(x, z)) return {false, "left", std::array<Element, 3>{x, y, z}};
                if (s(x, s(y, z)) != s(x, z)) return {false, "right", std::array<Element, 3>{x, y, z}};
            }
    return {};
}

/// Violations of (xy)⋆z = x(y⋆z), (x\y)⋆z = x\(y⋆z), (x/y)⋆z = x/(y⋆z).
struct StarLawReport {
    std::array<std::size_t, 3> violations{};
    std::array<std::optional<std::array<Element, 3>>, 3> first{};

    std::size_t total() const noexcept { return violations[0] + violations[1] + violations[2]; }
};

inline StarLawReport star_law_violations(const FiniteAlgebra& a, const StarTable& s) {
    StarLawReport r;
    const auto n = static_cast<Element>(a.size());
    for (std::size_t k = 0; k < 3; ++k) {
        Op op = kAllOps[k];
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y)
                for (Element z = 0; z < n; ++z)
                    if (s(a(op, x, y), z) != a(op, x, s(y, z))) {
                        if (!r.first[k]) r.first[k] = std::array<Element, 3>{x, y, z};
                        ++r.violations[k];
                    }
    }
    return r;
}

/// S ≅ L × R with L a quasigroup and R a right zero semigroup.
struct Decomposition {
    FiniteAlgebra L;
    FiniteAlgebra R;
    std::vector<Element> l_class;           // element -> index in L
    std::vector<Element> r_class;           // element -> index in R
    std::vector<Element> l_representative;  // L index -> smallest element of the class
    std::vector<Element> r_representative;
    StarTable star_table;

    /// Image of x in direct_product(L, R).
    Element witness(Element x) const { return pair_index(l_class[x], r_class[x], R.size()); }

    std::vector<Element> witness_map() const {
        std::vector<Element> m(l_class.size());
        for (Element x = 0; x < m.size(); ++x) m[x] = witness(x);
        return m;
    }
};

namespace detail {

// Groups elements by equal rows (or columns) of the star table. Class
// indices follow order of first appearance.
inline void classes_of(const StarTable& s, bool by_row, std::vector<Element>& cls,
                       std::vector<Element>& reps) {
    const auto n = static_cast<Element>(s.size());
    cls.assign(n, 0);
    reps.clear();
    auto same = [&](Element a, Element b) {
        for (Element z = 0; z < n; ++z)
            if ((by_row ? s(a, z) != s(b, z) : s(z, a) != s(z, b))) return false;
        return true;
    };
    for (Element x = 0; x < n; ++x) {
        bool found = false;
        for (Element c = 0; c < reps.size() && !found; ++c)
            if (same(reps[c], x)) {
                cls[x] = c;
                found = true;
            }
        if (!found) {
            cls[x] = static_cast<Element>(reps.size());
            reps.push_back(x);
        }
    }
}

}  // namespace detail

/// Splits an algebra satisfying system (A) into its quasigroup and right
/// zero factors. Every invariant of the result is checked before returning.
inline Decomposition decompose(const FiniteAlgebra& a) {
    auto report = check_system(a, system_named("A"));
    for (const auto& [label, r] : report.results)
        if (!r.holds) throw NotRPQ(label, *r.counterexample);

    StarTable s = star(a);
    if (auto band = is_rectangular_band(s); !band)
        throw InvariantViolation("star table is not a rectangular band (" + band.failed_law + ")");

    std::vector<Element> l_class, l_reps, r_class, r_reps;
    detail::classes_of(s, true, l_class, l_reps);
    detail::classes_of(s, false, r_class, r_reps);
    const std::size_t nl = l_reps.size(), nr = r_reps.size();
    if (nl * nr != a.size())
        throw InvariantViolation("class counts " + std::to_string(nl) + " x " + std::to_string(nr) +
                                 " do not multiply to " + std::to_string(a.size()));

    // class(x) op class(y) := class(x op y), checked for every pair.
    std::array<std::optional<Table>, 3> lt;
    for (Op op : kAllOps) {
        Table t(nl, 0);
        std::vector<char> set(nl * nl, 0);
        for (Element x = 0; x < a.size(); ++x)
            for (Element y = 0; y < a.size(); ++y) {
                Element cx = l_class[x], cy = l_class[y], v = l_class[a(op, x, y)];
                if (!set[cx * nl + cy]) {
                    set[cx * nl + cy] = 1;
                    t.at(cx, cy) = v;
                } else if (t(cx, cy) != v) {
                    throw InvariantViolation(std::string("quotient operation ") + op_symbol(op) +
                                             " is not well defined");
                }
            }
        lt[static_cast<std::size_t>(op)] = std::move(t);
    }
    std::optional<Element> lp, rp;
    if (a.pointed()) {
        lp = l_class[*a.point()];
        rp = r_class[*a.point()];
    }
    Decomposition d{FiniteAlgebra(std::move(*lt[0]), std::move(lt[1]), std::move(lt[2]), lp),
                    right_zero(nr).with_point(rp),
                    std::move(l_class),
                    std::move(r_class),
                    std::move(l_reps),
                    std::move(r_reps),
                    std::move(s)};

    if (!check_system(d.L, system_named("Q")).all_hold())
        throw InvariantViolation("quasigroup factor fails Q1-Q4");
    if (!check_system(d.R, system_named("RZ")).all_hold())
        throw InvariantViolation("right zero factor is not right zero");
    if (!is_isomorphism(a, direct_product(d.L, d.R), d.witness_map()))
        throw InvariantViolation("witness map is not an isomorphism");
    return d;
}

// ---------------------------------------------------------------------------
// Structure of right product (pointed) quasigroups and loops

/// Verification of one isomorphism S -> Se × E_S given componentwise.
struct SplitCheck {
    std::string formula;
    Element e = 0;
    bool in_codomain = false;
    bool isomorphism = false;

    bool ok() const noexcept { return in_codomain && isomorphism; }
};

struct SePart {
    Element e = 0;
    ElementSet se;                 // { x*e : x in S }
    bool equals_factor_slice = false;  // Se = Q × {r_e}
    bool is_subquasigroup = false;
    bool maximal = false;
    std::optional<bool> matches_division_form;  // Se = {x : x/x = e} etc., loop cases only
    std::optional<bool> is_subloop;
};

struct StructureReport {
    std::size_t l_size = 0, r_size = 0;
    ElementSet idempotents;
    bool idempotents_closed = false;
    std::optional<bool> largest_idempotent_subalgebra;
    ElementSet rdiv_squares;  // { a/a }
    ElementSet ldiv_squares;  // { a\a }
    ElementSet left_neutrals;
    ElementSet right_neutrals;
    ElementSet factor_idempotents;  // E_L, as L indices
    bool factor_left_loop = false, factor_right_loop = false, factor_loop = false;

    std::vector<ElementSet> maximal_left_zero;   // singletons {e}
    bool maximal_left_zero_verified = false;
    std::vector<ElementSet> maximal_right_zero;  // {i} × R for i in E_L
    bool maximal_right_zero_verified = false;
    std::optional<bool> idempotents_right_zero;  // when |E_L| = 1

    std::optional<std::vector<ElementSet>> maximal_subalgebras;  // |S| <= 8
    std::optional<bool> maximal_subalgebras_match;

    std::optional<bool> idempotents_are_rdiv_squares;
    std::optional<bool> idempotents_are_ldiv_squares;
    std::optional<bool> left_neutrals_are_idempotents;
    std::optional<bool> right_neutral_iff_trivial_r;

    std::vector<SePart> parts;
    std::vector<SplitCheck> splits;

    // Pointed algebras only.
    std::optional<Element> point;
    std::optional<ElementSet> point_se;
    std::optional<bool> point_se_largest;
    std::optional<bool> point_left_zero_iff_idempotent;
    std::optional<bool> point_right_zero_iff_factor_idempotent;

    /// True when every recorded check passed.
    bool verified() const {
        auto good = [](const std::optional<bool>& b) { return !b || *b; };
        bool ok = maximal_left_zero_verified && maximal_right_zero_verified && good(largest_idempotent_subalgebra) &&
                  good(idempotents_right_zero) && good(maximal_subalgebras_match) &&
                  good(idempotents_are_rdiv_squares) && good(idempotents_are_ldiv_squares) &&
                  good(left_neutrals_are_idempotents) && good(right_neutral_iff_trivial_r) &&
                  good(point_se_largest) && good(point_left_zero_iff_idempotent) &&
                  good(point_right_zero_iff_factor_idempotent);
        for (const auto& p : parts)
            ok = ok && p.equals_factor_slice && p.is_subquasigroup && p.maximal && good(p.matches_division_form) &&
                 good(p.is_subloop);
        for (const auto& s : splits) ok = ok && s.ok();
        return ok;
    }
};

namespace detail {

inline ElementSet image(const FiniteAlgebra& a, const std::function<Element(Element)>& f) {
    ElementSet out;
    for (Element x = 0; x < a.size(); ++x) out.push_back(f(x));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline ElementSet filter(const FiniteAlgebra& a, const std::function<bool(Element)>& pred) {
    ElementSet out;
    for (Element x = 0; x < a.size(); ++x)
        if (pred(x)) out.push_back(x);
    return out;
}

inline bool contains(const ElementSet& s, Element x) { return std::binary_search(s.begin(), s.end(), x); }

inline bool subset_satisfies(const FiniteAlgebra& a, const ElementSet& subset, std::string_view system) {
    auto plain = a.with_point(std::nullopt);
    if (!is_closed(plain, subset)) return false;
    auto sub = subalgebra(plain, subset).first;
    return check_system(sub, system_named(system)).all_hold();
}

inline ElementSet set_union(ElementSet s, Element y) {
    s.insert(std::upper_bound(s.begin(), s.end(), y), y);
    return s;
}

// A subquasigroup T is maximal iff no subalgebra generated by T and one more
// element is a quasigroup (subalgebras of quasigroups are quasigroups).
inline bool maximal_subquasigroup(const FiniteAlgebra& a, const ElementSet& t) {
    auto plain = a.with_point(std::nullopt);
    for (Element y = 0; y < a.size(); ++y) {
        if (contains(t, y)) continue;
        auto g = generated_subalgebra(plain, set_union(t, y));
        if (subset_satisfies(plain, g, "Q")) return false;
    }
    return true;
}

inline bool is_left_zero(const FiniteAlgebra& a, const ElementSet& t) {
    for (Element x : t)
        for (Element y : t)
            if (a(Op::Mul, x, y) != x) return false;
    return true;
}

inline bool is_right_zero(const FiniteAlgebra& a, const ElementSet& t) {
    for (Element x : t)
        for (Element y : t)
            if (a(Op::Mul, x, y) != y) return false;
    return true;
}

inline std::vector<ElementSet> brute_force_maximal_subalgebras(const FiniteAlgebra& a) {
    const std::size_t n = a.size();
    std::vector<ElementSet> closed;
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        ElementSet s;
        for (Element x = 0; x < n; ++x)
            if (mask & (1u << x)) s.push_back(x);
        if (is_closed(a, s)) closed.push_back(std::move(s));
    }
    std::vector<ElementSet> out;
    for (const auto& s : closed) {
        bool maximal = true;
        for (const auto& t : closed)
            if (t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end())) maximal = false;
        if (maximal) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Verifies x -> (first(x), second(x)) is an isomorphism S -> Se × E_S.
inline SplitCheck check_split(const FiniteAlgebra& a, Element e, const ElementSet& se, const ElementSet& es,
                              std::string formula, const std::function<Element(Element)>& first,
                              const std::function<Element(Element)>& second) {
    SplitCheck c{std::move(formula), e, false, false};
    auto plain = a.with_point(std::nullopt);
    if (!is_closed(plain, se) || !is_closed(plain, es)) return c;
    std::vector<Element> map(a.size());
    for (Element x = 0; x < a.size(); ++x) {
        auto f = std::lower_bound(se.begin(), se.end(), first(x));
        auto s = std::lower_bound(es.begin(), es.end(), second(x));
        if (f == se.end() || *f != first(x) || s == es.end() || *s != second(x)) return c;
        map[x] = pair_index(static_cast<Element>(f - se.begin()), static_cast<Element>(s - es.begin()), es.size());
    }
    c.in_codomain = true;
    if (se.size() * es.size() != a.size()) return c;
    auto codomain = direct_product(subalgebra(plain, se).first, subalgebra(plain, es).first);
    c.isomorphism = is_isomorphism(plain, codomain, map);
    return c;
}

}  // namespace detail

inline constexpr std::size_t kMaximalSubalgebraBound = 8;

/// Structural facts of a right product quasigroup: idempotents, neutral
/// elements, the slices Se, and the splittings S ≅ Se × E_S that exist when
/// the quasigroup factor is a (left, right) loop.
inline StructureReport loop_structure_report(const FiniteAlgebra& a) {
    using namespace detail;
    const Decomposition d = decompose(a);
    StructureReport r;
    r.l_size = d.L.size();
    r.r_size = d.R.size();
    auto mul = [&](Element x, Element y) { return a(Op::Mul, x, y); };
    auto ld = [&](Element x, Element y) { return a(Op::LDiv, x, y); };
    auto rd = [&](Element x, Element y) { return a(Op::RDiv, x, y); };

    r.idempotents = idempotents(a);
    const ElementSet& es = r.idempotents;
    r.idempotents_closed = !es.empty() && is_closed(a.with_point(std::nullopt), es);
    if (r.idempotents_closed) {
        // Largest: every subalgebra consisting of idempotents lies inside E_S,
        // so it suffices that E_S itself is one.
        r.largest_idempotent_subalgebra = true;
    }
    r.rdiv_squares = image(a, [&](Element x) { return rd(x, x); });
    r.ldiv_squares = image(a, [&](Element x) { return ld(x, x); });
    r.left_neutrals = filter(a, [&](Element e) {
        for (Element x = 0; x < a.size(); ++x)
            if (mul(e, x) != x) return false;
        return true;
    });
    r.right_neutrals = filter(a, [&](Element e) {
        for (Element x = 0; x < a.size(); ++x)
            if (mul(x, e) != x) return false;
        return true;
    });
    r.factor_idempotents = idempotents(d.L);
    r.factor_left_loop = holds(d.L, identity_labelled("QLL").identity).holds;
    r.factor_right_loop = holds(d.L, identity_labelled("QRL").identity).holds;
    r.factor_loop = holds(d.L, identity_labelled("QL").identity).holds;

    // Left zero subsemigroups: exactly the idempotent singletons, each maximal.
    r.maximal_left_zero_verified = true;
    for (Element e : es) {
        r.maximal_left_zero.push_back({e});
        for (Element y = 0; y < a.size(); ++y)
            if (y != e && is_left_zero(a, set_union({e}, y))) r.maximal_left_zero_verified = false;
    }
    // Right zero subsemigroups {i} × R for idempotent i of L, each maximal.
    r.maximal_right_zero_verified = true;
    for (Element i : r.factor_idempotents) {
        auto t = filter(a, [&](Element x) { return d.l_class[x] == i; });
        if (!is_right_zero(a, t)) r.maximal_right_zero_verified = false;
        for (Element y = 0; y < a.size(); ++y)
            if (!contains(t, y) && is_right_zero(a, set_union(t, y))) r.maximal_right_zero_verified = false;
        r.maximal_right_zero.push_back(std::move(t));
    }
    if (r.factor_idempotents.size() == 1) r.idempotents_right_zero = is_right_zero(a, es);

    if (a.size() <= kMaximalSubalgebraBound) {
        auto found = brute_force_maximal_subalgebras(a.with_point(std::nullopt));
        std::vector<ElementSet> expected;
        for (const auto& qm : brute_force_maximal_subalgebras(d.L.with_point(std::nullopt)))
            expected.push_back(filter(a, [&](Element x) { return contains(qm, d.l_class[x]); }));
        if (d.R.size() > 1)
            for (Element rr = 0; rr < d.R.size(); ++rr)
                expected.push_back(filter(a, [&](Element x) { return d.r_class[x] != rr; }));
        std::sort(expected.begin(), expected.end());
        r.maximal_subalgebras_match = found == expected;
        r.maximal_subalgebras = std::move(found);
    }

    if (r.factor_left_loop) {
        r.idempotents_are_rdiv_squares = es == r.rdiv_squares;
        r.left_neutrals_are_idempotents = r.left_neutrals == es;
    }
    if (r.factor_right_loop) {
        r.idempotents_are_ldiv_squares = es == r.ldiv_squares;
        r.right_neutral_iff_trivial_r = r.right_neutrals.empty() ? d.R.size() != 1 : (d.R.size() == 1 && r.right_neutrals.size() == 1);
    }
    if (r.factor_loop) {
        bool ln = r.left_neutrals == es;
        r.left_neutrals_are_idempotents = r.left_neutrals_are_idempotents.value_or(true) && ln;
    }

    for (Element e : es) {
        SePart p;
        p.e = e;
        p.se = image(a, [&](Element x) { return mul(x, e); });
        p.equals_factor_slice = p.se == filter(a, [&](Element x) { return d.r_class[x] == d.r_class[e]; });
        p.is_subquasigroup = subset_satisfies(a, p.se, "Q");
        p.maximal = p.is_subquasigroup && maximal_subquasigroup(a, p.se);
        if (r.factor_loop) {
            p.matches_division_form = p.se == filter(a, [&](Element x) { return ld(x, x) == e && rd(x, x) == e; });
            p.is_subloop = subset_satisfies(a, p.se, "QL");
        } else if (r.factor_left_loop) {
            p.matches_division_form = p.se == filter(a, [&](Element x) { return rd(x, x) == e; });
            p.is_subloop = subset_satisfies(a, p.se, "QLL");
        } else if (r.factor_right_loop) {
            p.matches_division_form = p.se == filter(a, [&](Element x) { return ld(x, x) == e; });
            p.is_subloop = subset_satisfies(a, p.se, "QRL");
        }
        if (r.factor_left_loop)
            r.splits.push_back(check_split(a, e, p.se, es, "(xe/e, x/x)", [&](Element x) { return rd(mul(x, e), e); },
                                           [&](Element x) { return rd(x, x); }));
        if (r.factor_right_loop)
            r.splits.push_back(check_split(a, e, p.se, es, "(xe, x\\x)", [&](Element x) { return mul(x, e); },
                                           [&](Element x) { return ld(x, x); }));
        if (r.factor_loop)
            r.splits.push_back(check_split(a, e, p.se, es, "(xe, x/x)", [&](Element x) { return mul(x, e); },
                                           [&](Element x) { return rd(x, x); }));
        r.parts.push_back(std::move(p));
    }
    return r;
}

/// As loop_structure_report, plus the facts that depend on the distinguished
/// element e: Se is the largest pointed subquasigroup and, when e's
/// quasigroup component is the unique idempotent, S ≅ Se × E_S.
inline StructureReport pointed_structure_report(const FiniteAlgebra& a) {
    using namespace detail;
    if (!a.pointed()) throw SignatureError("pointed structure report needs a distinguished element");
    StructureReport r = loop_structure_report(a);
    const Decomposition d = decompose(a);
    const Element e = *a.point();
    auto mul = [&](Element x, Element y) { return a(Op::Mul, x, y); };
    auto ld = [&](Element x, Element y) { return a(Op::LDiv, x, y); };
    auto rd = [&](Element x, Element y) { return a(Op::RDiv, x, y); };
    const ElementSet& es = r.idempotents;
    const Element i = d.l_class[e];

    r.point = e;
    auto se = image(a, [&](Element x) { return mul(x, e); });
    bool largest = se == filter(a, [&](Element x) { return d.r_class[x] == d.r_class[e]; }) &&
                   subset_satisfies(a, se, "Q") && contains(se, e);
    for (Element y = 0; y < a.size() && largest; ++y)
        if (!contains(se, y) && subset_satisfies(a, generated_subalgebra(a, {y}), "Q")) largest = false;
    r.point_se_largest = largest;

    ElementSet se_idem;
    std::set_intersection(se.begin(), se.end(), es.begin(), es.end(), std::back_inserter(se_idem));
    bool e_idem = contains(es, e);
    r.point_left_zero_iff_idempotent = (se_idem == ElementSet{e}) == e_idem;

    auto column_i = filter(a, [&](Element x) { return d.l_class[x] == i; });
    bool i_idem = contains(r.factor_idempotents, i);
    r.point_right_zero_iff_factor_idempotent = is_right_zero(a, column_i) == i_idem;

    bool unique_idem = r.factor_idempotents == ElementSet{i};
    if (unique_idem)
        r.splits.push_back(check_split(a, e, se, es, "(xe/e, ex/x)", [&](Element x) { return rd(mul(x, e), e); },
                                       [&](Element x) { return rd(mul(e, x), x); }));

    auto l_left_neutral = [&](Element li) {
        for (Element y = 0; y < d.L.size(); ++y)
            if (d.L(Op::Mul, li, y) != y) return false;
        return true;
    };
    auto l_right_neutral = [&](Element li) {
        for (Element y = 0; y < d.L.size(); ++y)
            if (d.L(Op::Mul, y, li) != y) return false;
        return true;
    };
    bool ln = l_left_neutral(i), rn = l_right_neutral(i);
    if (ln && rn) {
        r.left_neutrals_are_idempotents = r.left_neutrals == es;
        r.right_neutral_iff_trivial_r = d.R.size() == 1 ? r.right_neutrals == ElementSet{e} : r.right_neutrals.empty();
        r.point_se_largest = *r.point_se_largest &&
                             se == filter(a, [&](Element x) { return ld(x, x) == e && rd(x, x) == e; });
        r.splits.push_back(check_split(a, e, se, es, "(xe, x/x) [pointed]", [&](Element x) { return mul(x, e); },
                                       [&](Element x) { return rd(x, x); }));
    } else if (ln) {
        r.idempotents_are_rdiv_squares = es == r.rdiv_squares;
        r.left_neutrals_are_idempotents = r.left_neutrals == es;
        r.point_se_largest = *r.point_se_largest && se == filter(a, [&](Element x) { return rd(x, x) == e; });
        r.splits.push_back(check_split(a, e, se, es, "(xe/e, x/x) [pointed]",
                                       [&](Element x) { return rd(mul(x, e), e); },
                                       [&](Element x) { return rd(x, x); }));
    } else if (rn) {
        r.idempotents_are_ldiv_squares = es == r.ldiv_squares;
        r.right_neutral_iff_trivial_r = d.R.size() == 1 ? r.right_neutrals == ElementSet{e} : r.right_neutrals.empty();
        r.point_se_largest = *r.point_se_largest && se == filter(a, [&](Element x) { return ld(x, x) == e; });
        r.splits.push_back(check_split(a, e, se, es, "(xe, x\\x) [pointed]", [&](Element x) { return mul(x, e); },
                                       [&](Element x) { return ld(x, x); }));
    }
    r.point_se = std::move(se);
    return r;
}

}  // namespace rpq
