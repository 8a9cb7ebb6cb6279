#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rpq/algebra.hpp"
#include "rpq/axioms.hpp"
#include "rpq/error.hpp"
#include "rpq/model_search.hpp"
#include "rpq/term.hpp"

namespace rpq {

struct RewriteRule {
    std::string name;
    Term lhs;
    Term rhs;
};

/// The quasigroup axioms oriented left to right plus the two rules that
/// complete them.
inline const std::vector<RewriteRule>& quasigroup_rules() {
    static const std::vector<RewriteRule> rules = [] {
        std::vector<RewriteRule> r;
        auto add = [&](const char* name, const char* lhs, const char* rhs) {
            r.push_back({name, parse_term(lhs), parse_term(rhs)});
        };
        add("R1", "x*(x\\y)", "y");
        add("R2", "x\\(x*y)", "y");
        add("R3", "(x*y)/y", "x");
        add("R4", "(x/y)*y", "x");
        add("R5", "y/(x\\y)", "x");
        add("R6", "(x/y)\\x", "y");
        return r;
    }();
    return rules;
}

using Substitution = std::map<std::string, Term>;

/// Extends `s` so that pattern instantiated by s equals t.
inline bool match(const Term& pattern, const Term& t, Substitution& s) {
    switch (pattern.kind()) {
        case Term::Kind::Var: {
            auto [it, fresh] = s.emplace(pattern.name(), t);
            return fresh || it->second == t;
        }
        case Term::Kind::Point:
        case Term::Kind::Unit: return pattern.kind() == t.kind();
        case Term::Kind::Apply: break;
    }
    return t.is_apply() && t.op() == pattern.op() && match(pattern.left(), t.left(), s) &&
           match(pattern.right(), t.right(), s);
}

inline Term substitute(const Term& t, const Substitution& s) {
    if (t.is_var()) {
        auto it = s.find(t.name());
        return it == s.end() ? t : it->second;
    }
    if (!t.is_apply()) return t;
    return Term::apply(t.op(), substitute(t.left(), s), substitute(t.right(), s));
}

namespace detail {

inline bool occurs(const std::string& v, const Term& t) {
    if (t.is_var()) return t.name() == v;
    return t.is_apply() && (occurs(v, t.left()) || occurs(v, t.right()));
}

inline Term resolve(const Term& t, const Substitution& s) {
    if (t.is_var()) {
        auto it = s.find(t.name());
        return it == s.end() ? t : resolve(it->second, s);
    }
    if (!t.is_apply()) return t;
    return Term::apply(t.op(), resolve(t.left(), s), resolve(t.right(), s));
}

inline bool unify_into(const Term& a, const Term& b, Substitution& s) {
    Term x = resolve(a, s), y = resolve(b, s);
    if (x == y) return true;
    if (x.is_var()) {
        if (occurs(x.name(), y)) return false;
        s.insert_or_assign(x.name(), y);
        return true;
    }
    if (y.is_var()) return unify_into(y, x, s);
    if (!x.is_apply() || !y.is_apply()) return false;
    return x.op() == y.op() && unify_into(x.left(), y.left(), s) && unify_into(x.right(), y.right(), s);
}

inline void require_quasigroup_language(const Term& t) {
    auto sig = signature_of(t);
    if (sig.uses_point || sig.uses_unit)
        throw UnsupportedLanguage("term " + to_string(t) +
                                  " uses a constant; only the quasigroup language is decided");
}

}  // namespace detail

/// Most general unifier, with occurs check.
inline std::optional<Substitution> unify(const Term& a, const Term& b) {
    Substitution s;
    if (!detail::unify_into(a, b, s)) return std::nullopt;
    Substitution out;
    for (const auto& [v, t] : s) out.emplace(v, detail::resolve(t, s));
    return out;
}

enum class Strategy : std::uint8_t { Innermost, Outermost };

struct RewriteStep {
    std::string rule;
    std::vector<int> position;  // 0 = left, 1 = right
    Term result;
};

struct Normalization {
    Term normal;
    std::vector<RewriteStep> trace;
};

namespace detail {

inline std::optional<Term> rewrite_root(const Term& t, std::string* rule) {
    for (const auto& r : quasigroup_rules()) {
        Substitution s;
        if (match(r.lhs, t, s)) {
            if (rule) *rule = r.name;
            return substitute(r.rhs, s);
        }
    }
    return std::nullopt;
}

// One step at the leftmost-innermost or leftmost-outermost redex.
inline std::optional<Term> rewrite_once(const Term& t, Strategy strategy, std::string& rule, std::vector<int>& pos) {
    if (strategy == Strategy::Outermost)
        if (auto r = rewrite_root(t, &rule)) return r;
    if (t.is_apply()) {
        pos.push_back(0);
        if (auto l = rewrite_once(t.left(), strategy, rule, pos)) return Term::apply(t.op(), *l, t.right());
        pos.back() = 1;
        if (auto r = rewrite_once(t.right(), strategy, rule, pos)) return Term::apply(t.op(), t.left(), *r);
        pos.pop_back();
    }
    if (strategy == Strategy::Innermost)
        if (auto r = rewrite_root(t, &rule)) return r;
    return std::nullopt;
}

}  // namespace detail

/// Exhaustive rewriting with R1-R6, first matching rule in order. Every step
/// removes at least two nodes, so the trace is shorter than the term.
inline Normalization normalize_traced(const Term& t, Strategy strategy = Strategy::Innermost) {
    detail::require_quasigroup_language(t);
    Normalization out{t, {}};
    while (true) {
        std::string rule;
        std::vector<int> pos;
        auto next = detail::rewrite_once(out.normal, strategy, rule, pos);
        if (!next) return out;
        if (next->size() >= out.normal.size()) throw InvariantViolation("rewrite step did not shrink the term");
        out.trace.push_back({rule, pos, *next});
        out.normal = *next;
    }
}

inline Term normalize(const Term& t, Strategy strategy = Strategy::Innermost) {
    return normalize_traced(t, strategy).normal;
}

/// Validity in all quasigroups: equal normal forms.
inline bool wp_quasigroup(const Term& u, const Term& v) { return normalize(u) == normalize(v); }

struct WordProblemResult {
    bool valid = false;
    Term lhs_normal, rhs_normal;
    std::string lhs_tail, rhs_tail;
    bool tails_equal = false;
    bool quasigroup_valid = false;
};

/// Validity in all right product quasigroups: equal tails and valid in quasigroups.
inline WordProblemResult decide_rpq(const Term& u, const Term& v) {
    auto nu = normalize(u), nv = normalize(v);
    WordProblemResult r{false, nu, nv, tail(u), tail(v), false, nu == nv};
    r.tails_equal = r.lhs_tail == r.rhs_tail;
    r.valid = r.tails_equal && r.quasigroup_valid;
    return r;
}

inline bool wp_rpq(const Term& u, const Term& v) { return decide_rpq(u, v).valid; }

// ---------------------------------------------------------------------------
// Critical pairs

struct CriticalPair {
    std::string outer;  // rule whose left side contains the overlap
    std::string inner;  // rule applied below the root of the overlap
    std::vector<int> position;
    Term overlap;
    Term inner_reduct;  // overlap rewritten by `inner` at `position`
    Term outer_reduct;  // overlap rewritten by `outer` at the root
    Term inner_normal, outer_normal;
    std::vector<std::string> join_rules;
    bool joined = false;
};

struct ConfluenceReport {
    std::vector<CriticalPair> pairs;
    bool all_joined() const {
        for (const auto& p : pairs)
            if (!p.joined) return false;
        return true;
    }
};

namespace detail {

inline Term rename(const Term& t, const std::string& suffix) {
    if (t.is_var()) return Term::var(t.name() + suffix);
    if (!t.is_apply()) return t;
    return Term::apply(t.op(), rename(t.left(), suffix), rename(t.right(), suffix));
}

inline void collect_vars(const Term& t, std::vector<std::string>& out) {
    if (t.is_var()) {
        if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    } else if (t.is_apply()) {
        collect_vars(t.left(), out);
        collect_vars(t.right(), out);
    }
}

// Drops the renaming-apart suffix when that does not merge two variables.
inline Substitution strip_suffixes(const std::vector<Term>& terms) {
    std::vector<std::string> vars;
    for (const auto& t : terms) collect_vars(t, vars);
    Substitution s;
    std::set<std::string> used;
    for (const auto& v : vars) {
        std::string base = v.substr(0, v.find('_'));
        if (!used.insert(base).second) return {};
        s.emplace(v, Term::var(base));
    }
    return s;
}

inline const Term& at(const Term& t, const std::vector<int>& pos) {
    const Term* cur = &t;
    for (int p : pos) cur = p == 0 ? &cur->left() : &cur->right();
    return *cur;
}

inline Term replace(const Term& t, const std::vector<int>& pos, std::size_t depth, const Term& with) {
    if (depth == pos.size()) return with;
    if (pos[depth] == 0) return Term::apply(t.op(), replace(t.left(), pos, depth + 1, with), t.right());
    return Term::apply(t.op(), t.left(), replace(t.right(), pos, depth + 1, with));
}

inline void positions(const Term& t, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (!t.is_apply()) return;
    out.push_back(cur);
    cur.push_back(0);
    positions(t.left(), cur, out);
    cur.back() = 1;
    positions(t.right(), cur, out);
    cur.pop_back();
}

}  // namespace detail

/// Every overlap of one rule's left side into a non-variable position of
/// another's (or its own, below the root), with both reducts normalized.
inline ConfluenceReport confluence_selfcheck() {
    ConfluenceReport report;
    const auto& rules = quasigroup_rules();
    for (const auto& outer : rules) {
        Term ol = detail::rename(outer.lhs, "_1"), orhs = detail::rename(outer.rhs, "_1");
        std::vector<std::vector<int>> pos;
        std::vector<int> cur;
        detail::positions(ol, cur, pos);
        for (const auto& inner : rules) {
            Term il = detail::rename(inner.lhs, "_2"), irhs = detail::rename(inner.rhs, "_2");
            for (const auto& p : pos) {
                if (p.empty() && &outer == &inner) continue;
                auto mgu = unify(detail::at(ol, p), il);
                if (!mgu) continue;
                Term overlap = substitute(ol, *mgu);
                Term in_red = detail::replace(overlap, p, 0, substitute(irhs, *mgu));
                Term out_red = substitute(orhs, *mgu);
                auto names = detail::strip_suffixes({overlap, in_red, out_red});
                if (!names.empty()) {
                    overlap = substitute(overlap, names);
                    in_red = substitute(in_red, names);
                    out_red = substitute(out_red, names);
                }
                auto ni = normalize_traced(in_red), no = normalize_traced(out_red);
                CriticalPair cp{outer.name, inner.name, p, overlap, in_red, out_red, ni.normal, no.normal, {}, false};
                for (const auto* tr : {&ni.trace, &no.trace})
                    for (const auto& step : *tr) cp.join_rules.push_back(step.rule);
                cp.joined = ni.normal == no.normal;
                report.pairs.push_back(std::move(cp));
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Refutation by finite models

struct Refutation {
    FiniteAlgebra model;
    Assignment counterexample;
};

/// Searches models of `system` of sizes 1..max_n for one where u = v fails.
/// Finding none proves nothing.
inline std::optional<Refutation> refute_by_model(const Term& u, const Term& v, std::size_t max_n = 4,
                                                 std::string_view system = "A") {
    if (max_n > kMaxSearchSize)
        throw RefusalError("refutation search is limited to size <= " + std::to_string(kMaxSearchSize));
    Identity id{u, v};
    auto sig = signature_of(id);
    if (sig.uses_unit) throw UnsupportedLanguage("the unit constant 1 has no meaning in a model search");
    for (std::size_t n = 1; n <= max_n; ++n) {
        SearchProblem p;
        p.n = n;
        p.satisfy = system_named(system).plain();
        p.violate = {id};
        p.with_point = sig.uses_point;
        auto models = find_models(p);
        if (models.empty()) continue;
        auto h = holds(models.front(), id);
        return Refutation{models.front(), *h.counterexample};
    }
    return std::nullopt;
}

}  // namespace rpq
