#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rpq/algebra.hpp"
#include "rpq/axioms.hpp"
#include "rpq/error.hpp"

namespace rpq {

/// xa = b has no solution; carries the failed test (b/a)a = b.
class ConsistencyError : public Error {
public:
    ConsistencyError(Element a, Element b, Element witness)
        : Error("x*" + std::to_string(a) + " = " + std::to_string(b) + " is inconsistent: (b/a)*a = " +
                std::to_string(witness) + " != " + std::to_string(b)),
          a_(a), b_(b), witness_(witness) {}

    Element a() const noexcept { return a_; }
    Element b() const noexcept { return b_; }
    /// The value of (b/a)*a.
    Element witness() const noexcept { return witness_; }

private:
    Element a_, b_, witness_;
};

enum class Side : std::uint8_t { Left, Right };

/// Solutions of a*x = b (Left) or x*a = b (Right).
struct SolutionSet {
    Element a = 0;
    Element b = 0;
    Side side = Side::Right;
    ElementSet solutions;
    std::map<Element, Element> generator_trace;  // parameter p -> solution it produced
    bool fallback = false;                       // idempotent solve had no idempotents
    std::optional<bool> simplified_form_agrees;  // (b/a)e = (b/a)e/e, right loops only
};

namespace detail {

inline void check_range(const FiniteAlgebra& alg, Element a, Element b) {
    if (a >= alg.size() || b >= alg.size())
        throw StructuralError("element out of range for algebra of size " + std::to_string(alg.size()));
}

}  // namespace detail

/// The unique solution a\b of a*x = b in a right quasigroup.
inline Element solve_ax_b(const FiniteAlgebra& alg, Element a, Element b) {
    detail::check_range(alg, a, b);
    for (auto label : defining_labels(Variety::RightQuasigroup))
        if (!satisfies(alg, {label}))
            throw ClassificationError("not a right quasigroup: " + std::string(label) + " fails");
    Element x = alg.ldiv()(a, b);
    if (alg.mul()(a, x) != b) throw InvariantViolation("a\\b does not solve a*x = b");
    return x;
}

inline bool consistent_xa_b(const FiniteAlgebra& alg, Element a, Element b) {
    detail::check_range(alg, a, b);
    return alg.mul()(alg.rdiv()(b, a), a) == b;
}

namespace detail {

inline void require_consistent(const FiniteAlgebra& alg, Element a, Element b) {
    if (!consistent_xa_b(alg, a, b)) throw ConsistencyError(a, b, alg.mul()(alg.rdiv()(b, a), a));
}

inline SolutionSet collect(const FiniteAlgebra& alg, Element a, Element b, const ElementSet& params) {
    const auto& mul = alg.mul();
    const auto& rdiv = alg.rdiv();
    SolutionSet s{a, b, Side::Right, {}, {}, false, std::nullopt};
    const Element ba = rdiv(b, a);
    for (Element p : params) {
        Element x = rdiv(mul(ba, p), p);
        if (mul(x, a) != b)
            throw InvariantViolation("(b/a)p/p does not solve x*a = b for p=" + std::to_string(p));
        s.generator_trace[p] = x;
        s.solutions.push_back(x);
    }
    std::sort(s.solutions.begin(), s.solutions.end());
    s.solutions.erase(std::unique(s.solutions.begin(), s.solutions.end()), s.solutions.end());
    return s;
}

inline ElementSet all_elements(const FiniteAlgebra& alg) {
    ElementSet all(alg.size());
    std::iota(all.begin(), all.end(), Element{0});
    return all;
}

}  // namespace detail

/// All solutions of x*a = b, as x = (b/a)p/p for p ranging over the carrier.
inline SolutionSet solve_xa_b(const FiniteAlgebra& alg, Element a, Element b) {
    detail::require_consistent(alg, a, b);
    return detail::collect(alg, a, b, detail::all_elements(alg));
}

/// True when F(F(x)) = F(x) for every x.
inline bool check_reproductive(const FiniteAlgebra& alg, const std::function<Element(Element)>& f) {
    for (Element x = 0; x < alg.size(); ++x) {
        Element fx = f(x);
        if (fx >= alg.size() || f(fx) != fx) return false;
    }
    return true;
}

/// As solve_xa_b with the parameter restricted to idempotents. Without
/// idempotents it falls back to the full parameter range and sets `fallback`.
inline SolutionSet solve_xa_b_idempotent(const FiniteAlgebra& alg, Element a, Element b) {
    detail::require_consistent(alg, a, b);
    auto es = idempotents(alg);
    if (es.empty()) {
        auto s = detail::collect(alg, a, b, detail::all_elements(alg));
        s.fallback = true;
        return s;
    }
    auto s = detail::collect(alg, a, b, es);
    if (is_in(alg, Variety::RPRightLoop)) {
        const auto& mul = alg.mul();
        const auto& rdiv = alg.rdiv();
        Element ba = rdiv(b, a);
        bool agree = true;
        for (Element e : es) agree = agree && mul(ba, e) == rdiv(mul(ba, e), e);
        s.simplified_form_agrees = agree;
    }
    return s;
}

}  // namespace rpq
