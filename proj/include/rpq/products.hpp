#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rpq/algebra.hpp"
#include "rpq/axioms.hpp"
#include "rpq/error.hpp"

namespace rpq {

using Sequence = std::vector<Element>;

namespace detail {

inline void require_nonempty(std::span<const Element> seq, const FiniteAlgebra& a) {
    if (seq.empty()) throw StructuralError("empty sequence");
    for (Element x : seq)
        if (x >= a.size()) throw StructuralError("sequence element " + std::to_string(x) + " out of range");
}

inline void require_variety(const FiniteAlgebra& a, Variety v) {
    if (!is_in(a, v)) throw ClassificationError(std::string("algebra is not in ") + to_string(v));
}

inline bool idempotent(const FiniteAlgebra& a, Element x) { return a(Op::Mul, x, x) == x; }

}  // namespace detail

/// a_1 * (a_2 * (... * a_n)).
inline Element rho(const FiniteAlgebra& a, std::span<const Element> seq) {
    detail::require_nonempty(seq, a);
    const auto& mul = a.mul();
    Element acc = seq.back();
    for (std::size_t i = seq.size() - 1; i-- > 0;) acc = mul(seq[i], acc);
    return acc;
}

/// ((a_1 * a_2) * ...) * a_n.
inline Element lambda(const FiniteAlgebra& a, std::span<const Element> seq) {
    detail::require_nonempty(seq, a);
    const auto& mul = a.mul();
    Element acc = seq.front();
    for (std::size_t i = 1; i < seq.size(); ++i) acc = mul(acc, seq[i]);
    return acc;
}

/// Drops the idempotent entries of a right product left loop sequence,
/// keeping a_n last. rho of the result equals rho of the input.
inline Sequence rho_reduce(const FiniteAlgebra& a, std::span<const Element> seq) {
    detail::require_nonempty(seq, a);
    detail::require_variety(a, Variety::RPLeftLoop);
    Sequence out;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (!detail::idempotent(a, seq[i])) out.push_back(seq[i]);
    out.push_back(seq.back());
    return out;
}

/// Keeps a_1, the nonidempotent entries and a_n, each once, of a right
/// product right loop sequence. lambda of the result equals lambda of the input.
inline Sequence lambda_reduce(const FiniteAlgebra& a, std::span<const Element> seq) {
    detail::require_nonempty(seq, a);
    detail::require_variety(a, Variety::RPRightLoop);
    if (seq.size() == 1) return {seq[0]};
    Sequence out{seq.front()};
    for (std::size_t i = 1; i + 1 < seq.size(); ++i)
        if (!detail::idempotent(a, seq[i])) out.push_back(seq[i]);
    out.push_back(seq.back());
    return out;
}

/// S with a fresh element `unit` = |S| neutral for every operation.
struct ExtendedAlgebra {
    FiniteAlgebra algebra;
    Element unit;
};

inline ExtendedAlgebra adjoin_unit(const FiniteAlgebra& a) {
    const auto n = static_cast<Element>(a.size());
    std::array<std::optional<Table>, 3> tables;
    for (Op op : kAllOps) {
        if (!a.has(op)) continue;
        tables[static_cast<std::size_t>(op)] = Table::generate(n + 1, [&](Element x, Element y) {
            if (x == n) return y;
            if (y == n) return x;
            return a(op, x, y);
        });
    }
    return {FiniteAlgebra(std::move(*tables[0]), std::move(tables[1]), std::move(tables[2]), a.point()), n};
}

// ---------------------------------------------------------------------------
// Bracket shapes
//
// Grammar: shape := '.' | '(' shape shape ')'. Whitespace is ignored, so
// "((..)(..))" is the balanced product of four factors.

class BracketShape {
public:
    static BracketShape leaf() { return BracketShape(nullptr, nullptr); }
    static BracketShape join(BracketShape l, BracketShape r) {
        return BracketShape(std::make_shared<BracketShape>(std::move(l)), std::make_shared<BracketShape>(std::move(r)));
    }

    static BracketShape parse(std::string_view text) {
        std::size_t pos = 0;
        auto skip = [&] {
            while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
        };
        auto rec = [&](auto&& self) -> BracketShape {
            skip();
            if (pos >= text.size()) throw ParseError("unexpected end of shape", pos);
            if (text[pos] == '.') {
                ++pos;
                return leaf();
            }
            if (text[pos] != '(') throw ParseError(std::string("unexpected '") + text[pos] + "' in shape", pos);
            ++pos;
            BracketShape l = self(self);
            BracketShape r = self(self);
            skip();
            if (pos >= text.size() || text[pos] != ')') throw ParseError("expected ')' in shape", pos);
            ++pos;
            return join(std::move(l), std::move(r));
        };
        BracketShape s = rec(rec);
        skip();
        if (pos != text.size()) throw ParseError("trailing input in shape", pos);
        return s;
    }

    /// x1*(x2*(...)) with n leaves.
    static BracketShape right_comb(std::size_t n) {
        if (n == 0) throw StructuralError("shape needs at least one leaf");
        BracketShape s = leaf();
        for (std::size_t i = 1; i < n; ++i) s = join(leaf(), std::move(s));
        return s;
    }

    /// ((x1*x2)*...)*xn with n leaves.
    static BracketShape left_comb(std::size_t n) {
        if (n == 0) throw StructuralError("shape needs at least one leaf");
        BracketShape s = leaf();
        for (std::size_t i = 1; i < n; ++i) s = join(std::move(s), leaf());
        return s;
    }

    bool is_leaf() const noexcept { return !left_; }
    const BracketShape& left() const noexcept { return *left_; }
    const BracketShape& right() const noexcept { return *right_; }
    std::size_t leaves() const noexcept { return leaves_; }

    std::string to_string() const {
        if (is_leaf()) return ".";
        return "(" + left_->to_string() + right_->to_string() + ")";
    }

    friend bool operator==(const BracketShape& a, const BracketShape& b) {
        if (a.is_leaf() || b.is_leaf()) return a.is_leaf() == b.is_leaf();
        return *a.left_ == *b.left_ && *a.right_ == *b.right_;
    }

private:
    BracketShape(std::shared_ptr<const BracketShape> l, std::shared_ptr<const BracketShape> r)
        : left_(std::move(l)), right_(std::move(r)), leaves_(left_ ? left_->leaves_ + right_->leaves_ : 1) {}

    std::shared_ptr<const BracketShape> left_, right_;
    std::size_t leaves_;
};

/// Every bracketing of n factors (Catalan many), in a fixed order.
inline std::vector<BracketShape> all_shapes(std::size_t n) {
    if (n == 0) throw StructuralError("shape needs at least one leaf");
    if (n == 1) return {BracketShape::leaf()};
    std::vector<BracketShape> out;
    for (std::size_t k = 1; k < n; ++k)
        for (const auto& l : all_shapes(k))
            for (const auto& r : all_shapes(n - k)) out.push_back(BracketShape::join(l, r));
    return out;
}

/// Multiplication-only product of `seq` bracketed by `shape`.
inline Element eval_shape(const FiniteAlgebra& a, const BracketShape& shape, std::span<const Element> seq) {
    detail::require_nonempty(seq, a);
    if (shape.leaves() != seq.size())
        throw StructuralError("shape has " + std::to_string(shape.leaves()) + " leaves but the sequence has " +
                              std::to_string(seq.size()) + " entries");
    const auto& mul = a.mul();
    std::size_t next = 0;
    auto rec = [&](auto&& self, const BracketShape& s) -> Element {
        if (s.is_leaf()) return seq[next++];
        Element l = self(self, s.left());
        Element r = self(self, s.right());
        return mul(l, r);
    };
    return rec(rec, shape);
}

/// Replaces every idempotent a_k with k < n by the adjoined unit (or by the
/// point when `pointed`). For the unit form evaluate in adjoin_unit(a); the
/// pointed form stays inside a.
inline Sequence shape_reduce(const FiniteAlgebra& a, const BracketShape& shape, std::span<const Element> seq,
                             bool pointed) {
    detail::require_nonempty(seq, a);
    if (shape.leaves() != seq.size()) throw StructuralError("shape and sequence lengths differ");
    detail::require_variety(a, Variety::RPLoop);
    Element replacement = static_cast<Element>(a.size());
    if (pointed) {
        if (!a.pointed()) throw SignatureError("pointed reduction needs a distinguished element");
        if (!satisfies(a, {"PLL", "PRL"}))
            throw ClassificationError("algebra is not a right product pointed loop");
        replacement = *a.point();
    }
    Sequence out(seq.begin(), seq.end());
    for (std::size_t k = 0; k + 1 < out.size(); ++k)
        if (detail::idempotent(a, out[k])) out[k] = replacement;
    return out;
}

/// The at-most-three-factor form for sequences with at most two
/// nonidempotents: the nonidempotents among a_1..a_{n-1} in order, then a_n
/// unless already used. Multiplied left to right.
inline Sequence short_product_form(const FiniteAlgebra& a, std::span<const Element> seq) {
    detail::require_nonempty(seq, a);
    Sequence out;
    std::size_t nonidempotent = 0;
    for (std::size_t k = 0; k < seq.size(); ++k)
        if (!detail::idempotent(a, seq[k])) ++nonidempotent;
    if (nonidempotent > 2) throw StructuralError("more than two nonidempotent entries");
    for (std::size_t k = 0; k + 1 < seq.size(); ++k)
        if (!detail::idempotent(a, seq[k])) out.push_back(seq[k]);
    out.push_back(seq.back());
    return out;
}

}  // namespace rpq
