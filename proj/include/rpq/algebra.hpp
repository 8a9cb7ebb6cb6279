#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rpq/error.hpp"

namespace rpq {

/// Index of an element in the carrier {0, ..., n-1} of its owning algebra.
using Element = std::uint32_t;

/// Sorted, duplicate-free list of elements.
using ElementSet = std::vector<Element>;

enum class Op : std::uint8_t { Mul, LDiv, RDiv };

inline constexpr std::array<Op, 3> kAllOps{Op::Mul, Op::LDiv, Op::RDiv};

constexpr const char* op_symbol(Op op) noexcept {
    switch (op) {
        case Op::Mul: return "*";
        case Op::LDiv: return "\\";
        case Op::RDiv: return "/";
    }
    return "?";
}

constexpr const char* op_name(Op op) noexcept {
    switch (op) {
        case Op::Mul: return "mul";
        case Op::LDiv: return "ldiv";
        case Op::RDiv: return "rdiv";
    }
    return "?";
}

/// Square Cayley table, row-major: `t(x, y)` is `x op y`.
class Table {
public:
    Table() = default;
    explicit Table(std::size_t n, Element fill = 0) : n_(n), cells_(n * n, fill) {}

    static Table from_rows(const std::vector<std::vector<Element>>& rows) {
        Table t(rows.size());
        for (std::size_t x = 0; x < rows.size(); ++x) {
            if (rows[x].size() != rows.size())
                throw StructuralError("table row " + std::to_string(x) + " has " +
                                      std::to_string(rows[x].size()) + " entries, expected " +
                                      std::to_string(rows.size()));
            std::copy(rows[x].begin(), rows[x].end(), t.cells_.begin() + x * t.n_);
        }
        return t;
    }

    static Table generate(std::size_t n, const std::function<Element(Element, Element)>& f) {
        Table t(n);
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y) t.at(x, y) = f(x, y);
        return t;
    }

    std::size_t size() const noexcept { return n_; }

    Element operator()(Element x, Element y) const noexcept { return cells_[x * n_ + y]; }
    Element& at(Element x, Element y) noexcept { return cells_[x * n_ + y]; }

    std::span<const Element> row(Element x) const noexcept {
        return {cells_.data() + x * n_, n_};
    }
    std::span<const Element> cells() const noexcept { return cells_; }

    std::vector<std::vector<Element>> rows() const {
        std::vector<std::vector<Element>> out(n_);
        for (std::size_t x = 0; x < n_; ++x) out[x].assign(row(Element(x)).begin(), row(Element(x)).end());
        return out;
    }

    friend bool operator==(const Table&, const Table&) = default;
    friend auto operator<=>(const Table& a, const Table& b) {
        return std::tie(a.n_, a.cells_) <=> std::tie(b.n_, b.cells_);
    }

private:
    std::size_t n_ = 0;
    std::vector<Element> cells_;
};

/// A finite algebra in the signature {*, \, /} with an optional constant.
///
/// Divisions may be absent (e.g. a right quasigroup without a usable `/`);
/// anything that needs a missing table throws MissingTable rather than
/// reading junk. Instances are immutable after construction.
class FiniteAlgebra {
public:
    FiniteAlgebra(Table mul, std::optional<Table> ldiv = std::nullopt,
                  std::optional<Table> rdiv = std::nullopt,
                  std::optional<Element> point = std::nullopt)
        : n_(mul.size()), tables_{std::move(mul), std::move(ldiv), std::move(rdiv)},
          point_(point) {
        validate();
    }

    std::size_t size() const noexcept { return n_; }

    bool has(Op op) const noexcept { return tables_[index(op)].has_value(); }

    const Table& table(Op op) const {
        const auto& t = tables_[index(op)];
        if (!t) throw MissingTable(std::string("algebra has no ") + op_name(op) + " table");
        return *t;
    }
    const std::optional<Table>& maybe_table(Op op) const noexcept { return tables_[index(op)]; }

    const Table& mul() const { return table(Op::Mul); }
    const Table& ldiv() const { return table(Op::LDiv); }
    const Table& rdiv() const { return table(Op::RDiv); }

    const std::optional<Element>& point() const noexcept { return point_; }
    bool pointed() const noexcept { return point_.has_value(); }

    Element apply(Op op, Element a, Element b) const {
        if (a >= n_ || b >= n_)
            throw StructuralError("element out of range: (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ") in algebra of size " + std::to_string(n_));
        return table(op)(a, b);
    }

    /// Unchecked lookup for hot loops; caller guarantees presence and range.
    Element operator()(Op op, Element a, Element b) const noexcept {
        return (*tables_[index(op)])(a, b);
    }

    FiniteAlgebra with_point(std::optional<Element> point) const {
        return FiniteAlgebra(*tables_[0], tables_[1], tables_[2], point);
    }
    FiniteAlgebra with_table(Op op, std::optional<Table> t) const {
        auto tables = tables_;
        tables[index(op)] = std::move(t);
        return FiniteAlgebra(*tables[0], tables[1], tables[2], point_);
    }

    friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;

private:
    static constexpr std::size_t index(Op op) noexcept { return static_cast<std::size_t>(op); }

    void validate() const {
        if (n_ == 0) throw StructuralError("empty carrier");
        for (Op op : kAllOps) {
            const auto& t = tables_[index(op)];
            if (!t) continue;
            if (t->size() != n_)
                throw StructuralError(std::string(op_name(op)) + " table has size " +
                                      std::to_string(t->size()) + ", expected " + std::to_string(n_));
            for (Element v : t->cells())
                if (v >= n_)
                    throw StructuralError(std::string(op_name(op)) + " table entry " +
                                          std::to_string(v) + " out of range");
        }
        if (point_ && *point_ >= n_)
            throw StructuralError("point " + std::to_string(*point_) + " out of range");
    }

    std::size_t n_;
    std::array<std::optional<Table>, 3> tables_;
    std::optional<Element> point_;
};

namespace detail {

// Returns the first index that is not a permutation, or nullopt.
inline std::optional<std::size_t> first_non_permutation(const Table& mul, bool rows) {
    const std::size_t n = mul.size();
    std::vector<char> seen(n);
    for (Element i = 0; i < n; ++i) {
        std::fill(seen.begin(), seen.end(), 0);
        for (Element j = 0; j < n; ++j) {
            Element v = rows ? mul(i, j) : mul(j, i);
            if (v >= n) throw StructuralError("table entry " + std::to_string(v) + " out of range");
            if (seen[v]) return i;
            seen[v] = 1;
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Left division of a table whose rows are permutations: `z = x \ y` is the
/// unique z with `x * z = y`.
inline Table left_division(const Table& mul) {
    if (auto bad = detail::first_non_permutation(mul, true))
        throw NotCancellative(NotCancellative::Kind::Row, *bad);
    Table out(mul.size());
    for (Element x = 0; x < mul.size(); ++x)
        for (Element z = 0; z < mul.size(); ++z) out.at(x, mul(x, z)) = z;
    return out;
}

/// Right division of a table whose columns are permutations: `z = x / y` is
/// the unique z with `z * y = x`.
inline Table right_division(const Table& mul) {
    if (auto bad = detail::first_non_permutation(mul, false))
        throw NotCancellative(NotCancellative::Kind::Column, *bad);
    Table out(mul.size());
    for (Element y = 0; y < mul.size(); ++y)
        for (Element z = 0; z < mul.size(); ++z) out.at(mul(z, y), y) = z;
    return out;
}

/// Which divisions derive_divisions must produce; the rest are best effort.
enum class Require : std::uint8_t { None, Left, Right, Both };

/// Builds an algebra from a multiplication table, deriving every division
/// that exists. Throws NotCancellative when a required one does not.
inline FiniteAlgebra derive_divisions(const Table& mul, Require require = Require::None,
                                      std::optional<Element> point = std::nullopt) {
    auto need_left = require == Require::Left || require == Require::Both;
    auto need_right = require == Require::Right || require == Require::Both;
    std::optional<Table> ldiv, rdiv;
    if (!detail::first_non_permutation(mul, true) || need_left) ldiv = left_division(mul);
    if (!detail::first_non_permutation(mul, false) || need_right) rdiv = right_division(mul);
    return FiniteAlgebra(mul, std::move(ldiv), std::move(rdiv), point);
}

/// The n-element right zero semigroup: all three operations return the right argument.
inline FiniteAlgebra right_zero(std::size_t n) {
    if (n == 0) throw StructuralError("empty carrier");
    auto t = Table::generate(n, [](Element, Element y) { return y; });
    return FiniteAlgebra(t, t, t);
}

/// Cyclic group Z_n written additively, with both divisions.
inline FiniteAlgebra cyclic_group(std::size_t n, std::optional<Element> point = std::nullopt) {
    if (n == 0) throw StructuralError("empty carrier");
    auto m = static_cast<Element>(n);
    return derive_divisions(Table::generate(n, [m](Element x, Element y) { return (x + y) % m; }),
                            Require::Both, point);
}

/// Encoding of the pair (a, b) in direct_product(A, B).
constexpr Element pair_index(Element a, Element b, std::size_t size_b) noexcept {
    return static_cast<Element>(a * size_b + b);
}

/// Componentwise product; pairs are encoded row-major as a*|B| + b. A table is
/// present in the product iff it is present in both factors.
inline FiniteAlgebra direct_product(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    if (a.pointed() != b.pointed())
        throw SignatureError("direct product of pointed and unpointed algebras");
    const std::size_t nb = b.size(), n = a.size() * nb;
    std::array<std::optional<Table>, 3> tables;
    for (Op op : kAllOps) {
        if (!a.has(op) || !b.has(op)) continue;
        Table t(n);
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y)
                t.at(x, y) = pair_index(a(op, x / nb, y / nb), b(op, x % nb, y % nb), nb);
        tables[static_cast<std::size_t>(op)] = std::move(t);
    }
    if (!tables[0]) throw MissingTable("direct product needs both multiplications");
    std::optional<Element> point;
    if (a.pointed()) point = pair_index(*a.point(), *b.point(), nb);
    return FiniteAlgebra(std::move(*tables[0]), std::move(tables[1]), std::move(tables[2]), point);
}

inline ElementSet idempotents(const FiniteAlgebra& a) {
    ElementSet out;
    for (Element x = 0; x < a.size(); ++x)
        if (a(Op::Mul, x, x) == x) out.push_back(x);
    return out;
}

/// True if `subset` is closed under every operation the algebra carries (and
/// contains the point, when there is one).
inline bool is_closed(const FiniteAlgebra& a, const ElementSet& subset) {
    std::vector<char> in(a.size());
    for (Element x : subset) in.at(x) = 1;
    if (a.pointed() && !in[*a.point()]) return false;
    for (Op op : kAllOps) {
        if (!a.has(op)) continue;
        for (Element x : subset)
            for (Element y : subset)
                if (!in[a(op, x, y)]) return false;
    }
    return true;
}

/// Least subset containing `seeds` (and the point) closed under all present operations.
inline ElementSet generated_subalgebra(const FiniteAlgebra& a, const ElementSet& seeds) {
    if (seeds.empty() && !a.pointed())
        throw StructuralError("generated subalgebra needs a seed or a point");
    std::vector<char> in(a.size());
    ElementSet members;
    auto add = [&](Element x) {
        if (x >= a.size()) throw StructuralError("seed " + std::to_string(x) + " out of range");
        if (!in[x]) {
            in[x] = 1;
            members.push_back(x);
        }
    };
    for (Element s : seeds) add(s);
    if (a.pointed()) add(*a.point());
    // members only grows; every new pair involves an index >= done.
    for (std::size_t done = 0; done < members.size(); ++done) {
        Element x = members[done];
        for (std::size_t j = 0; j <= done; ++j) {
            Element y = members[j];
            for (Op op : kAllOps) {
                if (!a.has(op)) continue;
                add(a(op, x, y));
                add(a(op, y, x));
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

/// A closed subset as an algebra of its own, relabelled 0..k-1 in increasing
/// order. Returns the algebra and the embedding (new index -> old element).
inline std::pair<FiniteAlgebra, std::vector<Element>> subalgebra(const FiniteAlgebra& a,
                                                                 const ElementSet& subset) {
    if (subset.empty()) throw StructuralError("empty subalgebra");
    if (!is_closed(a, subset)) throw StructuralError("subset is not closed");
    std::vector<Element> relabel(a.size(), 0);
    for (std::size_t i = 0; i < subset.size(); ++i) relabel[subset[i]] = static_cast<Element>(i);
    std::array<std::optional<Table>, 3> tables;
    for (Op op : kAllOps) {
        if (!a.has(op)) continue;
        tables[static_cast<std::size_t>(op)] = Table::generate(
            subset.size(), [&](Element x, Element y) { return relabel[a(op, subset[x], subset[y])]; });
    }
    std::optional<Element> point;
    if (a.pointed()) point = relabel[*a.point()];
    return {FiniteAlgebra(std::move(*tables[0]), std::move(tables[1]), std::move(tables[2]), point),
            subset};
}

/// Checks that `map` (element of a -> element of b) is a bijective
/// homomorphism for every operation both carry, preserving the point.
inline bool is_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b,
                           std::span<const Element> map) {
    if (a.size() != b.size() || map.size() != a.size() || a.pointed() != b.pointed()) return false;
    std::vector<char> hit(b.size());
    for (Element v : map) {
        if (v >= b.size() || hit[v]) return false;
        hit[v] = 1;
    }
    for (Op op : kAllOps) {
        if (a.has(op) != b.has(op)) return false;
        if (!a.has(op)) continue;
        for (Element x = 0; x < a.size(); ++x)
            for (Element y = 0; y < a.size(); ++y)
                if (map[a(op, x, y)] != b(op, map[x], map[y])) return false;
    }
    return !a.pointed() || map[*a.point()] == *b.point();
}

namespace detail {

// Backtracking isomorphism search. Images of a greedy generating set are
// chosen first; every other image is then forced by closure.
class IsoSearch {
public:
    IsoSearch(const FiniteAlgebra& a, const FiniteAlgebra& b) : a_(a), b_(b) {}

    // Calls `on_found` for every isomorphism until it returns false.
    void run(const std::function<bool(const std::vector<Element>&)>& on_found) {
        if (!compatible()) return;
        const std::size_t n = a_.size();
        std::vector<int> h(n, -1), inv(n, -1);
        std::vector<Element> fresh;
        if (a_.pointed() && !assign(h, inv, *a_.point(), *b_.point(), fresh)) return;
        if (!propagate(h, inv, fresh)) return;
        order_ = generator_order();
        on_found_ = &on_found;
        stop_ = false;
        recurse(h, inv, 0);
    }

private:
    bool compatible() const {
        if (a_.size() != b_.size() || a_.pointed() != b_.pointed()) return false;
        for (Op op : kAllOps)
            if (a_.has(op) != b_.has(op)) return false;
        return idempotents(a_).size() == idempotents(b_).size();
    }

    std::vector<Element> generator_order() const {
        std::vector<Element> gens;
        ElementSet closure;
        if (a_.pointed()) closure = generated_subalgebra(a_, {});
        for (Element x = 0; x < a_.size(); ++x) {
            if (std::binary_search(closure.begin(), closure.end(), x)) continue;
            gens.push_back(x);
            ElementSet seeds = gens;
            std::sort(seeds.begin(), seeds.end());
            closure = generated_subalgebra(a_, seeds);
            if (closure.size() == a_.size()) break;
        }
        return gens;
    }

    bool assign(std::vector<int>& h, std::vector<int>& inv, Element x, Element y,
                std::vector<Element>& fresh) const {
        if (h[x] >= 0) return h[x] == static_cast<int>(y);
        if (inv[y] >= 0) return false;
        if ((a_(Op::Mul, x, x) == x) != (b_(Op::Mul, y, y) == y)) return false;
        h[x] = static_cast<int>(y);
        inv[y] = static_cast<int>(x);
        fresh.push_back(x);
        return true;
    }

    // Closes the partial map under all operations; false on contradiction.
    bool propagate(std::vector<int>& h, std::vector<int>& inv, std::vector<Element> fresh) const {
        std::vector<Element> mapped;
        for (Element x = 0; x < h.size(); ++x)
            if (h[x] >= 0 && std::find(fresh.begin(), fresh.end(), x) == fresh.end())
                mapped.push_back(x);
        while (!fresh.empty()) {
            Element x = fresh.back();
            fresh.pop_back();
            mapped.push_back(x);
            for (Element y : mapped) {
                for (Op op : kAllOps) {
                    if (!a_.has(op)) continue;
                    Element hx = static_cast<Element>(h[x]), hy = static_cast<Element>(h[y]);
                    if (!assign(h, inv, a_(op, x, y), b_(op, hx, hy), fresh)) return false;
                    if (!assign(h, inv, a_(op, y, x), b_(op, hy, hx), fresh)) return false;
                }
            }
        }
        return true;
    }

    void recurse(std::vector<int> h, std::vector<int> inv, std::size_t depth) {
        if (stop_) return;
        std::size_t next = depth;
        while (next < order_.size() && h[order_[next]] >= 0) ++next;
        if (next == order_.size()) {
            for (Element x = 0; x < h.size(); ++x)
                if (h[x] < 0) return;
            std::vector<Element> map(h.begin(), h.end());
            if (is_isomorphism(a_, b_, map) && !(*on_found_)(map)) stop_ = true;
            return;
        }
        Element x = order_[next];
        for (Element y = 0; y < b_.size() && !stop_; ++y) {
            auto h2 = h;
            auto inv2 = inv;
            std::vector<Element> fresh;
            if (!assign(h2, inv2, x, y, fresh)) continue;
            if (!propagate(h2, inv2, fresh)) continue;
            recurse(std::move(h2), std::move(inv2), next + 1);
        }
    }

    const FiniteAlgebra& a_;
    const FiniteAlgebra& b_;
    std::vector<Element> order_;
    const std::function<bool(const std::vector<Element>&)>* on_found_ = nullptr;
    bool stop_ = false;
};

}  // namespace detail

/// An isomorphism a -> b (respecting every operation and the point), if any.
inline std::optional<std::vector<Element>> find_isomorphism(const FiniteAlgebra& a,
                                                            const FiniteAlgebra& b) {
    std::optional<std::vector<Element>> found;
    detail::IsoSearch(a, b).run([&](const std::vector<Element>& m) {
        found = m;
        return false;
    });
    return found;
}

inline constexpr std::size_t kAutomorphismBound = 9;

/// Number of automorphisms; refuses algebras larger than kAutomorphismBound.
inline std::size_t automorphism_count(const FiniteAlgebra& a) {
    if (a.size() > kAutomorphismBound)
        throw RefusalError("automorphism_count is limited to algebras of size <= " +
                           std::to_string(kAutomorphismBound));
    std::size_t count = 0;
    detail::IsoSearch(a, a).run([&](const std::vector<Element>&) {
        ++count;
        return true;
    });
    return count;
}

}  // namespace rpq
