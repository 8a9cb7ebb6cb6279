#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rpq/algebra.hpp"
#include "rpq/error.hpp"

namespace rpq {

/// Immutable syntax tree over variables, the constant `e`, the adjoined
/// unit `1` and the three binary operations. Copies share structure.
class Term {
public:
    enum class Kind : std::uint8_t { Var, Point, Unit, Apply };

    static Term var(std::string name);
    static Term point();
    static Term unit();
    static Term apply(Op op, Term left, Term right);

    Kind kind() const noexcept;
    bool is_var() const noexcept { return kind() == Kind::Var; }
    bool is_apply() const noexcept { return kind() == Kind::Apply; }
    const std::string& name() const noexcept;
    Op op() const noexcept;
    const Term& left() const noexcept;
    const Term& right() const noexcept;

    /// Node count.
    std::size_t size() const noexcept;
    std::size_t depth() const noexcept;

    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct Term::Node {
    Kind kind;
    Op op = Op::Mul;
    std::string name;
    std::optional<Term> left, right;
    std::size_t size = 1;
    std::size_t depth = 1;
};

inline Term Term::var(std::string name) {
    return Term(std::make_shared<const Node>(Node{Kind::Var, Op::Mul, std::move(name), {}, {}, 1, 1}));
}
inline Term Term::point() { return Term(std::make_shared<const Node>(Node{Kind::Point, Op::Mul, "e", {}, {}, 1, 1})); }
inline Term Term::unit() { return Term(std::make_shared<const Node>(Node{Kind::Unit, Op::Mul, "1", {}, {}, 1, 1})); }
inline Term Term::apply(Op op, Term left, Term right) {
    std::size_t size = 1 + left.size() + right.size();
    std::size_t depth = 1 + std::max(left.depth(), right.depth());
    return Term(std::make_shared<const Node>(
        Node{Kind::Apply, op, {}, std::move(left), std::move(right), size, depth}));
}
inline Term::Kind Term::kind() const noexcept { return node_->kind; }
inline const std::string& Term::name() const noexcept { return node_->name; }
inline Op Term::op() const noexcept { return node_->op; }
inline const Term& Term::left() const noexcept { return *node_->left; }
inline const Term& Term::right() const noexcept { return *node_->right; }
inline std::size_t Term::size() const noexcept { return node_->size; }
inline std::size_t Term::depth() const noexcept { return node_->depth; }

inline bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.size() != b.size()) return false;
    switch (a.kind()) {
        case Term::Kind::Var: return a.name() == b.name();
        case Term::Kind::Point:
        case Term::Kind::Unit: return true;
        case Term::Kind::Apply:
            return a.op() == b.op() && a.left() == b.left() && a.right() == b.right();
    }
    return false;
}

inline Term operator*(Term a, Term b) { return Term::apply(Op::Mul, std::move(a), std::move(b)); }
inline Term operator/(Term a, Term b) { return Term::apply(Op::RDiv, std::move(a), std::move(b)); }
/// `a % b` builds `a \ b`; C++ has no backslash operator.
inline Term operator%(Term a, Term b) { return Term::apply(Op::LDiv, std::move(a), std::move(b)); }

struct Identity {
    Term lhs;
    Term rhs;

    friend bool operator==(const Identity&, const Identity&) = default;
};

// ---------------------------------------------------------------------------
// Printing and parsing
//
// `\` and `/` bind tighter than `*`; both levels associate to the left.

namespace detail {

// Every compound operand is parenthesized, so printed terms never depend on
// precedence and read the same as the fully parenthesized corpus files.
inline void print(const Term& t, std::string& out) {
    switch (t.kind()) {
        case Term::Kind::Var: out += t.name(); return;
        case Term::Kind::Point: out += 'e'; return;
        case Term::Kind::Unit: out += '1'; return;
        case Term::Kind::Apply: break;
    }
    auto operand = [&](const Term& c) {
        if (c.is_apply()) out += '(';
        print(c, out);
        if (c.is_apply()) out += ')';
    };
    operand(t.left());
    out += op_symbol(t.op());
    operand(t.right());
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Term term() {
        Term t = factor();
        while (peek() == '*') {
            ++pos_;
            t = Term::apply(Op::Mul, std::move(t), factor());
        }
        return t;
    }

    Identity identity() {
        Term lhs = term();
        if (peek() != '=') fail("expected '='");
        ++pos_;
        Term rhs = term();
        expect_end();
        return {std::move(lhs), std::move(rhs)};
    }

    void expect_end() {
        if (peek() != '\0') fail(std::string("unexpected '") + text_[pos_] + "'");
    }

private:
    Term factor() {
        Term t = primary();
        for (char c = peek(); c == '\\' || c == '/'; c = peek()) {
            ++pos_;
            t = Term::apply(c == '\\' ? Op::LDiv : Op::RDiv, std::move(t), primary());
        }
        return t;
    }

    Term primary() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Term t = term();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return t;
        }
        if (c == '1') {
            ++pos_;
            return Term::unit();
        }
        if (c >= 'a' && c <= 'z') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::islower(static_cast<unsigned char>(text_[pos_])) ||
                    std::isdigit(static_cast<unsigned char>(text_[pos_]))))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            return name == "e" ? Term::point() : Term::var(std::move(name));
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected '") + c + "'");
    }

    char peek() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string to_string(const Term& t) {
    std::string out;
    detail::print(t, out);
    return out;
}

inline std::string to_string(const Identity& id) { return to_string(id.lhs) + " = " + to_string(id.rhs); }

inline Term parse_term(std::string_view text) {
    detail::Parser p(text);
    Term t = p.term();
    p.expect_end();
    return t;
}

inline Identity parse_identity(std::string_view text) { return detail::Parser(text).identity(); }

// ---------------------------------------------------------------------------
// Structural queries

namespace detail {

inline const Term* edge_variable(const Term& t, bool leftmost) {
    if (t.is_var()) return &t;
    if (!t.is_apply()) return nullptr;
    const Term& first = leftmost ? t.left() : t.right();
    const Term& second = leftmost ? t.right() : t.left();
    if (auto* v = edge_variable(first, leftmost)) return v;
    return edge_variable(second, leftmost);
}

inline void collect(const Term& t, std::vector<std::string>& vars, bool& point, bool& unit,
                    std::array<bool, 3>& ops) {
    switch (t.kind()) {
        case Term::Kind::Var:
            if (std::find(vars.begin(), vars.end(), t.name()) == vars.end()) vars.push_back(t.name());
            return;
        case Term::Kind::Point: point = true; return;
        case Term::Kind::Unit: unit = true; return;
        case Term::Kind::Apply:
            ops[static_cast<std::size_t>(t.op())] = true;
            collect(t.left(), vars, point, unit, ops);
            collect(t.right(), vars, point, unit, ops);
    }
}

}  // namespace detail

/// First variable of the term (constants skipped).
inline const std::string& head(const Term& t) {
    if (auto* v = detail::edge_variable(t, true)) return v->name();
    throw NoVariable("term '" + to_string(t) + "' has no variable");
}

/// Last variable of the term (constants skipped).
inline const std::string& tail(const Term& t) {
    if (auto* v = detail::edge_variable(t, false)) return v->name();
    throw NoVariable("term '" + to_string(t) + "' has no variable");
}

/// What a term or identity mentions: variables (first-appearance order),
/// constants, and operations.
struct Signature {
    std::vector<std::string> variables;
    bool uses_point = false;
    bool uses_unit = false;
    std::array<bool, 3> ops{};
};

inline Signature signature_of(const Term& t) {
    Signature s;
    detail::collect(t, s.variables, s.uses_point, s.uses_unit, s.ops);
    return s;
}

inline Signature signature_of(const Identity& id) {
    Signature s;
    detail::collect(id.lhs, s.variables, s.uses_point, s.uses_unit, s.ops);
    detail::collect(id.rhs, s.variables, s.uses_point, s.uses_unit, s.ops);
    return s;
}

/// Variables of an identity in alphabetical order; the assignment order used
/// by `holds`.
inline std::vector<std::string> sorted_variables(const Identity& id) {
    auto vars = signature_of(id).variables;
    std::sort(vars.begin(), vars.end());
    return vars;
}

// ---------------------------------------------------------------------------
// Evaluation

/// Postfix form of a term with variables resolved to slots.
struct CompiledTerm {
    enum class Code : std::uint8_t { Var, Point, Unit, Apply };
    struct Instruction {
        Code code;
        std::uint8_t arg;  // variable slot or Op
    };
    std::vector<Instruction> code;
};

inline CompiledTerm compile(const Term& t, const std::vector<std::string>& slots) {
    CompiledTerm out;
    auto emit = [&](auto&& self, const Term& s) -> void {
        using Code = CompiledTerm::Code;
        switch (s.kind()) {
            case Term::Kind::Var: {
                auto it = std::find(slots.begin(), slots.end(), s.name());
                if (it == slots.end()) throw Error("variable '" + s.name() + "' has no slot");
                out.code.push_back({Code::Var, static_cast<std::uint8_t>(it - slots.begin())});
                return;
            }
            case Term::Kind::Point: out.code.push_back({Code::Point, 0}); return;
            case Term::Kind::Unit: out.code.push_back({Code::Unit, 0}); return;
            case Term::Kind::Apply:
                self(self, s.left());
                self(self, s.right());
                out.code.push_back({Code::Apply, static_cast<std::uint8_t>(s.op())});
        }
    };
    emit(emit, t);
    return out;
}

/// Runs a compiled term. `lookup(op, a, b)` returns the table entry or
/// nullopt when it is unknown, in which case evaluation stops with nullopt.
template <typename Lookup>
std::optional<Element> run(const CompiledTerm& t, const Element* values, std::optional<Element> point,
                           std::optional<Element> unit, Lookup&& lookup) {
    Element buffer[64];
    std::vector<Element> spill;
    Element* stack = buffer;
    if (t.code.size() > 64) {
        spill.resize(t.code.size());
        stack = spill.data();
    }
    std::size_t top = 0;
    for (const auto& ins : t.code) {
        switch (ins.code) {
            case CompiledTerm::Code::Var: stack[top++] = values[ins.arg]; break;
            case CompiledTerm::Code::Point: stack[top++] = *point; break;
            case CompiledTerm::Code::Unit: stack[top++] = *unit; break;
            case CompiledTerm::Code::Apply: {
                Element b = stack[--top];
                Element a = stack[top - 1];
                auto r = lookup(static_cast<Op>(ins.arg), a, b);
                if (!r) return std::nullopt;
                stack[top - 1] = *r;
                break;
            }
        }
    }
    return stack[0];
}

using Assignment = std::map<std::string, Element>;

namespace detail {

inline void require_signature(const FiniteAlgebra& a, const Signature& s, std::string_view what) {
    if (s.uses_unit)
        throw SignatureError("the unit constant 1 cannot appear in " + std::string(what));
    if (s.uses_point && !a.pointed())
        throw SignatureError(std::string(what) + " uses the constant e but the algebra has no point");
    for (Op op : kAllOps)
        if (s.ops[static_cast<std::size_t>(op)] && !a.has(op))
            throw MissingTable(std::string(what) + " uses '" + op_symbol(op) + "' but the algebra has no " +
                               op_name(op) + " table");
}

}  // namespace detail

inline Element eval(const FiniteAlgebra& a, const Term& t, const Assignment& env) {
    auto sig = signature_of(t);
    detail::require_signature(a, sig, "term");
    std::vector<Element> values;
    for (const auto& v : sig.variables) {
        auto it = env.find(v);
        if (it == env.end()) throw Error("variable '" + v + "' is unassigned");
        if (it->second >= a.size()) throw StructuralError("assignment out of range for '" + v + "'");
        values.push_back(it->second);
    }
    auto code = compile(t, sig.variables);
    return *run(code, values.data(), a.point(), std::nullopt,
                [&](Op op, Element x, Element y) -> std::optional<Element> { return a(op, x, y); });
}

struct HoldsResult {
    bool holds = true;
    std::optional<Assignment> counterexample;

    explicit operator bool() const noexcept { return holds; }
};

/// Exhaustive check of an identity over all n^k assignments. The reported
/// counterexample is the first in lexicographic order of the alphabetically
/// sorted variables.
inline HoldsResult holds(const FiniteAlgebra& a, const Identity& id) {
    auto sig = signature_of(id);
    detail::require_signature(a, sig, "identity");
    auto vars = sig.variables;
    std::sort(vars.begin(), vars.end());
    auto lhs = compile(id.lhs, vars);
    auto rhs = compile(id.rhs, vars);
    auto lookup = [&](Op op, Element x, Element y) -> std::optional<Element> { return a(op, x, y); };
    std::vector<Element> values(vars.size(), 0);
    const auto n = static_cast<Element>(a.size());
    while (true) {
        if (*run(lhs, values.data(), a.point(), std::nullopt, lookup) !=
            *run(rhs, values.data(), a.point(), std::nullopt, lookup)) {
            Assignment cex;
            for (std::size_t i = 0; i < vars.size(); ++i) cex[vars[i]] = values[i];
            return {false, std::move(cex)};
        }
        std::size_t i = values.size();
        while (i > 0 && ++values[i - 1] == n) values[--i] = 0;
        if (i == 0) break;
    }
    return {};
}

}  // namespace rpq
