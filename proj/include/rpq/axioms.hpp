#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rpq/algebra.hpp"
#include "rpq/error.hpp"
#include "rpq/term.hpp"

namespace rpq {

struct LabeledIdentity {
    std::string label;
    std::string text;  // as written in the catalog, fully parenthesized
    Identity identity;
};

struct AxiomSystem {
    std::string name;
    std::string description;
    std::vector<LabeledIdentity> identities;

    const LabeledIdentity& at(std::string_view label) const {
        for (const auto& li : identities)
            if (li.label == label) return li;
        throw Error("system " + name + " has no identity labelled " + std::string(label));
    }
    std::vector<Identity> plain() const {
        std::vector<Identity> out;
        for (const auto& li : identities) out.push_back(li.identity);
        return out;
    }
};

namespace detail {

struct CatalogEntry {
    const char* label;
    const char* text;
};

inline AxiomSystem make_system(std::string name, std::string description,
                               std::initializer_list<CatalogEntry> entries) {
    AxiomSystem sys{std::move(name), std::move(description), {}};
    for (const auto& e : entries) {
        for (const auto& prior : sys.identities)
            if (prior.label == e.label) throw InvariantViolation("duplicate label " + prior.label);
        sys.identities.push_back({e.label, e.text, parse_identity(e.text)});
    }
    return sys;
}

inline std::vector<AxiomSystem> build_catalog() {
    std::vector<AxiomSystem> c;
    c.push_back(make_system("Q", "quasigroup axioms", {
        {"Q1", "x\\(x*y) = y"},
        {"Q2", "x*(x\\y) = y"},
        {"Q3", "(x*y)/y = x"},
        {"Q4", "(x/y)*y = x"},
    }));
    c.push_back(make_system("RZ", "right zero semigroup in the quasigroup signature", {
        {"RZ1", "x*y = y"},
        {"RZ2", "x\\y = y"},
        {"RZ3", "x/y = y"},
    }));
    c.push_back(make_system("A", "right product quasigroups", {
        {"A1", "x\\(x*y) = y"},
        {"A2", "x*(x\\y) = y"},
        {"A3", "(x/y)*y = (x*y)/y"},
        {"A4", "((x/y)*y)/z = x/z"},
        {"A5", "((x*y)/z)*z = x*((y/z)*z)"},
    }));
    c.push_back(make_system("B", "alternative axioms for right product quasigroups", {
        {"A1", "x\\(x*y) = y"},
        {"A2", "x*(x\\y) = y"},
        {"A3", "(x/y)*y = (x*y)/y"},
        {"B1", "(x*x)/x = x"},
        {"B2", "((x*y)*(z/u))/(z/u) = x*((y*u)/u)"},
    }));
    c.push_back(make_system("Bp", "left-division duals implied by A1 and A2", {
        {"A3p", "x*(x\\y) = x\\(x*y)"},
        {"B1p", "x\\(x*x) = x"},
        {"B2p", "(x\\y)\\((x\\y)*(z*u)) = (x\\(x*z))*u"},
    }));
    c.push_back(make_system("LL", "right product left loops (with A)", {
        {"LL1", "(x/x)*y = y"},
        {"LL2", "(x/x)*z = (y/y)*z"},
        {"LL3m", "(x*y)/(x*y) = y/y"},
        {"LL3l", "(x\\y)/(x\\y) = y/y"},
        {"LL3r", "(x/y)/(x/y) = y/y"},
    }));
    c.push_back(make_system("RL", "right product right loops (with A)", {
        {"RL1", "(x*(y\\y))*z = x*z"},
        {"RL2", "(x\\x)*z = (y\\y)*z"},
        {"RL3m", "(x*y)\\(x*y) = y\\y"},
        {"RL3l", "(x\\y)\\(x\\y) = y\\y"},
        {"RL3r", "(x/y)\\(x/y) = y\\y"},
    }));
    c.push_back(make_system("L", "right product loops (with A)", {
        {"L1", "(x\\x)*y = y"},
        {"L2", "x*(y/y) = (x*y)/y"},
        {"L3", "x*(y/y) = (x/y)*y"},
        {"L4", "(x\\x)*z = (y/y)*z"},
        {"L5m", "(x*y)\\(x*y) = y/y"},
        {"L5l", "(x\\y)\\(x\\y) = y/y"},
        {"L5r", "(x/y)\\(x/y) = y/y"},
        {"L6m", "(x*y)/(x*y) = y\\y"},
        {"L6l", "(x\\y)/(x\\y) = y\\y"},
        {"L6r", "(x/y)/(x/y) = y\\y"},
    }));
    c.push_back(make_system("pLL", "right product left loops, loop language (with A)", {
        {"PLL", "e*x = x"},
    }));
    c.push_back(make_system("pRL", "right product right loops, loop language (with A)", {
        {"PRL", "(x*e)*y = x*y"},
    }));
    c.push_back(make_system("pL", "right product loops, loop language (with A)", {
        {"PLL", "e*x = x"},
        {"PRL", "(x*e)*y = x*y"},
    }));
    c.push_back(make_system("Qi", "distinguished idempotent (with A)", {
        {"QI", "e*e = e"},
    }));
    c.push_back(make_system("QLL", "left loop, quasigroup language", {
        {"QLL", "x/x = y/y"},
    }));
    c.push_back(make_system("QRL", "right loop, quasigroup language", {
        {"QRL", "x\\x = y\\y"},
    }));
    c.push_back(make_system("QL", "loop, quasigroup language", {
        {"QL", "x\\x = y/y"},
    }));
    c.push_back(make_system("ASSOC", "associativity", {
        {"ASSOC", "x*(y*z) = (x*y)*z"},
    }));
    c.push_back(make_system("RPCOMM", "right product commutativity", {
        {"RPCOMM", "(x*y)*z = (y*x)*z"},
    }));
    c.push_back(make_system("COMM", "commutativity", {
        {"COMM", "x*y = y*x"},
    }));
    return c;
}

}  // namespace detail

/// The built-in identity systems. Parsed once; immutable afterwards.
inline const std::vector<AxiomSystem>& builtin_systems() {
    static const std::vector<AxiomSystem> catalog = detail::build_catalog();
    return catalog;
}

inline const AxiomSystem& system_named(std::string_view name) {
    for (const auto& sys : builtin_systems())
        if (sys.name == name) return sys;
    throw Error("unknown axiom system '" + std::string(name) + "'");
}

/// Looks an identity up by label across the catalog (labels shared between
/// systems always denote the same identity).
inline const LabeledIdentity& identity_labelled(std::string_view label) {
    for (const auto& sys : builtin_systems())
        for (const auto& li : sys.identities)
            if (li.label == label) return li;
    throw Error("unknown identity label '" + std::string(label) + "'");
}

struct SystemReport {
    std::string system;
    std::vector<std::pair<std::string, HoldsResult>> results;

    bool all_hold() const {
        for (const auto& [label, r] : results)
            if (!r.holds) return false;
        return true;
    }
    const HoldsResult& at(std::string_view label) const {
        for (const auto& [l, r] : results)
            if (l == label) return r;
        throw Error("report has no entry " + std::string(label));
    }
};

inline SystemReport check_system(const FiniteAlgebra& a, const AxiomSystem& sys) {
    SystemReport report{sys.name, {}};
    for (const auto& li : sys.identities) report.results.emplace_back(li.label, holds(a, li.identity));
    return report;
}

enum class Variety : std::uint8_t {
    RightQuasigroup,
    LeftQuasigroup,
    Quasigroup,
    RightZero,
    RPQ,
    RPLeftLoop,
    RPRightLoop,
    RPLoop,
    RPQi,
    LeftLoop,
    RightLoop,
    Loop,
    Group,
    RightGroup,
};

inline constexpr std::array<Variety, 14> kAllVarieties{
    Variety::RightQuasigroup, Variety::LeftQuasigroup, Variety::Quasigroup, Variety::RightZero,
    Variety::RPQ,             Variety::RPLeftLoop,     Variety::RPRightLoop, Variety::RPLoop,
    Variety::RPQi,            Variety::LeftLoop,       Variety::RightLoop,   Variety::Loop,
    Variety::Group,           Variety::RightGroup};

constexpr const char* to_string(Variety v) noexcept {
    switch (v) {
        case Variety::RightQuasigroup: return "RightQuasigroup";
        case Variety::LeftQuasigroup: return "LeftQuasigroup";
        case Variety::Quasigroup: return "Quasigroup";
        case Variety::RightZero: return "RightZero";
        case Variety::RPQ: return "RPQ";
        case Variety::RPLeftLoop: return "RPLeftLoop";
        case Variety::RPRightLoop: return "RPRightLoop";
        case Variety::RPLoop: return "RPLoop";
        case Variety::RPQi: return "RPQi";
        case Variety::LeftLoop: return "LeftLoop";
        case Variety::RightLoop: return "RightLoop";
        case Variety::Loop: return "Loop";
        case Variety::Group: return "Group";
        case Variety::RightGroup: return "RightGroup";
    }
    return "?";
}

/// True iff every listed identity holds; false (not an error) when the
/// algebra lacks a table or point that one of them needs.
inline bool satisfies(const FiniteAlgebra& a, const std::vector<std::string_view>& labels) {
    for (auto label : labels) {
        try {
            if (!holds(a, identity_labelled(label).identity)) return false;
        } catch (const MissingTable&) {
            return false;
        } catch (const SignatureError&) {
            return false;
        }
    }
    return true;
}

/// The defining identity labels of each variety. Every label is checked on
/// its own; no variety is inferred from another.
inline std::vector<std::string_view> defining_labels(Variety v) {
    static const std::vector<std::string_view> q{"Q1", "Q2", "Q3", "Q4"};
    static const std::vector<std::string_view> a{"A1", "A2", "A3", "A4", "A5"};
    auto with = [](std::vector<std::string_view> base, std::initializer_list<std::string_view> extra) {
        base.insert(base.end(), extra);
        return base;
    };
    switch (v) {
        case Variety::RightQuasigroup: return {"Q1", "Q2"};
        case Variety::LeftQuasigroup: return {"Q3", "Q4"};
        case Variety::Quasigroup: return q;
        case Variety::RightZero: return {"RZ1", "RZ2", "RZ3"};
        case Variety::RPQ: return a;
        case Variety::RPLeftLoop: return with(a, {"LL1"});
        case Variety::RPRightLoop: return with(a, {"RL1"});
        case Variety::RPLoop: return with(a, {"L1"});
        case Variety::RPQi: return with(a, {"QI"});
        case Variety::LeftLoop: return with(q, {"QLL"});
        case Variety::RightLoop: return with(q, {"QRL"});
        case Variety::Loop: return with(q, {"QL"});
        case Variety::Group: return with(q, {"ASSOC"});
        case Variety::RightGroup: return with(a, {"ASSOC"});
    }
    return {};
}

inline bool is_in(const FiniteAlgebra& a, Variety v) { return satisfies(a, defining_labels(v)); }

inline std::vector<Variety> classify(const FiniteAlgebra& a) {
    std::vector<Variety> out;
    for (Variety v : kAllVarieties)
        if (is_in(a, v)) out.push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// Lifting quasigroup identities to right product varieties

enum class LiftMode : std::uint8_t { MulZ, LDivZ, RDivZ, Mixed, RDivTail, MulTail, Plain };

inline constexpr std::array<LiftMode, 7> kAllLiftModes{LiftMode::MulZ,  LiftMode::LDivZ,
                                                        LiftMode::RDivZ, LiftMode::Mixed,
                                                        LiftMode::RDivTail, LiftMode::MulTail,
                                                        LiftMode::Plain};

constexpr const char* to_string(LiftMode m) noexcept {
    switch (m) {
        case LiftMode::MulZ: return "MUL_Z";
        case LiftMode::LDivZ: return "LDIV_Z";
        case LiftMode::RDivZ: return "RDIV_Z";
        case LiftMode::Mixed: return "MIXED";
        case LiftMode::RDivTail: return "RDIV_TAIL";
        case LiftMode::MulTail: return "MUL_TAIL";
        case LiftMode::Plain: return "PLAIN";
    }
    return "?";
}

/// "z", or "z1", "z2", ... if taken.
inline std::string fresh_variable(const Identity& id) {
    auto vars = signature_of(id).variables;
    auto taken = [&](const std::string& v) { return std::find(vars.begin(), vars.end(), v) != vars.end(); };
    std::string z = "z";
    for (int i = 1; taken(z); ++i) z = "z" + std::to_string(i);
    return z;
}

/// Transforms `s = t` into one of the families that axiomatize the right
/// product variety over the variety `s = t` defines (together with system A).
inline Identity lift_identity(const Identity& id, LiftMode mode) {
    const Term& s = id.lhs;
    const Term& t = id.rhs;
    switch (mode) {
        case LiftMode::MulZ:
        case LiftMode::LDivZ:
        case LiftMode::RDivZ:
        case LiftMode::Mixed: {
            Term z = Term::var(fresh_variable(id));
            if (mode == LiftMode::MulZ) return {s * z, t * z};
            if (mode == LiftMode::LDivZ) return {s % z, t % z};
            if (mode == LiftMode::RDivZ) return {s / z, t / z};
            return {z / (s % z), (z / t) % z};
        }
        case LiftMode::RDivTail: {
            Term ts = Term::var(tail(s));
            return {s, (t * ts) / ts};
        }
        case LiftMode::MulTail: {
            Term ts = Term::var(tail(s));
            return {s, (t / ts) * ts};
        }
        case LiftMode::Plain:
            if (tail(s) != tail(t))
                throw ClassificationError("identity '" + to_string(id) +
                                          "' cannot be used unchanged: tails differ (" + tail(s) +
                                          " vs " + tail(t) + ")");
            return id;
    }
    return id;
}

}  // namespace rpq
