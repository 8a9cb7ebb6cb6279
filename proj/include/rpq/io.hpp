#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rpq/algebra.hpp"
#include "rpq/axioms.hpp"
#include "rpq/decomposition.hpp"
#include "rpq/equations.hpp"
#include "rpq/error.hpp"
#include "rpq/rewriting.hpp"
#include "rpq/term.hpp"

namespace rpq {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Algebra files: {"size": n, "mul": [[...]], "ldiv": [[...]]?, "rdiv": [[...]]?, "point": k?}

namespace detail {

inline Table table_from_json(const Json& j, std::size_t n, const char* key) {
    if (!j.is_array()) throw StructuralError(std::string(key) + " must be an array of rows");
    std::vector<std::vector<Element>> rows;
    for (const auto& row : j) {
        if (!row.is_array()) throw StructuralError(std::string(key) + " rows must be arrays");
        std::vector<Element> r;
        for (const auto& v : row) {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                throw StructuralError(std::string(key) + " entries must be non-negative integers");
            r.push_back(v.get<Element>());
        }
        rows.push_back(std::move(r));
    }
    if (rows.size() != n)
        throw StructuralError(std::string(key) + " has " + std::to_string(rows.size()) + " rows, expected " +
                              std::to_string(n));
    return Table::from_rows(rows);
}

}  // namespace detail

/// Reads an algebra; absent divisions are derived when the multiplication
/// allows it, unless `derive` is false.
inline FiniteAlgebra algebra_from_json(const Json& j, bool derive = true) {
    if (!j.is_object()) throw StructuralError("algebra must be a JSON object");
    if (!j.contains("size") || !j["size"].is_number_integer()) throw StructuralError("missing integer \"size\"");
    if (!j.contains("mul")) throw StructuralError("missing \"mul\" table");
    long long size = j["size"].get<long long>();
    if (size <= 0) throw StructuralError("empty carrier");
    const auto n = static_cast<std::size_t>(size);
    Table mul = detail::table_from_json(j["mul"], n, "mul");
    std::optional<Table> ldiv, rdiv;
    if (j.contains("ldiv")) ldiv = detail::table_from_json(j["ldiv"], n, "ldiv");
    if (j.contains("rdiv")) rdiv = detail::table_from_json(j["rdiv"], n, "rdiv");
    std::optional<Element> point;
    if (j.contains("point")) {
        if (!j["point"].is_number_integer() || j["point"].get<long long>() < 0)
            throw StructuralError("\"point\" must be a non-negative integer");
        point = j["point"].get<Element>();
    }
    if (derive) {
        // Validate the multiplication first so bad entries are reported as such.
        FiniteAlgebra(mul, std::nullopt, std::nullopt, point);
        if (!ldiv && !detail::first_non_permutation(mul, true)) ldiv = left_division(mul);
        if (!rdiv && !detail::first_non_permutation(mul, false)) rdiv = right_division(mul);
    }
    return FiniteAlgebra(std::move(mul), std::move(ldiv), std::move(rdiv), point);
}

inline FiniteAlgebra parse_algebra(std::string_view text, bool derive = true) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw StructuralError(std::string("invalid JSON: ") + e.what());
    }
    return algebra_from_json(j, derive);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline FiniteAlgebra read_algebra(const std::string& path, bool derive = true) {
    return parse_algebra(read_file(path), derive);
}

inline Json table_to_json(const Table& t) {
    Json rows = Json::array();
    for (const auto& r : t.rows()) rows.push_back(r);
    return rows;
}

inline Json algebra_to_json(const FiniteAlgebra& a) {
    Json j;
    j["size"] = a.size();
    for (Op op : kAllOps)
        if (a.has(op)) j[op_name(op)] = table_to_json(a.table(op));
    if (a.pointed()) j["point"] = *a.point();
    return j;
}

/// The canonical file layout: fixed key order, one table row per line.
inline std::string format_algebra(const FiniteAlgebra& a) {
    std::string out = "{\n  \"size\": " + std::to_string(a.size());
    for (Op op : kAllOps) {
        if (!a.has(op)) continue;
        out += ",\n  \"" + std::string(op_name(op)) + "\": [\n";
        const auto& t = a.table(op);
        for (Element x = 0; x < a.size(); ++x) {
            out += "    [";
            for (Element y = 0; y < a.size(); ++y) out += (y ? ", " : "") + std::to_string(t(x, y));
            out += x + 1 < a.size() ? "],\n" : "]\n";
        }
        out += "  ]";
    }
    if (a.pointed()) out += ",\n  \"point\": " + std::to_string(*a.point());
    out += "\n}\n";
    return out;
}

// ---------------------------------------------------------------------------
// Identity files: one `LHS = RHS` per line; `#` starts a comment. A comment
// after an identity names it (e.g. `x\(x*y) = y  # A1`).

struct IdentityLine {
    std::size_t line = 0;
    std::string label;  // empty when unnamed
    Identity identity;
};

inline std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<IdentityLine> parse_identity_file(std::string_view text) {
    std::vector<IdentityLine> out;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty()) continue;
        std::string label = hash == std::string::npos ? "" : trim(std::string_view(line).substr(hash + 1));
        try {
            out.push_back({line_no, label, parse_identity(body)});
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), e.position());
        }
    }
    return out;
}

inline std::vector<IdentityLine> read_identity_file(const std::string& path) {
    return parse_identity_file(read_file(path));
}

/// Every catalog identity, one per line, labelled, in catalog order.
inline std::string format_catalog() {
    std::string out = "# Named identities, fully parenthesized. Label after '#'.\n";
    std::vector<std::string> seen;
    for (const auto& sys : builtin_systems()) {
        out += "\n# system " + sys.name + ": " + sys.description + "\n";
        for (const auto& li : sys.identities) {
            if (std::find(seen.begin(), seen.end(), li.label) != seen.end()) continue;
            seen.push_back(li.label);
            out += to_string(li.identity) + "  # " + li.label + "\n";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Report serialization

inline Json to_json(const Assignment& a) {
    Json j = Json::object();
    for (const auto& [k, v] : a) j[k] = v;
    return j;
}

inline Json to_json(const SystemReport& r) {
    Json results = Json::array();
    for (const auto& [label, h] : r.results) {
        Json e{{"label", label}, {"holds", h.holds}};
        if (h.counterexample) e["counterexample"] = to_json(*h.counterexample);
        results.push_back(std::move(e));
    }
    return Json{{"system", r.system}, {"all_hold", r.all_hold()}, {"results", std::move(results)}};
}

inline Json to_json(const Decomposition& d) {
    Json witness = Json::array();
    for (Element x = 0; x < d.l_class.size(); ++x) witness.push_back(Json::array({d.l_class[x], d.r_class[x]}));
    return Json{{"L", algebra_to_json(d.L)},
                {"R", algebra_to_json(d.R)},
                {"witness", std::move(witness)},
                {"l_representatives", d.l_representative},
                {"r_representatives", d.r_representative}};
}

inline Json to_json(const StructureReport& r) {
    auto opt = [](const std::optional<bool>& b) -> Json { return b ? Json(*b) : Json(nullptr); };
    Json j;
    j["l_size"] = r.l_size;
    j["r_size"] = r.r_size;
    j["idempotents"] = r.idempotents;
    j["idempotents_closed"] = r.idempotents_closed;
    j["largest_idempotent_subalgebra"] = opt(r.largest_idempotent_subalgebra);
    j["rdiv_squares"] = r.rdiv_squares;
    j["ldiv_squares"] = r.ldiv_squares;
    j["left_neutrals"] = r.left_neutrals;
    j["right_neutrals"] = r.right_neutrals;
    j["factor_idempotents"] = r.factor_idempotents;
    j["factor_left_loop"] = r.factor_left_loop;
    j["factor_right_loop"] = r.factor_right_loop;
    j["factor_loop"] = r.factor_loop;
    j["maximal_left_zero"] = r.maximal_left_zero;
    j["maximal_left_zero_verified"] = r.maximal_left_zero_verified;
    j["maximal_right_zero"] = r.maximal_right_zero;
    j["maximal_right_zero_verified"] = r.maximal_right_zero_verified;
    j["idempotents_right_zero"] = opt(r.idempotents_right_zero);
    j["maximal_subalgebras"] = r.maximal_subalgebras ? Json(*r.maximal_subalgebras) : Json(nullptr);
    j["maximal_subalgebras_match"] = opt(r.maximal_subalgebras_match);
    j["idempotents_are_rdiv_squares"] = opt(r.idempotents_are_rdiv_squares);
    j["idempotents_are_ldiv_squares"] = opt(r.idempotents_are_ldiv_squares);
    j["left_neutrals_are_idempotents"] = opt(r.left_neutrals_are_idempotents);
    j["right_neutral_iff_trivial_r"] = opt(r.right_neutral_iff_trivial_r);
    Json parts = Json::array();
    for (const auto& p : r.parts)
        parts.push_back(Json{{"e", p.e},
                             {"se", p.se},
                             {"equals_factor_slice", p.equals_factor_slice},
                             {"is_subquasigroup", p.is_subquasigroup},
                             {"maximal", p.maximal},
                             {"matches_division_form", opt(p.matches_division_form)},
                             {"is_subloop", opt(p.is_subloop)}});
    j["parts"] = std::move(parts);
    Json splits = Json::array();
    for (const auto& s : r.splits)
        splits.push_back(Json{{"map", s.formula}, {"e", s.e}, {"in_codomain", s.in_codomain},
                              {"isomorphism", s.isomorphism}});
    j["splits"] = std::move(splits);
    if (r.point) {
        j["point"] = *r.point;
        j["point_se"] = *r.point_se;
        j["point_se_largest"] = opt(r.point_se_largest);
        j["point_left_zero_iff_idempotent"] = opt(r.point_left_zero_iff_idempotent);
        j["point_right_zero_iff_factor_idempotent"] = opt(r.point_right_zero_iff_factor_idempotent);
    }
    j["verified"] = r.verified();
    return j;
}

inline Json to_json(const SolutionSet& s) {
    Json trace = Json::array();
    for (const auto& [p, x] : s.generator_trace) trace.push_back(Json{{"p", p}, {"x", x}});
    Json j{{"a", s.a},
           {"b", s.b},
           {"side", s.side == Side::Left ? "left" : "right"},
           {"solutions", s.solutions},
           {"generator_trace", std::move(trace)}};
    if (s.fallback) j["fallback"] = true;
    if (s.simplified_form_agrees) j["simplified_form_agrees"] = *s.simplified_form_agrees;
    return j;
}

inline Json to_json(const WordProblemResult& r) {
    return Json{{"valid", r.valid},
                {"lhs_normal", to_string(r.lhs_normal)},
                {"rhs_normal", to_string(r.rhs_normal)},
                {"lhs_tail", r.lhs_tail},
                {"rhs_tail", r.rhs_tail},
                {"tails_equal", r.tails_equal},
                {"quasigroup_valid", r.quasigroup_valid}};
}

}  // namespace rpq
