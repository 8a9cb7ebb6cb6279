// rpq: command-line front end for the right product quasigroup toolkit.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rpq/rpq.hpp"

namespace {

using rpq::Element;
using rpq::Json;

enum Exit : int { kOk = 0, kUsage = 1, kDomain = 2, kVerify = 3 };

struct Globals {
    bool json = false;
    bool no_derive = false;
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string set_text(const rpq::ElementSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + std::to_string(s[i]);
    return out + "}";
}

std::string seq_text(const std::vector<Element>& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + std::to_string(s[i]);
    return out + "]";
}

void print_table(std::ostream& os, const rpq::FiniteAlgebra& a, rpq::Op op) {
    const auto n = a.size();
    std::size_t w = std::to_string(n).size();
    auto pad = [&](const std::string& s) { return std::string(w > s.size() ? w - s.size() : 0, ' ') + s; };
    os << "  " << pad(rpq::op_symbol(op)) << " |";
    for (Element y = 0; y < n; ++y) os << ' ' << pad(std::to_string(y));
    os << "\n  " << std::string(w, '-') << "-+" << std::string((w + 1) * n, '-') << '\n';
    const auto& t = a.table(op);
    for (Element x = 0; x < n; ++x) {
        os << "  " << pad(std::to_string(x)) << " |";
        for (Element y = 0; y < n; ++y) os << ' ' << pad(std::to_string(t(x, y)));
        os << '\n';
    }
}

void print_algebra(std::ostream& os, const rpq::FiniteAlgebra& a) {
    os << "size " << a.size();
    if (a.pointed()) os << ", point " << *a.point();
    os << '\n';
    for (rpq::Op op : rpq::kAllOps) {
        if (!a.has(op)) continue;
        print_table(os, a, op);
    }
}

std::vector<Element> parse_sequence(const std::string& text) {
    std::vector<Element> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = rpq::trim(item);
        if (item.empty()) continue;
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size()) throw rpq::ParseError("not an element: '" + item + "'", 0);
        out.push_back(static_cast<Element>(v));
    }
    if (out.empty()) throw rpq::StructuralError("empty sequence");
    return out;
}

// A token is a catalog label (A1) or a system name (A), which expands to
// all of its identities.
std::vector<rpq::LabeledIdentity> resolve_tokens(const std::vector<std::string>& tokens) {
    std::vector<rpq::LabeledIdentity> out;
    for (const auto& tok : tokens) {
        bool is_system = false;
        for (const auto& sys : rpq::builtin_systems())
            if (sys.name == tok) {
                out.insert(out.end(), sys.identities.begin(), sys.identities.end());
                is_system = true;
            }
        if (!is_system) out.push_back(rpq::identity_labelled(tok));
    }
    return out;
}

rpq::AxiomSystem system_from_file(const std::string& path) {
    rpq::AxiomSystem sys{path, "identities from " + path, {}};
    for (const auto& line : rpq::read_identity_file(path)) {
        std::string label = line.label.empty() ? "line " + std::to_string(line.line) : line.label;
        sys.identities.push_back({label, rpq::to_string(line.identity), line.identity});
    }
    return sys;
}

std::string assignment_text(const rpq::Assignment& a) { return rpq::NotRPQ::describe(a); }

// ---------------------------------------------------------------------------

int cmd_check(const Globals& g, const std::string& file, const std::string& system, const std::string& ids) {
    auto a = rpq::read_algebra(file, !g.no_derive);
    rpq::SystemReport r = ids.empty() ? rpq::check_system(a, rpq::system_named(system))
                                      : rpq::check_system(a, system_from_file(ids));
    if (g.json) {
        emit(rpq::to_json(r));
    } else {
        std::cout << "system " << r.system << '\n';
        for (const auto& [label, h] : r.results) {
            std::cout << "  " << (h.holds ? "ok  " : "FAIL") << ' ' << label;
            if (h.counterexample) std::cout << "  at " << assignment_text(*h.counterexample);
            std::cout << '\n';
        }
    }
    return r.all_hold() ? kOk : kVerify;
}

int cmd_classify(const Globals& g, const std::string& file) {
    auto a = rpq::read_algebra(file, !g.no_derive);
    auto vs = rpq::classify(a);
    if (g.json) {
        Json arr = Json::array();
        for (auto v : vs) arr.push_back(rpq::to_string(v));
        emit(Json{{"varieties", arr}});
    } else {
        if (vs.empty()) std::cout << "(none)\n";
        for (auto v : vs) std::cout << rpq::to_string(v) << '\n';
    }
    return kOk;
}

int cmd_decompose(const Globals& g, const std::string& file) {
    auto a = rpq::read_algebra(file, !g.no_derive);
    auto d = rpq::decompose(a);
    if (g.json) {
        emit(rpq::to_json(d));
        return kOk;
    }
    std::cout << "|S| = " << a.size() << " = " << d.L.size() << " x " << d.R.size() << "\n\nquasigroup factor L\n";
    print_algebra(std::cout, d.L);
    std::cout << "\nright zero factor R: size " << d.R.size() << "\n\nwitness x -> (l, r)\n";
    for (Element x = 0; x < a.size(); ++x)
        std::cout << "  " << x << " -> (" << d.l_class[x] << ", " << d.r_class[x] << ")\n";
    return kOk;
}

void print_structure(const Json& j, const std::string& indent = "") {
    for (const auto& [k, v] : j.items()) {
        if (v.is_array() && !v.empty() && v.front().is_object()) {
            std::cout << indent << k << ":\n";
            for (const auto& item : v) {
                std::cout << indent << "  -\n";
                print_structure(item, indent + "    ");
            }
        } else {
            std::cout << indent << k << ": " << v.dump() << '\n';
        }
    }
}

int cmd_structure(const Globals& g, const std::string& file) {
    auto a = rpq::read_algebra(file, !g.no_derive);
    auto r = a.pointed() ? rpq::pointed_structure_report(a) : rpq::loop_structure_report(a);
    auto j = rpq::to_json(r);
    if (g.json)
        emit(j);
    else
        print_structure(j);
    return r.verified() ? kOk : kVerify;
}

int cmd_solve(const Globals& g, const std::string& file, const std::vector<Element>& right,
              const std::vector<Element>& left, bool idempotent) {
    auto a = rpq::read_algebra(file, !g.no_derive);
    rpq::SolutionSet s;
    if (!left.empty()) {
        Element x = rpq::solve_ax_b(a, left[0], left[1]);
        s = rpq::SolutionSet{left[0], left[1], rpq::Side::Left, {x}, {}, false, std::nullopt};
    } else {
        s = idempotent ? rpq::solve_xa_b_idempotent(a, right[0], right[1]) : rpq::solve_xa_b(a, right[0], right[1]);
    }
    if (g.json) {
        emit(rpq::to_json(s));
        return kOk;
    }
    if (s.side == rpq::Side::Left)
        std::cout << s.a << "*x = " << s.b << ": x = " << s.solutions.front() << '\n';
    else {
        std::cout << "x*" << s.a << " = " << s.b << ": " << s.solutions.size() << " solution(s) " << set_text(s.solutions)
                  << "\ngenerator x = ((b/a)*p)/p";
        if (s.fallback) std::cout << " (no idempotents, all parameters used)";
        std::cout << '\n';
        for (const auto& [p, x] : s.generator_trace) std::cout << "  p = " << p << " -> x = " << x << '\n';
        if (s.simplified_form_agrees)
            std::cout << "(b/a)*e = ((b/a)*e)/e on idempotents: " << (*s.simplified_form_agrees ? "yes" : "no") << '\n';
    }
    return kOk;
}

struct ProductArgs {
    std::string rho, lambda, shape, seq;
    bool reduce = false;
    bool pointed = false;
};

int cmd_product(const Globals& g, const std::string& file, const ProductArgs& p) {
    auto a = rpq::read_algebra(file, !g.no_derive);
    Json j;
    std::vector<Element> seq;
    Element value = 0;
    std::optional<std::vector<Element>> reduced;
    std::optional<Element> reduced_value;
    std::string what;
    if (!p.rho.empty()) {
        seq = parse_sequence(p.rho);
        what = "rho";
        value = rpq::rho(a, seq);
        if (p.reduce) {
            reduced = rpq::rho_reduce(a, seq);
            reduced_value = rpq::rho(a, *reduced);
        }
    } else if (!p.lambda.empty()) {
        seq = parse_sequence(p.lambda);
        what = "lambda";
        value = rpq::lambda(a, seq);
        if (p.reduce) {
            reduced = rpq::lambda_reduce(a, seq);
            reduced_value = rpq::lambda(a, *reduced);
        }
    } else {
        auto shape = rpq::BracketShape::parse(p.shape);
        seq = parse_sequence(p.seq);
        what = shape.to_string();
        value = rpq::eval_shape(a, shape, seq);
        if (p.reduce) {
            reduced = rpq::shape_reduce(a, shape, seq, p.pointed);
            // Reduced entries may be the adjoined unit |S|, so evaluate in S^1.
            const auto ext = p.pointed ? a : rpq::adjoin_unit(a).algebra;
            reduced_value = rpq::eval_shape(ext, shape, *reduced);
        }
    }
    bool agrees = !reduced_value || *reduced_value == value;
    if (g.json) {
        j["product"] = what;
        j["sequence"] = seq;
        j["value"] = value;
        if (reduced) {
            j["reduced"] = *reduced;
            j["reduced_value"] = *reduced_value;
            j["agrees"] = agrees;
        }
        emit(j);
    } else {
        std::cout << what << seq_text(seq) << " = " << value << '\n';
        if (reduced)
            std::cout << "reduced " << seq_text(*reduced) << " = " << *reduced_value << (agrees ? "" : "  MISMATCH")
                      << '\n';
    }
    return agrees ? kOk : kVerify;
}

int cmd_wp(const Globals& g, const std::string& text, const std::string& variety, std::size_t max_n, bool refute) {
    auto id = rpq::parse_identity(text);
    auto sig = rpq::signature_of(id);
    const char* system = variety == "q" ? "Q" : "A";
    Json j{{"identity", rpq::to_string(id)}, {"variety", variety}};
    std::optional<rpq::Refutation> ref;

    if (sig.uses_point || sig.uses_unit) {
        // No decision procedure for the loop language; only look for a counter-model.
        ref = rpq::refute_by_model(id.lhs, id.rhs, max_n, system);
        j["mode"] = "refutation-only";
        j["verdict"] = ref ? "INVALID" : "UNKNOWN";
    } else {
        auto r = rpq::decide_rpq(id.lhs, id.rhs);
        bool valid = variety == "q" ? r.quasigroup_valid : r.valid;
        j["mode"] = "decision";
        j["verdict"] = valid ? "VALID" : "INVALID";
        j["lhs_normal"] = rpq::to_string(r.lhs_normal);
        j["rhs_normal"] = rpq::to_string(r.rhs_normal);
        if (variety != "q") {
            j["lhs_tail"] = r.lhs_tail;
            j["rhs_tail"] = r.rhs_tail;
        }
        if (!valid && refute) ref = rpq::refute_by_model(id.lhs, id.rhs, max_n, system);
    }
    if (ref) {
        j["refutation"] = Json{{"model", rpq::algebra_to_json(ref->model)},
                               {"counterexample", rpq::to_json(ref->counterexample)}};
    }
    if (g.json) {
        emit(j);
        return kOk;
    }
    std::cout << j["verdict"].get<std::string>();
    if (j["mode"] == "refutation-only") std::cout << " (refutation-only mode: no decision procedure with e or 1)";
    std::cout << '\n';
    if (j.contains("lhs_normal"))
        std::cout << "normal forms: " << j["lhs_normal"].get<std::string>() << "  |  "
                  << j["rhs_normal"].get<std::string>() << '\n';
    if (j.contains("lhs_tail"))
        std::cout << "tails: " << j["lhs_tail"].get<std::string>() << "  |  " << j["rhs_tail"].get<std::string>()
                  << '\n';
    if (ref) {
        std::cout << "refuted at " << assignment_text(ref->counterexample) << " in\n";
        print_algebra(std::cout, ref->model);
    } else if (j["verdict"] != "VALID" && refute) {
        std::cout << "no counter-model of size <= " << max_n << '\n';
    }
    return kOk;
}

struct SearchArgs {
    std::size_t n = 2;
    std::vector<std::string> satisfy, violate;
    std::string identities;
    bool all = false;
    bool dedupe = false;
    bool point = false;
    unsigned threads = 1;
    std::size_t limit = 1;
};

int cmd_search(const Globals& g, const SearchArgs& s) {
    rpq::SearchProblem p;
    p.n = s.n;
    for (const auto& li : resolve_tokens(s.satisfy)) p.satisfy.push_back(li.identity);
    if (!s.identities.empty())
        for (const auto& li : system_from_file(s.identities).identities) p.satisfy.push_back(li.identity);
    for (const auto& li : resolve_tokens(s.violate)) p.violate.push_back(li.identity);
    p.with_point = s.point;
    p.limit = s.all ? rpq::kNoLimit : s.limit;
    p.dedupe_iso = s.dedupe;
    p.threads = s.threads;
    auto r = rpq::search(p);
    if (g.json) {
        Json models = Json::array();
        for (const auto& m : r.models) models.push_back(rpq::algebra_to_json(m));
        emit(Json{{"n", s.n}, {"count", r.models.size()}, {"models", models}});
        return kOk;
    }
    std::cout << r.models.size() << " model(s) of size " << s.n << " (" << r.nodes << " nodes)\n";
    for (std::size_t i = 0; i < r.models.size(); ++i) {
        std::cout << "\nmodel " << i + 1 << ": ";
        print_algebra(std::cout, r.models[i]);
    }
    return kOk;
}

int cmd_corpus_verify(const Globals& g) {
    auto checks = rpq::corpus_verify();
    bool ok = true;
    Json arr = Json::array();
    for (const auto& c : checks) {
        ok = ok && c.passed;
        Json e{{"id", c.id}, {"description", c.description}, {"passed", c.passed}};
        if (!c.detail.empty()) e["detail"] = c.detail;
        arr.push_back(e);
    }
    if (g.json) {
        emit(Json{{"all_passed", ok}, {"checks", arr}});
    } else {
        std::size_t w = 0;
        for (const auto& c : checks) w = std::max(w, c.id.size());
        for (const auto& c : checks) {
            std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.id << std::string(w - c.id.size() + 2, ' ')
                      << c.description;
            if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
            std::cout << '\n';
        }
        std::size_t passed = std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
        std::cout << passed << "/" << checks.size() << " passed\n";
    }
    return ok ? kOk : kVerify;
}

int cmd_corpus_list(const Globals& g) {
    if (g.json) {
        Json arr = Json::array();
        for (const auto& e : rpq::corpus())
            arr.push_back(Json{{"name", e.name}, {"size", e.algebra.size()}, {"description", e.description}});
        emit(arr);
        return kOk;
    }
    std::size_t w = 0;
    for (const auto& e : rpq::corpus()) w = std::max(w, e.name.size());
    for (const auto& e : rpq::corpus())
        std::cout << e.name << std::string(w - e.name.size() + 2, ' ') << e.algebra.size() << "  " << e.description
                  << '\n';
    return kOk;
}

int cmd_corpus_export(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream out(fs::path(dir) / name, std::ios::binary);
        if (!out) throw rpq::Error("cannot write " + (fs::path(dir) / name).string());
        out << text;
    };
    for (const auto& e : rpq::corpus()) write(e.name + ".json", rpq::format_algebra(e.algebra));
    write("axioms.txt", rpq::format_catalog());
    return kOk;
}

constexpr const char* kShapeHelp =
    "bracketing of the product, grammar: shape := '.' | '(' shape shape ')'; "
    "each '.' is one factor, e.g. \"((..)(..))\" is (a1*a2)*(a3*a4)";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rpq: right product quasigroups and loops over finite carriers"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json, "machine-readable output");
    app.add_flag("--no-derive", g.no_derive, "do not derive absent division tables when loading");

    std::string file;
    std::string system = "A", ids;
    auto* check = app.add_subcommand("check", "check an algebra against an axiom system");
    check->add_option("file", file, "algebra JSON file")->required();
    check->add_option("--system", system, "catalog system name (A, Q, B, LL, ...)");
    check->add_option("--identities", ids, "identity file to check instead of a catalog system");

    auto* classify = app.add_subcommand("classify", "list the varieties an algebra belongs to");
    classify->add_option("file", file, "algebra JSON file")->required();

    auto* decompose = app.add_subcommand("decompose", "split a right product quasigroup into L x R");
    decompose->add_option("file", file, "algebra JSON file")->required();

    auto* structure = app.add_subcommand("structure", "idempotent, neutral element and splitting report");
    structure->add_option("file", file, "algebra JSON file (pointed algebras get the pointed report)")->required();

    std::vector<Element> right, left;
    bool idem = false;
    auto* solve = app.add_subcommand("solve", "solve x*a = b (--right) or a*x = b (--left)");
    solve->add_option("file", file, "algebra JSON file")->required();
    auto* right_opt = solve->add_option("--right", right, "a b: all x with x*a = b")->expected(2);
    auto* left_opt = solve->add_option("--left", left, "a b: the x with a*x = b")->expected(2);
    right_opt->excludes(left_opt);
    solve->add_flag("--idempotent", idem, "use idempotent parameters only")->needs(right_opt);

    std::string wp_text, variety = "rpq";
    std::size_t max_n = 3;
    bool no_refute = false;
    auto* wp = app.add_subcommand("wp", "decide an identity in right product quasigroups");
    wp->add_option("identity", wp_text, "\"LHS = RHS\"")->required();
    wp->add_option("--variety", variety, "rpq or q")->check(CLI::IsMember({"rpq", "q"}));
    wp->add_option("--max-n", max_n, "largest counter-model size to search")->check(CLI::Range(1, 4));
    wp->add_flag("--no-refute", no_refute, "skip the counter-model search");

    ProductArgs prod;
    auto* product = app.add_subcommand("product", "evaluate and reduce products of sequences");
    product->add_option("file", file, "algebra JSON file")->required();
    auto* rho_opt = product->add_option("--rho", prod.rho, "right-nested product a1*(a2*(...*an)), e.g. 0,1,2");
    auto* lambda_opt = product->add_option("--lambda", prod.lambda, "left-nested product ((a1*a2)*...)*an");
    auto* shape_opt = product->add_option("--shape", prod.shape, kShapeHelp);
    auto* seq_opt = product->add_option("--seq", prod.seq, "sequence for --shape, e.g. 0,1,2,3");
    product->add_flag("--reduce", prod.reduce, "also print the reduced sequence and its value");
    product->add_flag("--pointed", prod.pointed, "with --shape: replace idempotents by the point, not a unit");
    rho_opt->excludes(lambda_opt)->excludes(shape_opt);
    lambda_opt->excludes(shape_opt);
    shape_opt->needs(seq_opt);
    seq_opt->needs(shape_opt);

    SearchArgs sa;
    auto* search = app.add_subcommand("search", "find finite models of identities");
    search->add_option("-n", sa.n, "carrier size (at most 4)")->required();
    search->add_option("--satisfy", sa.satisfy, "labels or system names to satisfy")->delimiter(',');
    search->add_option("--violate", sa.violate, "labels that must each fail")->delimiter(',');
    search->add_option("--identities", sa.identities, "identity file to satisfy as well");
    search->add_flag("--all", sa.all, "all models instead of --limit");
    search->add_flag("--dedupe", sa.dedupe, "one model per isomorphism class");
    search->add_flag("--point", sa.point, "search pointed algebras");
    search->add_option("--threads", sa.threads, "worker threads")->check(CLI::Range(1, 256));
    search->add_option("--limit", sa.limit, "maximum number of models")->check(CLI::PositiveNumber);

    std::string export_dir;
    auto* corpus = app.add_subcommand("corpus", "the bundled tables and identities");
    corpus->require_subcommand(1);
    auto* verify = corpus->add_subcommand("verify", "re-derive every example from the printed tables");
    auto* list = corpus->add_subcommand("list", "list bundled algebras");
    auto* exp = corpus->add_subcommand("export", "write the corpus as JSON files plus axioms.txt");
    exp->add_option("dir", export_dir, "target directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*check) return cmd_check(g, file, system, ids);
        if (*classify) return cmd_classify(g, file);
        if (*decompose) return cmd_decompose(g, file);
        if (*structure) return cmd_structure(g, file);
        if (*solve) {
            if (right.empty() && left.empty()) {
                std::cerr << "solve: one of --right or --left is required\n";
                return kUsage;
            }
            return cmd_solve(g, file, right, left, idem);
        }
        if (*wp) return cmd_wp(g, wp_text, variety, max_n, !no_refute);
        if (*product) {
            if (prod.rho.empty() && prod.lambda.empty() && prod.shape.empty()) {
                std::cerr << "product: one of --rho, --lambda or --shape is required\n";
                return kUsage;
            }
            return cmd_product(g, file, prod);
        }
        if (*search) return cmd_search(g, sa);
        if (*verify) return cmd_corpus_verify(g);
        if (*list) return cmd_corpus_list(g);
        if (*exp) return cmd_corpus_export(export_dir);
    } catch (const rpq::InvariantViolation& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return kVerify;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomain;
    }
    return kUsage;
}
