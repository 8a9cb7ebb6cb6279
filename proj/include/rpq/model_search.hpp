#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rpq/algebra.hpp"
#include "rpq/axioms.hpp"
#include "rpq/error.hpp"
#include "rpq/term.hpp"

namespace rpq {

inline constexpr std::size_t kNoLimit = std::numeric_limits<std::size_t>::max();
inline constexpr std::size_t kMaxSearchSize = 4;

struct SearchProblem {
    std::size_t n = 2;
    std::vector<Identity> satisfy;
    std::vector<Identity> violate;  // each must fail somewhere in every model
    bool with_point = false;
    std::size_t limit = 1;
    bool dedupe_iso = false;
    unsigned threads = 1;
};

struct SearchResult {
    std::vector<FiniteAlgebra> models;
    std::uint64_t nodes = 0;
};

/// Lexicographic order on (mul, ldiv, rdiv, point); absent tables sort first.
inline bool table_order(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    auto key = [](const FiniteAlgebra& x) {
        return std::make_tuple(x.size(), x.maybe_table(Op::Mul), x.maybe_table(Op::LDiv), x.maybe_table(Op::RDiv),
                               x.point());
    };
    return key(a) < key(b);
}

namespace detail {

// Backtracking over the 3n^2 table cells (plus the point) with forward
// checking on ground instances of the satisfy identities. An instance that
// cannot be evaluated yet waits on the first unknown cell it reads; once that
// cell is fixed the instance is examined again, and every value of a cell it
// waits on that would make it false is removed from the cell's domain.
class ModelSearch {
public:
    explicit ModelSearch(const SearchProblem& p) : p_(p), n_(static_cast<Element>(p.n)) {
        if (p.n == 0) throw StructuralError("search size must be positive");
        if (p.n > kMaxSearchSize)
            throw RefusalError("model search is limited to size <= " + std::to_string(kMaxSearchSize));
        if (p.limit == 0) throw StructuralError("search limit must be positive");
        cells_ = 3 * p.n * p.n + (p.with_point ? 1 : 0);
        for (const auto* list : {&p.satisfy, &p.violate})
            for (const auto& id : *list) {
                auto sig = signature_of(id);
                if (sig.uses_unit) throw SignatureError("the unit constant 1 cannot appear in a search");
                if (sig.uses_point && !p.with_point)
                    throw SignatureError("identity " + to_string(id) + " uses e but the search has no point");
            }
        for (const auto& id : p.satisfy) add_instances(id);
    }

    SearchResult run() {
        State root = initial_state();
        SearchResult result;
        std::vector<int> queue;
        bool ok = true;
        for (std::size_t i = 0; i < instances_.size() && ok; ++i) ok = examine(root, i, queue);
        ok = ok && process(root, queue);
        if (!ok) return result;

        int branch = choose(root);
        if (branch < 0) {
            Local local;
            leaf(root, local);
            merge({std::move(local)}, result);
            return result;
        }
        std::vector<State> tasks;
        for (Element v = 0; v < n_; ++v) {
            if (!(root.dom[branch] & (1u << v))) continue;
            State s = root;
            std::vector<int> q;
            assign(s, branch, v, q);
            if (process(s, q)) tasks.push_back(std::move(s));
        }
        std::vector<Local> locals(tasks.size());
        const unsigned workers = std::max(1u, std::min<unsigned>(p_.threads, static_cast<unsigned>(tasks.size())));
        if (workers == 1) {
            std::size_t found = 0;
            for (std::size_t t = 0; t < tasks.size() && found < p_.limit; ++t) {
                dfs(tasks[t], locals[t]);
                found += locals[t].models.size();
            }
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    for (std::size_t t = next++; t < tasks.size(); t = next++) dfs(tasks[t], locals[t]);
                });
            for (auto& th : pool) th.join();
        }
        merge(std::move(locals), result);
        result.nodes += 1;
        return result;
    }

private:
    static constexpr int kSatisfied = -1;
    static constexpr int kUnexamined = -2;

    struct Instance {
        std::uint32_t identity;
        std::uint32_t offset;  // into values_
    };

    struct Compiled {
        CompiledTerm lhs, rhs;
        bool uses_point;
    };

    struct State {
        std::vector<std::uint16_t> dom;
        std::vector<std::int8_t> val;
        std::vector<int> waiting;  // per instance: cell, kSatisfied or kUnexamined
    };

    struct Local {
        std::vector<FiniteAlgebra> models;
        std::uint64_t nodes = 0;
    };

    void add_instances(const Identity& id) {
        auto vars = sorted_variables(id);
        const auto k = vars.size();
        Compiled c{compile(id.lhs, vars), compile(id.rhs, vars), signature_of(id).uses_point};
        const auto index = static_cast<std::uint32_t>(compiled_.size());
        compiled_.push_back(std::move(c));
        std::vector<Element> values(k, 0);
        while (true) {
            instances_.push_back({index, static_cast<std::uint32_t>(values_.size())});
            values_.insert(values_.end(), values.begin(), values.end());
            std::size_t i = k;
            while (i > 0 && ++values[i - 1] == n_) values[--i] = 0;
            if (i == 0) break;
        }
    }

    State initial_state() const {
        State s;
        const auto full = static_cast<std::uint16_t>((1u << n_) - 1);
        s.dom.assign(cells_, full);
        s.val.assign(cells_, -1);
        s.waiting.assign(instances_.size(), kUnexamined);
        // Every algebra is isomorphic to one whose 0*0 is 0 or 1.
        if (p_.dedupe_iso && n_ > 2) s.dom[0] = 0b11;
        return s;
    }

    int cell(Op op, Element x, Element y) const {
        return static_cast<int>(static_cast<std::size_t>(op) * n_ * n_ + x * n_ + y);
    }
    int point_cell() const { return static_cast<int>(3 * n_ * n_); }

    // 1 = holds, 0 = fails, -1 = waits on *blocked. `override_cell` is read
    // as `override_value` regardless of the state.
    int evaluate(const Instance& inst, const State& s, int override_cell, Element override_value,
                 int* blocked) const {
        const Compiled& c = compiled_[inst.identity];
        auto read = [&](int k) -> int {
            if (k == override_cell) return static_cast<int>(override_value);
            return s.val[k];
        };
        std::optional<Element> point;
        if (c.uses_point) {
            int pv = read(point_cell());
            if (pv < 0) {
                *blocked = point_cell();
                return -1;
            }
            point = static_cast<Element>(pv);
        }
        int stuck = -1;
        auto lookup = [&](Op op, Element x, Element y) -> std::optional<Element> {
            int k = cell(op, x, y);
            int v = read(k);
            if (v < 0) {
                stuck = k;
                return std::nullopt;
            }
            return static_cast<Element>(v);
        };
        const Element* vals = values_.data() + inst.offset;
        auto l = rpq::run(c.lhs, vals, point, std::nullopt, lookup);
        if (!l) {
            *blocked = stuck;
            return -1;
        }
        auto r = rpq::run(c.rhs, vals, point, std::nullopt, lookup);
        if (!r) {
            *blocked = stuck;
            return -1;
        }
        return *l == *r ? 1 : 0;
    }

    void assign(State& s, int k, Element v, std::vector<int>& queue) const {
        s.val[k] = static_cast<std::int8_t>(v);
        s.dom[k] = static_cast<std::uint16_t>(1u << v);
        queue.push_back(k);
    }

    bool examine(State& s, std::size_t i, std::vector<int>& queue) const {
        int b = -1;
        int r = evaluate(instances_[i], s, -1, 0, &b);
        if (r == 1) {
            s.waiting[i] = kSatisfied;
            return true;
        }
        if (r == 0) return false;
        s.waiting[i] = b;
        std::uint16_t keep = 0;
        for (Element v = 0; v < n_; ++v) {
            if (!(s.dom[b] & (1u << v))) continue;
            int b2 = -1;
            if (evaluate(instances_[i], s, b, v, &b2) != 0) keep |= static_cast<std::uint16_t>(1u << v);
        }
        if (keep == 0) return false;
        if (keep != s.dom[b]) {
            s.dom[b] = keep;
            if (std::has_single_bit(keep)) assign(s, b, static_cast<Element>(std::countr_zero(keep)), queue);
        }
        return true;
    }

    bool process(State& s, std::vector<int>& queue) const {
        while (!queue.empty()) {
            int k = queue.back();
            queue.pop_back();
            for (std::size_t i = 0; i < instances_.size(); ++i)
                if (s.waiting[i] == k && !examine(s, i, queue)) return false;
        }
        return true;
    }

    // Smallest domain first; ties go to the lowest cell index, i.e. mul
    // row-major, then ldiv, then rdiv, then the point.
    int choose(const State& s) const {
        int best = -1;
        int best_size = 1 << 30;
        for (std::size_t k = 0; k < cells_; ++k) {
            if (s.val[k] >= 0) continue;
            int size = std::popcount(s.dom[k]);
            if (size < best_size) {
                best = static_cast<int>(k);
                best_size = size;
                if (size == 2) break;
            }
        }
        return best;
    }

    void dfs(State& s, Local& out) const {
        ++out.nodes;
        if (out.models.size() >= p_.limit) return;
        int k = choose(s);
        if (k < 0) {
            leaf(s, out);
            return;
        }
        for (Element v = 0; v < n_ && out.models.size() < p_.limit; ++v) {
            if (!(s.dom[k] & (1u << v))) continue;
            State t = s;
            std::vector<int> q;
            assign(t, k, v, q);
            if (process(t, q)) dfs(t, out);
        }
    }

    FiniteAlgebra build(const State& s) const {
        std::array<Table, 3> t{Table(n_), Table(n_), Table(n_)};
        for (Op op : kAllOps)
            for (Element x = 0; x < n_; ++x)
                for (Element y = 0; y < n_; ++y)
                    t[static_cast<std::size_t>(op)].at(x, y) = static_cast<Element>(s.val[cell(op, x, y)]);
        std::optional<Element> point;
        if (p_.with_point) point = static_cast<Element>(s.val[point_cell()]);
        return FiniteAlgebra(std::move(t[0]), std::move(t[1]), std::move(t[2]), point);
    }

    void leaf(const State& s, Local& out) const {
        FiniteAlgebra a = build(s);
        for (const auto& id : p_.violate)
            if (holds(a, id)) return;
        for (const auto& id : p_.satisfy)
            if (!holds(a, id)) throw InvariantViolation("search produced a model failing " + to_string(id));
        if (p_.dedupe_iso)
            for (const auto& m : out.models)
                if (find_isomorphism(m, a)) return;
        out.models.push_back(std::move(a));
    }

    void merge(std::vector<Local> locals, SearchResult& result) const {
        for (auto& local : locals) {
            result.nodes += local.nodes;
            for (auto& m : local.models) {
                if (result.models.size() >= p_.limit) break;
                bool duplicate = false;
                if (p_.dedupe_iso)
                    for (const auto& kept : result.models)
                        if (find_isomorphism(kept, m)) {
                            duplicate = true;
                            break;
                        }
                if (!duplicate) result.models.push_back(std::move(m));
            }
        }
        std::sort(result.models.begin(), result.models.end(), table_order);
    }

    const SearchProblem& p_;
    Element n_;
    std::size_t cells_ = 0;
    std::vector<Compiled> compiled_;
    std::vector<Instance> instances_;
    std::vector<Element> values_;
};

}  // namespace detail

/// Models of size p.n satisfying every identity in p.satisfy and failing every
/// identity in p.violate, sorted by table order. Refuses sizes above kMaxSearchSize.
inline SearchResult search(const SearchProblem& p) { return detail::ModelSearch(p).run(); }

inline std::vector<FiniteAlgebra> find_models(const SearchProblem& p) { return search(p).models; }

/// Identities by catalog label.
inline std::vector<Identity> identities_labelled(const std::vector<std::string>& labels) {
    std::vector<Identity> out;
    for (const auto& l : labels) out.push_back(identity_labelled(l).identity);
    return out;
}

// ---------------------------------------------------------------------------
// Independence of system (A)

struct IndependenceEntry {
    std::string label;        // the axiom that should fail
    std::size_t max_n = 0;    // sizes 1..max_n searched
    bool expect_model = false;
    std::optional<FiniteAlgebra> model;  // first separating model found, if any
    std::size_t found_at = 0;            // its size
    bool passed = false;
};

/// Separation of each axiom of (A) from the other four. A3-A5 have two
/// element witnesses; A1 and A2 have none of size <= max_n_finite (on a
/// finite carrier A1 makes left translations bijective, which gives A2).
inline std::vector<IndependenceEntry> independence_suite(std::size_t max_n_finite = 3, unsigned threads = 1) {
    std::vector<IndependenceEntry> out;
    const auto& a = system_named("A");
    for (const auto& li : a.identities) {
        IndependenceEntry e;
        e.label = li.label;
        e.expect_model = li.label != "A1" && li.label != "A2";
        e.max_n = e.expect_model ? 2 : max_n_finite;
        for (std::size_t n = 1; n <= e.max_n && !e.model; ++n) {
            SearchProblem p;
            p.n = n;
            for (const auto& other : a.identities)
                if (other.label != li.label) p.satisfy.push_back(other.identity);
            p.violate = {li.identity};
            p.threads = threads;
            auto models = find_models(p);
            if (!models.empty()) {
                e.model = models.front();
                e.found_at = n;
            }
        }
        e.passed = e.model.has_value() == e.expect_model;
        out.push_back(std::move(e));
    }
    return out;
}

// ---------------------------------------------------------------------------
// The integer model x*y = x+y, x/y = x-y, x\y = max(y-x, 0), truncated

struct IntegerCheck {
    std::string label;
    std::size_t checked = 0;     // assignments whose subterm values all stay in range
    std::size_t violations = 0;
    std::optional<std::map<std::string, long>> first_violation;
};

/// Evaluates t over the integers; nullopt if any subterm leaves [lo, hi].
inline std::optional<long> eval_integer_model(const Term& t, const std::map<std::string, long>& env, long lo,
                                              long hi) {
    auto in = [&](long v) -> std::optional<long> {
        if (v < lo || v > hi) return std::nullopt;
        return v;
    };
    switch (t.kind()) {
        case Term::Kind::Var: return in(env.at(t.name()));
        case Term::Kind::Point:
        case Term::Kind::Unit: throw SignatureError("the integer model has no constants");
        case Term::Kind::Apply: break;
    }
    auto x = eval_integer_model(t.left(), env, lo, hi);
    if (!x) return std::nullopt;
    auto y = eval_integer_model(t.right(), env, lo, hi);
    if (!y) return std::nullopt;
    switch (t.op()) {
        case Op::Mul: return in(*x + *y);
        case Op::RDiv: return in(*x - *y);
        case Op::LDiv: return in(std::max(*y - *x, 0L));
    }
    return std::nullopt;
}

/// Checks each axiom of (A) on the integers in [lo, hi], skipping
/// assignments where some subterm value leaves the range.
inline std::vector<IntegerCheck> integer_model_truncation(long lo = -20, long hi = 20) {
    std::vector<IntegerCheck> out;
    for (const auto& li : system_named("A").identities) {
        IntegerCheck c{li.label, 0, 0, std::nullopt};
        auto vars = sorted_variables(li.identity);
        std::vector<long> values(vars.size(), lo);
        while (true) {
            std::map<std::string, long> env;
            for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = values[i];
            auto l = eval_integer_model(li.identity.lhs, env, lo, hi);
            auto r = eval_integer_model(li.identity.rhs, env, lo, hi);
            if (l && r) {
                ++c.checked;
                if (*l != *r) {
                    ++c.violations;
                    if (!c.first_violation) c.first_violation = env;
                }
            }
            std::size_t i = values.size();
            while (i > 0 && ++values[i - 1] > hi) values[--i] = lo;
            if (i == 0) break;
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace rpq
