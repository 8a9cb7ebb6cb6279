#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rpq/algebra.hpp"
#include "rpq/error.hpp"

namespace rpq {

struct CorpusEntry {
    std::string name;
    std::string description;
    FiniteAlgebra algebra;
};

namespace detail {

using Rows = std::vector<std::vector<Element>>;

inline FiniteAlgebra quasigroup(const Rows& mul, std::optional<Element> point = std::nullopt) {
    return derive_divisions(Table::from_rows(mul), Require::Both, point);
}

inline FiniteAlgebra explicit_tables(const Rows& mul, const Rows& ldiv, const Rows& rdiv) {
    return FiniteAlgebra(Table::from_rows(mul), Table::from_rows(ldiv), Table::from_rows(rdiv));
}

inline std::vector<CorpusEntry> build_corpus() {
    std::vector<CorpusEntry> c;
    // x*0 = x\0 = 1, x*1 = x\1 = 0; the columns of * are constant, so there is no /.
    c.push_back({"example-1-3", "right quasigroup that is neither a quasigroup nor right zero",
                 FiniteAlgebra(Table::from_rows({{1, 0}, {1, 0}}), Table::from_rows({{1, 0}, {1, 0}}))});
    c.push_back({"example-1-3-rdiv0", "the same right quasigroup with x/y = 0 adjoined",
                 FiniteAlgebra(Table::from_rows({{1, 0}, {1, 0}}), Table::from_rows({{1, 0}, {1, 0}}),
                               Table::from_rows({{0, 0}, {0, 0}}))});
    c.push_back({"noid-left", "quasigroup without idempotents", quasigroup({{1, 0, 2}, {0, 2, 1}, {2, 1, 0}})});
    c.push_back({"noid-right", "idempotent quasigroup", quasigroup({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}})});
    c.push_back({"table2-left", "idempotents do not form a subalgebra",
                 quasigroup({{0, 2, 1, 3}, {3, 1, 2, 0}, {1, 3, 0, 2}, {2, 0, 3, 1}})});
    c.push_back({"table2-right", "idempotents form a nontrivial subalgebra",
                 quasigroup({{0, 2, 1, 3, 5, 4},
                             {2, 1, 0, 5, 4, 3},
                             {1, 0, 2, 4, 3, 5},
                             {3, 5, 4, 0, 2, 1},
                             {5, 4, 3, 2, 1, 0},
                             {4, 3, 5, 1, 0, 2}})});
    c.push_back({"notA3", "satisfies A1, A2, A4, A5 but not A3",
                 explicit_tables({{0, 1}, {0, 1}}, {{0, 1}, {0, 1}}, {{1, 0}, {1, 0}})});
    c.push_back({"notA4", "satisfies A1, A2, A3, A5 but not A4",
                 explicit_tables({{0, 1}, {1, 0}}, {{0, 1}, {1, 0}}, {{1, 0}, {0, 1}})});
    c.push_back({"notA5", "satisfies A1, A2, A3, A4 but not A5",
                 explicit_tables({{1, 0}, {1, 0}}, {{1, 0}, {1, 0}}, {{1, 0}, {1, 0}})});
    for (std::size_t k = 1; k <= 4; ++k)
        c.push_back({"right_zero-" + std::to_string(k), "right zero semigroup of order " + std::to_string(k),
                     right_zero(k)});
    c.push_back({"z3", "cyclic group of order 3", cyclic_group(3)});
    c.push_back({"z3-loop-pointed", "cyclic group of order 3 with its neutral element as point", cyclic_group(3, 0)});
    c.push_back({"z4", "cyclic group of order 4", cyclic_group(4)});
    c.push_back({"klein", "Klein four-group",
                 quasigroup({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}})});
    c.push_back({"z3xR2", "Z3 times the two element right zero semigroup",
                 direct_product(cyclic_group(3), right_zero(2))});
    c.push_back({"z3xR2-pointed", "Z3 x R2 with point (0,0)",
                 direct_product(cyclic_group(3, 0), right_zero(2).with_point(0))});
    c.push_back({"z3xR2-pointed-01", "Z3 x R2 with point (0,1)",
                 direct_product(cyclic_group(3, 0), right_zero(2).with_point(1))});
    c.push_back({"z3xR3", "Z3 times the three element right zero semigroup",
                 direct_product(cyclic_group(3), right_zero(3))});
    c.push_back({"noid-leftxR2", "quasigroup without idempotents times R2",
                 direct_product(quasigroup({{1, 0, 2}, {0, 2, 1}, {2, 1, 0}}), right_zero(2))});
    c.push_back({"table2-leftxR2", "table2-left times R2",
                 direct_product(quasigroup({{0, 2, 1, 3}, {3, 1, 2, 0}, {1, 3, 0, 2}, {2, 0, 3, 1}}),
                                right_zero(2))});
    return c;
}

}  // namespace detail

inline const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> c = detail::build_corpus();
    return c;
}

inline const CorpusEntry& corpus_entry(std::string_view name) {
    for (const auto& e : corpus())
        if (e.name == name) return e;
    throw Error("no corpus entry named " + std::string(name));
}

inline const FiniteAlgebra& corpus_algebra(std::string_view name) { return corpus_entry(name).algebra; }

}  // namespace rpq
