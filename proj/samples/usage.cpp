// Walks through the library on Z3 x R2: classification, decomposition,
// solving x*a = b, a word problem and a small model search.

#include <iostream>

#include "rpq/rpq.hpp"

int main() {
    using namespace rpq;

    const FiniteAlgebra s = direct_product(cyclic_group(3), right_zero(2));
    std::cout << "|S| = " << s.size() << "\nvarieties:";
    for (Variety v : classify(s)) std::cout << ' ' << to_string(v);
    std::cout << '\n';

    const Decomposition d = decompose(s);
    std::cout << "L has " << d.L.size() << " elements, R has " << d.R.size() << '\n';
    std::cout << "L isomorphic to Z3: " << (find_isomorphism(d.L, cyclic_group(3)) ? "yes" : "no") << '\n';

    // Elements are encoded as q*|R| + r, so 2 is (1,0) and 0 is (0,0).
    const SolutionSet sol = solve_xa_b(s, 2, 0);
    std::cout << "x*2 = 0 has solutions";
    for (Element x : sol.solutions) std::cout << ' ' << x;
    std::cout << '\n';
    try {
        solve_xa_b(s, 0, 1);
    } catch (const ConsistencyError& e) {
        std::cout << "x*0 = 1: " << e.what() << '\n';
    }

    for (const char* text : {"(x*y*(z/u))/(z/u) = x*((y*u)/u)", "(x*y)/y = x"}) {
        const Identity id = parse_identity(text);
        const auto r = decide_rpq(id.lhs, id.rhs);
        std::cout << text << ": " << (r.valid ? "valid" : "not valid") << " (tails " << r.lhs_tail << ", "
                  << r.rhs_tail << ")\n";
    }

    SearchProblem p;
    p.n = 2;
    p.satisfy = identities_labelled({"A1", "A2", "A4", "A5"});
    p.violate = identities_labelled({"A3"});
    p.limit = kNoLimit;
    std::cout << find_models(p).size() << " two-element models satisfy A1, A2, A4, A5 but not A3\n";
}
