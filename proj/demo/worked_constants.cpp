// Builds Hom spaces on CP^1 and CP^2, composes a few generators and prints
// the exact structure constants next to the monomial-model coefficients.

#include "mirror_morse/mirror_morse.hpp"

#include <iostream>

namespace mm = mirror_morse;

static mm::HomGenerator find(const mm::ProductPolytope& P, int a, int b, const mm::MultiIndex& I) {
    const auto h = mm::hom_space(P, mm::LineObject{{a}}, mm::LineObject{{b}});
    for (const auto& g : h.generators())
        if (g.index() == I) return g;
    throw std::invalid_argument("no such generator");
}

int main() {
    const auto P1 = mm::ProductPolytope::simplex(1);
    const auto P2 = mm::ProductPolytope::simplex(2);
    struct Case {
        const mm::ProductPolytope& P;
        int a, b, c;
        mm::MultiIndex I, K;
    };
    const Case cases[] = {
        {P1, 0, 1, 2, {0}, {1}},
        {P2, 0, 1, 2, {1, 0}, {0, 1}},
        {P1, 0, 2, 3, {1}, {1}},
        {P2, 0, 2, 4, {1, 1}, {0, 2}},
    };
    for (const auto& c : cases) {
        const auto u = find(c.P, c.a, c.b, c.I);
        const auto v = find(c.P, c.b, c.c, c.K);
        const auto s = mm::compose_supported(u, v);
        const auto dg = mm::multiply_bases(mm::iota(u), mm::iota(v));
        std::cout << c.P.descriptor() << ": m2(" << u.to_string() << ", " << v.to_string() << ") = " << s.weight.to_string() << " * "
                  << s.generator.to_string() << "  ~ " << s.weight.approx(64) << "  monomial model: " << dg.coefficient.to_string()
                  << (dg.coefficient == s.weight ? "  (agree)" : "  (DIFFER)") << "\n";
    }
    return 0;
}
