#pragma once

// Cohomology-level model of the holomorphic side: monomial bases of
// H^0(O(a), O(b)) on CP^n (and tensor products over factors), normalized so
// that their pointwise magnitude over P peaks at exactly 1, together with
// their products and dimension counts. Independent of the Morse-side
// geometry; it serves as the oracle for morse_category.

#include "mirror_morse/exact_weight.hpp"
#include "mirror_morse/morse_category.hpp"
#include "mirror_morse/polytope.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mirror_morse {

/// w^I as a section of O(b - a) on one factor.
struct FactorMonomial {
    int source = 0;
    int target = 0;
    MultiIndex index;

    friend bool operator==(const FactorMonomial&, const FactorMonomial&) = default;
};

struct MonomialClass {
    std::vector<FactorMonomial> factors;

    LineObject source() const {
        LineObject L;
        for (const auto& f : factors) L.labels.push_back(f.source);
        return L;
    }
    LineObject target() const {
        LineObject L;
        for (const auto& f : factors) L.labels.push_back(f.target);
        return L;
    }
    MultiIndex index() const {
        MultiIndex I;
        for (const auto& f : factors) I.insert(I.end(), f.index.begin(), f.index.end());
        return I;
    }

    friend bool operator==(const MonomialClass&, const MonomialClass&) = default;
};

struct NormalizedBasis {
    MonomialClass monomial;
    PosExact constant;  // c_{ab;I}, product over factors
};

struct BasisProduct {
    PosExact coefficient;
    MonomialClass result;
};

inline void check_admissible(int a, int b, const MultiIndex& I) {
    if (a > b) throw std::invalid_argument("no degree-0 monomials from O(a) to O(b) when a > b");
    int s = 0;
    for (int i : I) {
        if (i < 0) throw std::invalid_argument("monomial exponents must be non-negative");
        s += i;
    }
    if (s > b - a) throw std::invalid_argument("monomial degree exceeds b - a");
}

/// c_{ab;I} = 1 / max_P |unnormalized e_{ab;I}|. At the maximizer 2I/(b-a)
/// the factors are (d-|I|)/d and i_j/d with d = b - a, so
///   c = ((d-|I|)/d)^{-(d-|I|)/2} * prod (i_j/d)^{-i_j/2},  0^0 = 1.
inline PosExact normalization_constant(int a, int b, const MultiIndex& I) {
    check_admissible(a, b, I);
    const int d = b - a;
    if (d == 0) return PosExact{};
    PosExact c;
    int s = 0;
    for (int i : I) {
        s += i;
        if (i > 0) c *= PosExact::from_rational(make_rational(i, d)).pow(make_rational(-i, 2));
    }
    if (d - s > 0) c *= PosExact::from_rational(make_rational(d - s, d)).pow(make_rational(-(d - s), 2));
    return c;
}

inline NormalizedBasis normalize(const MonomialClass& m) {
    NormalizedBasis out{m, PosExact{}};
    for (const auto& f : m.factors) out.constant *= normalization_constant(f.source, f.target, f.index);
    return out;
}

/// e_u * e_v = coef * e_w with w = (a -> c, I + K). The unnormalized monomials
/// multiply exactly (exponents of both the slack and the x^j/2 factors add), so
/// coef = c_u c_v / c_w.
inline BasisProduct multiply_bases(const NormalizedBasis& u, const NormalizedBasis& v) {
    if (u.monomial.factors.size() != v.monomial.factors.size())
        throw std::invalid_argument("multiply_bases: bases on different spaces");
    MonomialClass w;
    for (std::size_t k = 0; k < u.monomial.factors.size(); ++k) {
        const auto& x = u.monomial.factors[k];
        const auto& y = v.monomial.factors[k];
        if (x.target != y.source) throw std::invalid_argument("multiply_bases: non-composable bases");
        if (x.index.size() != y.index.size()) throw std::invalid_argument("multiply_bases: factor dimension mismatch");
        FactorMonomial z{x.source, y.target, x.index};
        for (std::size_t j = 0; j < z.index.size(); ++j) z.index[j] += y.index[j];
        w.factors.push_back(std::move(z));
    }
    const NormalizedBasis wn = normalize(w);
    return BasisProduct{u.constant * v.constant / wn.constant, std::move(w)};
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

/// dim H^0(O(a), O(b)) on CP^n: polynomials of degree <= b - a in n variables.
inline std::uint64_t hom_dimension(int a, int b, int n) { return a <= b ? binomial(b - a + n, n) : 0; }

/// dim H^n(O(a), O(b)) on CP^n, nonzero only for a - b >= n + 1.
inline std::uint64_t serre_rank(int a, int b, int n) { return a - b >= n + 1 ? binomial(a - b - 1, n) : 0; }

/// Ranks by cohomological degree of Hom(O(a), O(b)) on a product (Kunneth).
inline std::map<int, std::uint64_t> hom_ranks(const ProductPolytope& P, const LineObject& from, const LineObject& to) {
    std::map<int, std::uint64_t> acc{{0, 1}};
    for (std::size_t k = 0; k < P.factor_count(); ++k) {
        const int a = from.labels.at(k), b = to.labels.at(k), n = P.dim(k);
        const std::map<int, std::uint64_t> factor{{0, hom_dimension(a, b, n)}, {n, serre_rank(a, b, n)}};
        std::map<int, std::uint64_t> next;
        for (const auto& [d1, r1] : acc)
            for (const auto& [d2, r2] : factor)
                if (r1 != 0 && r2 != 0) next[d1 + d2] += r1 * r2;
        acc = std::move(next);
    }
    return acc;
}

/// Monomial basis of H^0(O(from), O(to)); empty unless from <= to in every factor.
inline std::vector<MonomialClass> monomial_basis(const ProductPolytope& P, const LineObject& from, const LineObject& to) {
    std::vector<MonomialClass> out{MonomialClass{}};
    for (std::size_t k = 0; k < P.factor_count(); ++k) {
        const int a = from.labels.at(k), b = to.labels.at(k), n = P.dim(k);
        if (a > b) return {};
        std::vector<MultiIndex> exps;
        MultiIndex I(static_cast<std::size_t>(n), 0);
        auto rec = [&](auto&& self, int pos, int budget) -> void {
            if (pos == n) {
                exps.push_back(I);
                return;
            }
            for (int v = 0; v <= budget; ++v) {
                I[static_cast<std::size_t>(pos)] = v;
                self(self, pos + 1, budget - v);
            }
        };
        rec(rec, 0, b - a);
        std::vector<MonomialClass> next;
        for (const auto& head : out)
            for (const auto& e : exps) {
                auto m = head;
                m.factors.push_back(FactorMonomial{a, b, e});
                next.push_back(std::move(m));
            }
        out = std::move(next);
    }
    return out;
}

/// The point where |e_{ab;I}| attains its maximum on one factor; nullopt for
/// a = b (the identity has magnitude 1 everywhere).
inline std::optional<RationalPoint> maximizer(const FactorMonomial& m) {
    if (m.source == m.target) return std::nullopt;
    RationalPoint v;
    for (int i : m.index) v.push_back(make_rational(2LL * i, m.target - m.source));
    return v;
}

/// iota: Mo(P)(L, L') -> H^0: V_{ab;I} |-> e_{ab;I}, P |-> e_{aa;0}.
inline NormalizedBasis iota(const HomGenerator& g) {
    if (g.degree() != 0) throw std::invalid_argument("iota is defined here on degree-0 generators only");
    MonomialClass m;
    for (const auto& p : g.pieces) m.factors.push_back(FactorMonomial{p.source, p.target, p.index});
    return normalize(m);
}

struct ExceptionalReport {
    bool pass = true;
    std::size_t pairs_checked = 0;
    std::vector<std::string> failures;
};

/// Strong exceptionality of an ordered collection, read off the Morse model
/// and cross-checked against the dimension formulas: End = C in degree 0,
/// nothing backwards, nothing outside degree 0.
inline ExceptionalReport exceptional_check(const ProductPolytope& P, const std::vector<LineObject>& collection) {
    ExceptionalReport rep;
    for (std::size_t i = 0; i < collection.size(); ++i)
        for (std::size_t j = 0; j < collection.size(); ++j) {
            ++rep.pairs_checked;
            const auto& from = collection[i];
            const auto& to = collection[j];
            const HomSpace h = hom_space(P, from, to);
            const auto expected = hom_ranks(P, from, to);
            const std::string tag = from.to_string() + "->" + to.to_string();
            std::map<int, std::uint64_t> morse;
            for (const auto& [d, idx] : h.by_degree()) morse[d] = idx.size();
            if (morse != expected) rep.failures.push_back(tag + ": Morse ranks disagree with dimension formulas");
            for (const auto& [d, r] : morse) {
                if (d != 0 && r != 0)
                    rep.failures.push_back(tag + ": rank " + std::to_string(r) + " in degree " + std::to_string(d));
                if (i > j && r != 0) rep.failures.push_back(tag + ": nonzero backward morphisms");
            }
            if (i == j && h.rank(0) != 1) rep.failures.push_back(tag + ": endomorphisms are not one-dimensional");
        }
    rep.pass = rep.failures.empty();
    return rep;
}

}  // namespace mirror_morse
