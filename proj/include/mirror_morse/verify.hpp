#pragma once

// Verification suites driven by the `verify` subcommand. Each check returns a
// named pass/fail line with a short detail string.

#include "mirror_morse/dg_model.hpp"
#include "mirror_morse/flow_verifier.hpp"
#include "mirror_morse/json_io.hpp"
#include "mirror_morse/morse_category.hpp"
#include "mirror_morse/structure_table.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace mirror_morse {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

struct NamedCollection {
    std::string name;
    ProductPolytope space;
    std::vector<LineObject> objects;
};

/// (O(0), ..., O(n)) on CP^n for n <= n_max, and the lexicographic
/// collections on CP^1 x CP^1 and CP^1 x CP^2.
inline std::vector<NamedCollection> exceptional_collections(int n_max) {
    std::vector<NamedCollection> out;
    for (int n = 1; n <= n_max; ++n)
        out.push_back({"P" + std::to_string(n), ProductPolytope::simplex(n), lexicographic_collection({{0, n}})});
    out.push_back({"P1xP1", ProductPolytope::parse("P1xP1"), lexicographic_collection({{0, 1}, {0, 1}})});
    out.push_back({"P1xP2", ProductPolytope::parse("P1xP2"), lexicographic_collection({{0, 1}, {0, 2}})});
    return out;
}

/// Every composable chain of generators of the given length inside a collection.
inline void for_each_generator_chain(const ProductPolytope& P, const std::vector<LineObject>& objects, std::size_t length,
                                     const std::function<void(const std::vector<HomGenerator>&)>& visit) {
    const std::size_t N = objects.size();
    std::vector<std::vector<HomSpace>> homs(N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) homs[i].push_back(hom_space(P, objects[i], objects[j]));
    std::vector<HomGenerator> chain;
    auto rec = [&](auto&& self, std::size_t at) -> void {
        if (chain.size() == length) {
            visit(chain);
            return;
        }
        for (std::size_t next = 0; next < N; ++next)
            for (const auto& g : homs[at][next].generators()) {
                chain.push_back(g);
                self(self, next);
                chain.pop_back();
            }
    };
    for (std::size_t start = 0; start < N; ++start) rec(rec, start);
}

inline std::vector<CheckResult> run_exact_suite(int n_max) {
    std::vector<CheckResult> out;

    {
        CheckResult c{"hom ranks", true, ""};
        std::size_t pairs = 0;
        for (int n = 1; n <= n_max; ++n)
            for (int a = 0; a <= n + 2; ++a)
                for (int b = 0; b <= n + 2; ++b) {
                    ++pairs;
                    const auto h = hom_space(ProductPolytope::simplex(n), LineObject{{a}}, LineObject{{b}});
                    if (h.rank(0) != hom_dimension(a, b, n) || h.rank(n) != serre_rank(a, b, n) || h.size() != h.rank(0) + h.rank(n)) {
                        c.pass = false;
                        c.detail += " n=" + std::to_string(n) + " (" + std::to_string(a) + "," + std::to_string(b) + ")";
                    }
                }
        if (c.pass) c.detail = std::to_string(pairs) + " pairs";
        out.push_back(c);
    }

    for (const auto& nc : exceptional_collections(n_max)) {
        const auto ex = exceptional_check(nc.space, nc.objects);
        out.push_back({"strongly exceptional " + nc.name, ex.pass, ex.pass ? std::to_string(ex.pairs_checked) + " pairs" : ex.failures.front()});

        const auto m = to_json(morse_structure_table(nc.space, nc.objects), kDefaultPrecisionBits);
        const auto d = to_json(dg_structure_table(nc.space, nc.objects), kDefaultPrecisionBits);
        const auto diff = diff_tables(m, d);
        out.push_back({"table equivalence " + nc.name, diff.empty(),
                       std::to_string(m["products"].size()) + " products, " + std::to_string(diff.size()) + " differences"});

        CheckResult grading{"grading and segment law " + nc.name, true, ""};
        std::size_t pairs = 0;
        for_each_generator_chain(nc.space, nc.objects, 2, [&](const std::vector<HomGenerator>& ch) {
            const auto sg = compose_supported(ch[0], ch[1]);
            ++pairs;
            MultiIndex expect = ch[0].index();
            const auto K = ch[1].index();
            for (std::size_t j = 0; j < expect.size(); ++j) expect[j] += K[j];
            bool ok = sg.generator.index() == expect && sg.generator.degree() == ch[0].degree() + ch[1].degree();
            for (std::size_t k = 0; k < ch[0].pieces.size(); ++k) {
                const auto& l = ch[0].pieces[k];
                const auto& r = ch[1].pieces[k];
                if (!(l.source < l.target && r.source < r.target)) continue;
                const auto vac = intersection_point(l.source, r.target, sg.generator.pieces[k].index);
                const Rational lam = make_rational(l.target - l.source, r.target - l.source);
                auto p = segment_parameter(*l.point, *r.point, vac);
                ok = ok && p && (*p == lam || *l.point == *r.point);
                for (std::size_t j = 0; j < vac.size(); ++j)
                    ok = ok && vac[j] == lam * (*l.point)[j] + (1 - lam) * (*r.point)[j];
            }
            if (!ok && grading.pass) grading.detail = ch[0].to_string() + " * " + ch[1].to_string();
            grading.pass = grading.pass && ok;
        });
        if (grading.pass) grading.detail = std::to_string(pairs) + " pairs";
        out.push_back(grading);

        const auto br = boundary_report(nc.space, nc.objects);
        out.push_back({"boundary " + nc.name, br.pass,
                       br.pass ? std::to_string(br.generators_checked) + " generators, " + std::to_string(br.trees_checked) + " trees"
                               : br.witnesses.front()});

        CheckResult hp{"higher products " + nc.name, true, ""};
        std::size_t tuples = 0;
        for (std::size_t l : {3u, 4u})
            for_each_generator_chain(nc.space, nc.objects, l, [&](const std::vector<HomGenerator>& ch) {
                ++tuples;
                const auto r = higher_product(ch);
                hp.pass = hp.pass && r.zero && r.target_degree == 2 - static_cast<int>(l);
            });
        hp.detail = std::to_string(tuples) + " tuples";
        out.push_back(hp);
    }

    {
        CheckResult c{"worked constants", true, ""};
        auto gen = [](const ProductPolytope& P, int a, int b, MultiIndex I) {
            for (const auto& g : hom_space(P, LineObject{{a}}, LineObject{{b}}).generators())
                if (g.index() == I) return g;
            throw std::logic_error("generator not found");
        };
        const auto P1 = ProductPolytope::simplex(1), P2 = ProductPolytope::simplex(2);
        const auto r1 = compose_supported(gen(P1, 0, 1, {0}), gen(P1, 1, 2, {1}));
        const auto r2 = compose_supported(gen(P2, 0, 1, {1, 0}), gen(P2, 1, 2, {0, 1}));
        const auto r3 = compose_supported(gen(P1, 0, 2, {1}), gen(P1, 2, 3, {1}));
        c.pass = r1.weight == PosExact::from_rational(make_rational(1, 2)) && r1.generator.index() == MultiIndex{1} &&
                 r2.weight == PosExact::from_rational(make_rational(1, 2)) && r2.generator.index() == MultiIndex{1, 1} &&
                 r3.weight == PosExact::from_integer(4) * PosExact::from_integer(3).pow(make_rational(-3, 2)) &&
                 r3.generator.index() == MultiIndex{2};
        c.detail = r1.weight.to_string() + "; " + r2.weight.to_string() + "; " + r3.weight.to_string();
        out.push_back(c);
    }

    {
        CheckResult c{"associativity", true, ""};
        std::size_t triples = 0, chains = 0;
        for (int n = 1; n <= std::min(n_max, 2); ++n) {
            const auto P = ProductPolytope::simplex(n);
            for (int a = 0; a <= 4; ++a)
                for (int b = a; b <= 4; ++b)
                    for (int cc = b; cc <= 4; ++cc)
                        for (int d = cc; d <= 4; ++d) {
                            const auto rep = associativity_check(P, {LineObject{{a}}, LineObject{{b}}, LineObject{{cc}}, LineObject{{d}}});
                            ++chains;
                            triples += rep.triples_checked;
                            if (!rep.pass && c.pass) c.detail = rep.failures.front();
                            c.pass = c.pass && rep.pass;
                        }
        }
        if (c.pass) c.detail = std::to_string(chains) + " chains, " + std::to_string(triples) + " triples";
        out.push_back(c);
    }
    return out;
}

inline std::vector<CheckResult> run_numeric_suite(int n_max, std::uint64_t seed = 20261016) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);
    const int nmax = std::clamp(n_max, 1, 3);

    {
        CheckResult c{"legendre round trip", true, ""};
        std::uniform_real_distribution<double> coord(-3.0, 3.0);
        std::uniform_int_distribution<int> dim(1, nmax);
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            Vec x(static_cast<std::size_t>(dim(rng)));
            for (auto& v : x) v = coord(rng);
            const auto r = legendre_check(x, 1e-10);
            worst = std::max(worst, r.residuals.at("roundtrip"));
            c.pass = c.pass && r.pass;
        }
        c.detail = "max round-trip error " + sci(worst);
        out.push_back(c);
    }

    {
        CheckResult c{"rk4 vs exact flow", true, ""};
        double worst = 0.0;
        for (int n = 1; n <= nmax; ++n)
            for (int d = 1; d <= 3; ++d)
                for (const auto& fg : hom_indices(0, d, n)) {
                    Vec start(static_cast<std::size_t>(n), 2.0 / (n + 2));
                    const auto s = integrate_pair_flow(0, d, fg.index, start, 5.0, 5000);
                    worst = std::max(worst, s.max_deviation);
                }
        c.pass = worst < 1e-8;
        c.detail = "max deviation " + sci(worst);
        out.push_back(c);
    }

    {
        CheckResult c{"tree meeting points and areas", true, ""};
        std::uniform_int_distribution<int> dim(1, nmax), gap(1, 3);
        double worst_meet = 0.0, worst_area = 0.0;
        int count = 0;
        for (int t = 0; t < 60; ++t) {
            const int n = dim(rng);
            const int a = 0, b = gap(rng), cc = b + gap(rng);
            const auto P = ProductPolytope::simplex(n);
            const auto left = hom_space(P, LineObject{{a}}, LineObject{{b}}).generators();
            const auto right = hom_space(P, LineObject{{b}}, LineObject{{cc}}).generators();
            std::uniform_int_distribution<std::size_t> pl(0, left.size() - 1), pr(0, right.size() - 1);
            const auto r = verify_tree_numeric(left[pl(rng)], right[pr(rng)], 1e-6);
            worst_meet = std::max(worst_meet, r.residuals.at("meeting_point"));
            worst_area = std::max(worst_area, r.residuals.at("area_error"));
            c.pass = c.pass && r.pass;
            ++count;
        }
        c.detail = std::to_string(count) + " triples, meeting " + sci(worst_meet) + ", area " + sci(worst_area);
        out.push_back(c);
    }

    {
        CheckResult c{"grid max at v", true, ""};
        int count = 0;
        for (int n = 1; n <= std::min(nmax, 2); ++n)
            for (int d = 1; d <= 3; ++d)
                for (const auto& fg : hom_indices(0, d, n)) {
                    const auto r = grid_max_check(0, d, fg.index, 0.01, 1e-12);
                    ++count;
                    if (!r.pass && c.pass) c.detail = "failed at d=" + std::to_string(d) + " n=" + std::to_string(n);
                    c.pass = c.pass && r.pass;
                }
        if (c.pass) c.detail = std::to_string(count) + " (a,b,I) cases";
        out.push_back(c);
    }

    {
        CheckResult c{"LG critical points", true, ""};
        double worst = 0.0;
        for (int n = 1; n <= nmax; ++n) {
            const auto r = lg_report(n);
            worst = std::max(worst, r.residuals.at("max_gradient"));
            c.pass = c.pass && r.pass;
        }
        c.detail = "max |grad W| " + sci(worst);
        out.push_back(c);
    }
    return out;
}

}  // namespace mirror_morse
