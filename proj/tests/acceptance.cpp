// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria (0 when everything passes).

#include "mirror_morse/mirror_morse.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <sys/wait.h>

using namespace mirror_morse;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void run(int id, const std::string& title, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("[%s] %2d. %s  (%s; %.0f ms)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), ms);
    std::fflush(stdout);
}

// Lattice points I in Z^n with lo <= I_j and sum |I_j| bounded, counted by brute force.
std::uint64_t count_nonneg(int n, int bound) {
    if (bound < 0) return 0;
    std::uint64_t c = 0;
    std::vector<int> I(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n) {
            ++c;
            return;
        }
        for (int v = 0; v <= left; ++v) rec(pos + 1, left - v);
    };
    rec(0, bound);
    return c;
}

std::uint64_t count_negative(int n, int bound) {
    // I_j <= -1 with sum(-I_j) <= bound  <=>  J_j = -I_j - 1 >= 0, sum J <= bound - n
    return count_nonneg(n, bound - n);
}

struct Collection {
    std::string name;
    ProductPolytope P;
    std::vector<LineObject> objects;
};

std::vector<Collection> collections() {
    std::vector<Collection> out;
    for (int n = 1; n <= 3; ++n) {
        std::vector<LineObject> objs;
        for (int a = 0; a <= n; ++a) objs.push_back(LineObject{{a}});
        out.push_back({"P" + std::to_string(n), ProductPolytope::simplex(n), objs});
    }
    auto product = [](const std::string& desc, int n2) {
        std::vector<LineObject> objs;
        for (int a = 0; a <= 1; ++a)
            for (int b = 0; b <= n2; ++b) objs.push_back(LineObject{{a, b}});
        return Collection{desc, ProductPolytope::parse(desc), objs};
    };
    out.push_back(product("P1xP1", 1));
    out.push_back(product("P1xP2", 2));
    return out;
}

// Every composable pair (u, v) of generators in a collection.
template <class F>
void for_each_pair(const Collection& c, F&& visit) {
    for (const auto& a : c.objects)
        for (const auto& b : c.objects) {
            const auto hab = hom_space(c.P, a, b);
            if (hab.empty()) continue;
            for (const auto& cc : c.objects) {
                const auto hbc = hom_space(c.P, b, cc);
                for (const auto& u : hab.generators())
                    for (const auto& v : hbc.generators()) visit(u, v);
            }
        }
}

std::pair<int, std::string> run_command(const std::string& cmd) {
    std::string out;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) return {-1, ""};
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    const int status = ::pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

int main() {
    const auto t_start = std::chrono::steady_clock::now();

    run(1, "hom ranks equal lattice-point counts", [] {
        Outcome o;
        int checked = 0;
        for (int n = 1; n <= 3; ++n)
            for (int a = 0; a <= n + 2; ++a)
                for (int b = 0; b <= n + 2; ++b) {
                    const auto h = hom_space(ProductPolytope::simplex(n), LineObject{{a}}, LineObject{{b}});
                    ++checked;
                    std::uint64_t want0 = a <= b ? count_nonneg(n, b - a) : 0;
                    std::uint64_t wantn = a > b ? count_negative(n, a - b - 1) : 0;
                    if (h.rank(0) != want0 || (n > 0 && a > b && h.rank(n) != wantn) || h.size() != want0 + wantn) {
                        o.pass = false;
                        o.detail += "n=" + std::to_string(n) + " " + std::to_string(a) + "->" + std::to_string(b) + "; ";
                    }
                }
        // frozen spot values: C(b-a+n, n) and C(a-b-1, n)
        o.pass = o.pass && hom_space(ProductPolytope::simplex(3), LineObject{{0}}, LineObject{{5}}).size() == 56 &&
                 hom_space(ProductPolytope::simplex(2), LineObject{{5}}, LineObject{{0}}).rank(2) == 6 &&
                 hom_space(ProductPolytope::simplex(2), LineObject{{2}}, LineObject{{0}}).empty();
        if (o.pass) o.detail = std::to_string(checked) + " (n,a,b) cases";
        return o;
    });

    run(2, "Morse table equals monomial table on exceptional collections", [] {
        Outcome o;
        // frozen product counts: sum over i,j,k of dim Hom(i,j) dim Hom(j,k)
        const std::map<std::string, std::size_t> expected_products{{"P1", 6}, {"P2", 36}, {"P3", 220}, {"P1xP1", 36}, {"P1xP2", 216}};
        for (const auto& c : collections()) {
            const auto m = to_json(morse_structure_table(c.P, c.objects), 64);
            const auto d = to_json(dg_structure_table(c.P, c.objects), 64);
            const auto diff = diff_tables(m, d);
            const bool cases_ok = c.P.factor_count() != 2 || std::all_of(m["products"].begin(), m["products"].end(),
                                                                          [](const nlohmann::json& p) { return p["case"].is_string(); });
            const bool ok = diff.empty() && m["products"].size() == expected_products.at(c.name) && cases_ok;
            o.pass = o.pass && ok;
            o.detail += c.name + ":" + std::to_string(m["products"].size()) + (ok ? "" : "!") + " ";
        }
        o.detail += "products, empty diffs";
        return o;
    });

    run(3, "worked structure constants", [] {
        auto gen = [](int n, int a, int b, const MultiIndex& I) {
            for (const auto& g : hom_space(ProductPolytope::simplex(n), LineObject{{a}}, LineObject{{b}}).generators())
                if (g.index() == I) return g;
            throw std::logic_error("missing generator");
        };
        const auto r1 = compose_supported(gen(1, 0, 1, {0}), gen(1, 1, 2, {1}));
        const auto r2 = compose_supported(gen(2, 0, 1, {1, 0}), gen(2, 1, 2, {0, 1}));
        const auto r3 = compose_supported(gen(1, 0, 2, {1}), gen(1, 2, 3, {1}));
        const PosExact::FactorMap half{{2, make_rational(-1)}};
        const PosExact::FactorMap third{{2, make_rational(2)}, {3, make_rational(-3, 2)}};
        Outcome o;
        o.pass = r1.weight.factors() == half && r1.generator.index() == MultiIndex{1} && r2.weight.factors() == half &&
                 r2.generator.index() == MultiIndex{1, 1} && r3.weight.factors() == third && r3.generator.index() == MultiIndex{2} &&
                 std::abs(r3.weight.to_double() - 0.769800358919501019) < 1e-15;
        o.detail = r1.weight.to_string() + ", " + r2.weight.to_string() + ", " + r3.weight.to_string() + " = " + r3.weight.approx(64);
        return o;
    });

    run(4, "associativity on chains from labels 0..4, n <= 2", [] {
        Outcome o;
        std::size_t triples = 0, chains = 0;
        for (int n = 1; n <= 2; ++n)
            for (int a = 0; a <= 4; ++a)
                for (int b = a; b <= 4; ++b)
                    for (int c = b; c <= 4; ++c)
                        for (int d = c; d <= 4; ++d) {
                            const auto P = ProductPolytope::simplex(n);
                            const std::vector<LineObject> ch{LineObject{{a}}, LineObject{{b}}, LineObject{{c}}, LineObject{{d}}};
                            const auto h01 = hom_space(P, ch[0], ch[1]), h12 = hom_space(P, ch[1], ch[2]), h23 = hom_space(P, ch[2], ch[3]);
                            ++chains;
                            for (const auto& u : h01.generators())
                                for (const auto& v : h12.generators())
                                    for (const auto& w : h23.generators()) {
                                        ++triples;
                                        const auto uv = compose_supported(u, v);
                                        const auto vw = compose_supported(v, w);
                                        const auto l = compose_supported(uv.generator, w);
                                        const auto r = compose_supported(u, vw.generator);
                                        if (uv.weight * l.weight != vw.weight * r.weight || l.generator != r.generator) o.pass = false;
                                    }
                        }
        o.detail = std::to_string(chains) + " chains, " + std::to_string(triples) + " triples";
        return o;
    });

    run(5, "index and degree additivity under m2", [] {
        Outcome o;
        std::size_t pairs = 0;
        for (const auto& c : collections())
            for_each_pair(c, [&](const HomGenerator& u, const HomGenerator& v) {
                ++pairs;
                const auto s = compose_supported(u, v);
                auto I = u.index();
                const auto K = v.index();
                for (std::size_t j = 0; j < I.size(); ++j) I[j] += K[j];
                o.pass = o.pass && s.generator.index() == I && s.generator.degree() == u.degree() + v.degree();
            });
        o.detail = std::to_string(pairs) + " composable pairs";
        return o;
    });

    run(6, "generators and trees lie in the boundary", [] {
        Outcome o;
        std::size_t gens = 0, trees = 0;
        for (const auto& c : collections()) {
            // independent face test: some coordinate 0 or a factor sum equal to 2
            auto touches = [&](const std::vector<std::optional<RationalPoint>>& pieces) {
                for (const auto& p : pieces) {
                    if (!p) continue;
                    Rational s = 0;
                    for (const auto& x : *p) {
                        if (x == 0) return true;
                        s += x;
                    }
                    if (s == 2) return true;
                }
                return false;
            };
            for (const auto& a : c.objects)
                for (const auto& b : c.objects) {
                    if (a == b) continue;
                    for (const auto& g : hom_space(c.P, a, b).generators()) {
                        ++gens;
                        std::vector<std::optional<RationalPoint>> pieces;
                        for (const auto& p : g.pieces) pieces.push_back(p.point);
                        o.pass = o.pass && touches(pieces);
                    }
                }
            for_each_pair(c, [&](const HomGenerator& u, const HomGenerator& v) {
                if (u.source == u.target && v.source == v.target) return;
                ++trees;
                const auto t = std::get<GradientTree2>(gradient_tree(u, v));
                // a tree edge lies in a facet iff both endpoints do; check both edges per factor
                bool in_boundary = false;
                for (const auto& ft : t.factors) {
                    auto endpoint_facets = [](const RationalPoint& x) {
                        std::set<int> f;
                        Rational s = 0;
                        for (std::size_t j = 0; j < x.size(); ++j) {
                            if (x[j] == 0) f.insert(static_cast<int>(j));
                            s += x[j];
                        }
                        if (s == 2) f.insert(-1);
                        return f;
                    };
                    if (!ft.output) continue;
                    const auto fo = endpoint_facets(*ft.output);
                    std::set<int> common = fo;
                    for (const auto& in : {ft.left_input, ft.right_input}) {
                        if (!in) continue;
                        const auto fi = endpoint_facets(*in);
                        std::set<int> keep;
                        for (int f : common)
                            if (fi.count(f)) keep.insert(f);
                        common = keep;
                    }
                    in_boundary = in_boundary || !common.empty();
                }
                o.pass = o.pass && tree_on_boundary(t) && in_boundary;
            });
        }
        o.detail = std::to_string(gens) + " generators, " + std::to_string(trees) + " trees";
        return o;
    });

    run(7, "segment law for meeting points", [] {
        Outcome o;
        std::size_t triples = 0;
        for (const auto& c : collections())
            for_each_pair(c, [&](const HomGenerator& u, const HomGenerator& v) {
                const auto t = std::get<GradientTree2>(gradient_tree(u, v));
                for (std::size_t k = 0; k < t.factors.size(); ++k) {
                    if (t.factors[k].kind != FactorTreeKind::Segment) continue;
                    ++triples;
                    const int a = u.pieces[k].source, b = u.pieces[k].target, cc = v.pieces[k].target;
                    const auto& vab = *u.pieces[k].point;
                    const auto& vbc = *v.pieces[k].point;
                    for (std::size_t j = 0; j < vab.size(); ++j) {
                        const Rational want = (Rational(b - a) * vab[j] + Rational(cc - b) * vbc[j]) / Rational(cc - a);
                        const Rational direct = Rational(2 * (u.pieces[k].index[j] + v.pieces[k].index[j])) / Rational(cc - a);
                        o.pass = o.pass && (*t.factors[k].output)[j] == want && want == direct;
                    }
                }
            });
        o.detail = std::to_string(triples) + " segment triples";
        return o;
    });

    run(8, "higher products vanish by degree", [] {
        Outcome o;
        std::size_t tuples = 0;
        for (const auto& c : collections())
            for (std::size_t l : {3u, 4u})
                for_each_generator_chain(c.P, c.objects, l, [&](const std::vector<HomGenerator>& ch) {
                    ++tuples;
                    int deg = 0;
                    for (const auto& g : ch) deg += g.degree();
                    const int target = deg + 2 - static_cast<int>(l);
                    const auto r = higher_product(ch);
                    o.pass = o.pass && target < 0 && r.zero && r.target_degree == target;
                });
        o.detail = std::to_string(tuples) + " tuples";
        return o;
    });

    run(9, "numerics: Legendre, RK4, trees, grid maximum", [] {
        Outcome o;
        std::mt19937_64 rng(99);
        double leg = 0.0;
        std::uniform_real_distribution<double> coord(-3.0, 3.0);
        for (int t = 0; t < 100; ++t) {
            Vec x(static_cast<std::size_t>(1 + t % 3));
            for (auto& v : x) v = coord(rng);
            const auto r = legendre_check(x, 1e-10);
            leg = std::max(leg, r.residuals.at("roundtrip"));
            o.pass = o.pass && r.pass;
        }
        double rk = 0.0;
        for (int n = 1; n <= 3; ++n)
            for (int d = 1; d <= 3; ++d)
                for (const auto& g : hom_indices(0, d, n)) {
                    Vec start(static_cast<std::size_t>(n), 1.0 / (n + 1));
                    rk = std::max(rk, integrate_pair_flow(0, d, g.index, start, 5.0, 5000).max_deviation);
                }
        o.pass = o.pass && leg < 1e-10 && rk < 1e-8;
        double meet = 0.0, area = 0.0;
        int trees = 0;
        for (int t = 0; t < 60; ++t) {
            const int n = 1 + t % 3;
            const int b = 1 + static_cast<int>(rng() % 3), c = b + 1 + static_cast<int>(rng() % 3);
            const auto P = ProductPolytope::simplex(n);
            const auto L = hom_space(P, LineObject{{0}}, LineObject{{b}}).generators();
            const auto R = hom_space(P, LineObject{{b}}, LineObject{{c}}).generators();
            const auto r = verify_tree_numeric(L[rng() % L.size()], R[rng() % R.size()], 1e-6);
            meet = std::max(meet, r.residuals.at("meeting_point"));
            area = std::max(area, r.residuals.at("area_error"));
            o.pass = o.pass && r.pass;
            ++trees;
        }
        int grids = 0;
        for (int n = 1; n <= 2; ++n)
            for (int d = 1; d <= 3; ++d)
                for (const auto& g : hom_indices(0, d, n)) {
                    ++grids;
                    o.pass = o.pass && grid_max_check(0, d, g.index, 0.01, 1e-12).pass;
                }
        o.detail = "legendre " + sci(leg) + ", rk4 " + sci(rk) + ", " + std::to_string(trees) + " trees meet " + sci(meet) + " area " +
                   sci(area) + ", " + std::to_string(grids) + " grids";
        return o;
    });

    run(10, "LG critical points (section membership reported only)", [] {
        Outcome o;
        double worst = 0.0;
        std::string membership;
        for (int n = 1; n <= 3; ++n)
            for (const auto& c : lg_critical_points(n)) {
                worst = std::max(worst, lg_gradient_residual(c.z));
                membership += std::to_string(c.on_section.at("literal")) + std::to_string(c.on_section.at("barycentric"));
            }
        o.pass = worst < 1e-12;
        o.detail = "max |grad W| " + sci(worst) + "; on-section flags (literal,barycentric) " + membership;
        return o;
    });

    run(11, "CLI determinism and verify exit status", [] {
        Outcome o;
        const std::string cli = MIRROR_MORSE_CLI_PATH;
        const auto a = run_command("'" + cli + "' table --space P2 --range 0..2 --format json");
        const auto b = run_command("'" + cli + "' table --space P2 --range 0..2 --format json");
        const auto v = run_command("'" + cli + "' verify --suite all --n-max 2");
        o.pass = a.first == 0 && b.first == 0 && !a.second.empty() && a.second == b.second && v.first == 0;
        o.detail = std::to_string(a.second.size()) + " identical bytes; verify exit " + std::to_string(v.first);
        return o;
    });

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    std::printf("%d of 11 criteria failed; total %.1f s\n", failures, secs);
    return failures;
}
