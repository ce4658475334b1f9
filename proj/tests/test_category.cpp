#include "mirror_morse/dg_model.hpp"
#include "mirror_morse/flow_verifier.hpp"
#include "mirror_morse/morse_category.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mirror_morse;

namespace {

PosExact q(long long n, long long d = 1) { return PosExact::from_rational(make_rational(n, d)); }

HomGenerator gen(const ProductPolytope& P, const LineObject& a, const LineObject& b, const MultiIndex& I) {
    const auto h = hom_space(P, a, b);
    for (const auto& g : h.generators())
        if (g.index() == I) return g;
    throw std::logic_error("test generator not found");
}

HomGenerator gen1(int n, int a, int b, const MultiIndex& I) { return gen(ProductPolytope::simplex(n), LineObject{{a}}, LineObject{{b}}, I); }

}  // namespace

TEST(MorseCategory, HomSpaceOnProducts) {
    const auto P = ProductPolytope::parse("P1xP2");
    const auto h = hom_space(P, LineObject{{0, 0}}, LineObject{{1, 1}});
    EXPECT_EQ(h.size(), 6u);
    EXPECT_EQ(h.rank(0), 6u);
    EXPECT_EQ(h.generators().front().index(), (MultiIndex{0, 0, 0}));
    EXPECT_EQ(h.generators()[3].index(), (MultiIndex{1, 0, 0}));
    EXPECT_THROW(hom_space(P, LineObject{{0}}, LineObject{{1, 1}}), std::invalid_argument);
}

TEST(MorseCategory, WorkedConstants) {
    const auto r1 = compose_supported(gen1(1, 0, 1, {0}), gen1(1, 1, 2, {1}));
    EXPECT_EQ(r1.weight, q(1, 2));
    EXPECT_EQ(r1.generator, gen1(1, 0, 2, {1}));

    const auto r2 = compose_supported(gen1(2, 0, 1, {1, 0}), gen1(2, 1, 2, {0, 1}));
    EXPECT_EQ(r2.weight, q(1, 2));
    EXPECT_EQ(r2.generator, gen1(2, 0, 2, {1, 1}));

    const auto r3 = compose_supported(gen1(1, 0, 2, {1}), gen1(1, 2, 3, {1}));
    EXPECT_EQ(r3.weight, q(4) * q(3).pow(make_rational(-3, 2)));
    EXPECT_EQ(r3.generator.index(), MultiIndex{2});
}

TEST(MorseCategory, IdentitiesAreStrictUnits) {
    const auto P = ProductPolytope::simplex(2);
    const auto id0 = identity(P, LineObject{{0}});
    const auto id2 = identity(P, LineObject{{2}});
    for (const auto& g : hom_space(P, LineObject{{0}}, LineObject{{2}}).generators()) {
        const auto l = compose_supported(id0, g);
        const auto r = compose_supported(g, id2);
        EXPECT_TRUE(l.weight.is_one());
        EXPECT_TRUE(r.weight.is_one());
        EXPECT_EQ(l.generator, g);
        EXPECT_EQ(r.generator, g);
    }
}

TEST(MorseCategory, TreeKindsAndArea) {
    const auto P = ProductPolytope::parse("P1xP1");
    const auto u = gen(P, LineObject{{0, 0}}, LineObject{{1, 0}}, {1, 0});
    const auto v = gen(P, LineObject{{1, 0}}, LineObject{{1, 1}}, {0, 1});
    const auto t = std::get<GradientTree2>(gradient_tree(u, v));
    EXPECT_EQ(t.factors[0].kind, FactorTreeKind::RightUnit);
    EXPECT_EQ(t.factors[1].kind, FactorTreeKind::LeftUnit);
    EXPECT_TRUE(t.area.is_zero());
    EXPECT_EQ(classify_product_case(u, v), ProductCase::C2Prime);
}

TEST(MorseCategory, BackwardCompositionIsUnsupported) {
    const auto g = gen1(1, 2, 0, {-1});
    const auto outcome = compose(gen1(1, 0, 2, {0}), g);
    EXPECT_TRUE(std::holds_alternative<Unsupported>(outcome));
    EXPECT_THROW(compose_supported(gen1(1, 0, 2, {0}), g), std::domain_error);
    EXPECT_THROW(compose(gen1(1, 0, 1, {0}), gen1(1, 2, 3, {0})), std::invalid_argument);
}

TEST(MorseCategory, HigherProductsVanish) {
    const auto r = higher_product({gen1(1, 0, 1, {0}), gen1(1, 1, 2, {1}), gen1(1, 2, 3, {1})});
    EXPECT_TRUE(r.zero);
    EXPECT_EQ(r.target_degree, -1);
    EXPECT_EQ(r.reason, "target degree -1");
    EXPECT_THROW(higher_product({gen1(1, 0, 1, {0}), gen1(1, 1, 2, {1})}), std::invalid_argument);
}

TEST(MorseCategory, ProductCaseLabels) {
    auto c = [](std::vector<int> a, std::vector<int> b, std::vector<int> d) {
        return to_string(classify_product_case(LineObject{a}, LineObject{b}, LineObject{d}));
    };
    EXPECT_EQ(c({0, 0}, {1, 1}, {2, 2}), "(0)");
    EXPECT_EQ(c({0, 0}, {0, 1}, {1, 2}), "(1)");
    EXPECT_EQ(c({0, 0}, {0, 0}, {1, 1}), "(2)");
    EXPECT_EQ(c({0, 0}, {0, 1}, {1, 1}), "(2')");
    EXPECT_EQ(c({0, 0}, {0, 1}, {0, 2}), "(2'')");
    EXPECT_EQ(c({0, 0}, {0, 0}, {0, 1}), "(3)");
    EXPECT_EQ(c({1, 1}, {1, 1}, {1, 1}), "(4)");
    EXPECT_THROW(c({1, 0}, {0, 0}, {1, 1}), std::invalid_argument);
}

TEST(MorseCategory, BoundaryOnExceptionalCollections) {
    const auto rep = boundary_report(ProductPolytope::simplex(2), {LineObject{{0}}, LineObject{{1}}, LineObject{{2}}});
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.generators_checked, 12u);
    EXPECT_FALSE(rep.extension);
}

TEST(MorseCategory, BoundaryFailsOutsideExceptionalRange) {
    // On P1, Hom(O(0), O(2)) has the interior point x = 1.
    const auto rep = boundary_report(ProductPolytope::simplex(1), {LineObject{{0}}, LineObject{{2}}});
    EXPECT_FALSE(rep.pass);
    ASSERT_FALSE(rep.notes.empty());
    EXPECT_NE(rep.notes.front().find("outside every strongly exceptional collection"), std::string::npos);
}

TEST(MorseCategory, AssociativityOnLongChain) {
    const auto rep = associativity_check(ProductPolytope::simplex(2), {LineObject{{0}}, LineObject{{1}}, LineObject{{3}}, LineObject{{4}}});
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.max_discrepancy, 0.0);
    EXPECT_THROW(associativity_check(ProductPolytope::simplex(1), {LineObject{{0}}, LineObject{{2}}, LineObject{{1}}, LineObject{{3}}}),
                 std::invalid_argument);
}

TEST(DgModel, NormalizationConstants) {
    EXPECT_TRUE(normalization_constant(2, 2, {0}).is_one());
    EXPECT_EQ(normalization_constant(0, 1, {0}), PosExact{});
    EXPECT_EQ(normalization_constant(0, 2, {1}), q(2));  // (1/2)^(-1/2) (1/2)^(-1/2)
    EXPECT_EQ(normalization_constant(0, 2, {1, 1}), q(2));
    EXPECT_THROW(normalization_constant(0, 1, {2}), std::invalid_argument);
    EXPECT_THROW(normalization_constant(1, 0, {0}), std::invalid_argument);
}

TEST(DgModel, MultiplicationMatchesWorkedConstants) {
    auto basis = [](int a, int b, MultiIndex I) { return normalize(MonomialClass{{FactorMonomial{a, b, std::move(I)}}}); };
    const auto p = multiply_bases(basis(0, 2, {1}), basis(2, 3, {1}));
    EXPECT_EQ(p.coefficient, q(4) * q(3).pow(make_rational(-3, 2)));
    EXPECT_EQ(p.result.index(), MultiIndex{2});
}

TEST(DgModel, DimensionFormulas) {
    EXPECT_EQ(hom_dimension(0, 2, 2), 6u);
    EXPECT_EQ(hom_dimension(2, 0, 2), 0u);
    EXPECT_EQ(serre_rank(3, 0, 2), 1u);
    EXPECT_EQ(serre_rank(2, 0, 2), 0u);
    const auto r = hom_ranks(ProductPolytope::parse("P1xP1"), LineObject{{0, 2}}, LineObject{{1, 0}});
    EXPECT_EQ(r.size(), 1u);
    EXPECT_EQ(r.at(1), 2u);  // H^0 = 2 on the first factor, H^1 = 1 on the second
    EXPECT_EQ(monomial_basis(ProductPolytope::parse("P1xP2"), LineObject{{0, 0}}, LineObject{{1, 1}}).size(), 6u);
}

TEST(DgModel, ExceptionalCollections) {
    EXPECT_TRUE(exceptional_check(ProductPolytope::simplex(3), {LineObject{{0}}, LineObject{{1}}, LineObject{{2}}, LineObject{{3}}}).pass);
    // Ext^1(O(2), O(0)) = C on CP^1
    EXPECT_FALSE(exceptional_check(ProductPolytope::simplex(1), {LineObject{{0}}, LineObject{{2}}}).pass);
    const auto rev = exceptional_check(ProductPolytope::simplex(1), {LineObject{{3}}, LineObject{{0}}});
    EXPECT_FALSE(rev.pass);
}

// Property: Morse and DG structure constants agree, and both agree with a
// double-precision recomputation of exp(-area) from the magnitudes.
TEST(CategoryProperty, WeightsMatchOracles) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 300; ++t) {
        const int n = std::uniform_int_distribution<int>(1, 3)(rng);
        const int a = std::uniform_int_distribution<int>(0, 2)(rng);
        const int b = a + std::uniform_int_distribution<int>(1, 3)(rng);
        const int c = b + std::uniform_int_distribution<int>(1, 3)(rng);
        const auto L = hom_space(ProductPolytope::simplex(n), LineObject{{a}}, LineObject{{b}}).generators();
        const auto R = hom_space(ProductPolytope::simplex(n), LineObject{{b}}, LineObject{{c}}).generators();
        const auto& u = L[std::uniform_int_distribution<std::size_t>(0, L.size() - 1)(rng)];
        const auto& v = R[std::uniform_int_distribution<std::size_t>(0, R.size() - 1)(rng)];
        const auto s = compose_supported(u, v);
        const auto dg = multiply_bases(iota(u), iota(v));
        EXPECT_EQ(s.weight, dg.coefficient);
        const auto vac = to_doubles(*s.generator.pieces[0].point);
        const double w = magnitude_double(a, b, u.index(), vac) * magnitude_double(b, c, v.index(), vac);
        EXPECT_NEAR(s.weight.to_double(), w, 1e-12);
        EXPECT_LE(s.weight, PosExact{});
    }
}

// Property: associativity on 10^3 random composable triples with n <= 3.
TEST(CategoryProperty, AssociativityOnRandomTriples) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 1000; ++t) {
        const int n = std::uniform_int_distribution<int>(1, 3)(rng);
        const auto P = ProductPolytope::simplex(n);
        std::uniform_int_distribution<int> step(0, 2);
        int labels[4] = {0, 0, 0, 0};
        for (int i = 1; i < 4; ++i) labels[i] = labels[i - 1] + step(rng);
        auto pick = [&](int i) {
            const auto gs = hom_space(P, LineObject{{labels[i]}}, LineObject{{labels[i + 1]}}).generators();
            return gs[std::uniform_int_distribution<std::size_t>(0, gs.size() - 1)(rng)];
        };
        const auto u = pick(0), v = pick(1), w = pick(2);
        const auto uv = compose_supported(u, v);
        const auto vw = compose_supported(v, w);
        const auto left = compose_supported(uv.generator, w);
        const auto right = compose_supported(u, vw.generator);
        EXPECT_EQ(uv.weight * left.weight, vw.weight * right.weight);
        EXPECT_EQ(left.generator, right.generator);
    }
}

// Property: Morse ranks equal the dimension formulas on random product pairs.
TEST(CategoryProperty, RankIdentitiesOnProducts) {
    std::mt19937_64 rng(6);
    const std::vector<std::string> spaces{"P1", "P2", "P3", "P1xP1", "P1xP2", "P2xP2", "P1xP1xP1"};
    for (int t = 0; t < 300; ++t) {
        const auto P = ProductPolytope::parse(spaces[std::uniform_int_distribution<std::size_t>(0, spaces.size() - 1)(rng)]);
        LineObject a, b;
        for (std::size_t k = 0; k < P.factor_count(); ++k) {
            a.labels.push_back(std::uniform_int_distribution<int>(0, 5)(rng));
            b.labels.push_back(std::uniform_int_distribution<int>(0, 5)(rng));
        }
        const auto h = hom_space(P, a, b);
        std::map<int, std::uint64_t> ranks;
        for (const auto& [d, idx] : h.by_degree()) ranks[d] = idx.size();
        EXPECT_EQ(ranks, hom_ranks(P, a, b)) << P.descriptor() << " " << a.to_string() << "->" << b.to_string();
    }
}
