#include "mirror_morse/flow_verifier.hpp"
#include "mirror_morse/structure_table.hpp"
#include "mirror_morse/svg_plot.hpp"
#include "mirror_morse/verify.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mirror_morse;

namespace {

HomGenerator gen1(int n, int a, int b, const MultiIndex& I) {
    const auto h = hom_space(ProductPolytope::simplex(n), LineObject{{a}}, LineObject{{b}});
    for (const auto& g : h.generators())
        if (g.index() == I) return g;
    throw std::logic_error("test generator not found");
}

}  // namespace

TEST(FlowVerifier, LegendreRoundTrip) {
    const auto r = legendre_check({0.3, -1.2, 0.7}, 1e-10);
    EXPECT_TRUE(r.pass);
    EXPECT_LT(r.residuals.at("roundtrip"), 1e-12);
    EXPECT_GT(r.residuals.at("min_eigenvalue"), 0.0);
    const HessianChart chart(1);
    EXPECT_NEAR(chart.dual({0.0})[0], 1.0, 1e-15);  // midpoint of [0, 2]
}

TEST(FlowVerifier, Rk4MatchesExponentialSolution) {
    const auto s = integrate_pair_flow(0, 2, {1, 0}, {0.9, 0.05}, 1.0, 1000);
    EXPECT_LT(s.max_deviation, 1e-8);
    EXPECT_FALSE(s.truncated);
    EXPECT_EQ(s.points.size(), 1001u);
    const auto out = integrate_pair_flow(0, 3, {0}, {1.9}, 5.0, 5000);
    EXPECT_TRUE(out.truncated);  // expands away from v = 0 and leaves P
    EXPECT_THROW(integrate_pair_flow(2, 1, {0}, {0.5}, 1.0, 10), std::invalid_argument);
}

TEST(FlowVerifier, TreeOfWorkedConstant) {
    const auto r = verify_tree_numeric(gen1(1, 0, 2, {1}), gen1(1, 2, 3, {1}), 1e-6);
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.residuals.at("area_exact"), -std::log(4.0 * std::pow(3.0, -1.5)), 1e-14);
    EXPECT_EQ(r.info.at("on_segment"), true);
    const auto j = to_json(r);
    EXPECT_EQ(j["check"], "tree");
    EXPECT_TRUE(j.contains("params") && j.contains("residuals") && j.contains("pass"));
}

TEST(FlowVerifier, TreeRejectsBackwardPairs) {
    const auto r = verify_tree_numeric(gen1(1, 0, 2, {0}), gen1(1, 2, 0, {-1}), 1e-6);
    EXPECT_FALSE(r.pass);
    EXPECT_TRUE(r.info.contains("unsupported"));
}

TEST(FlowVerifier, GridMaximumAtIntersectionPoint) {
    EXPECT_TRUE(grid_max_check(0, 3, {1, 1}, 0.01, 1e-12).pass);
    const auto r = grid_max_check(0, 2, {1}, 0.01, 1e-12);
    EXPECT_TRUE(r.pass);
    EXPECT_LT(r.residuals.at("argmax_distance"), 1e-12);
}

TEST(FlowVerifier, LgCriticalPoints) {
    for (int n = 1; n <= 3; ++n) {
        const auto pts = lg_critical_points(n);
        ASSERT_EQ(pts.size(), static_cast<std::size_t>(n + 1));
        for (const auto& c : pts) EXPECT_LT(c.gradient_residual, 1e-12);
        EXPECT_TRUE(lg_report(n).pass);
    }
}

TEST(StructureTable, ParsesRanges) {
    const auto r = parse_ranges("0..1, 0..2");
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[1].hi, 2);
    EXPECT_THROW(parse_ranges("2..1"), std::invalid_argument);
    EXPECT_THROW(parse_ranges("0-1"), std::invalid_argument);
    const auto c = lexicographic_collection(r);
    ASSERT_EQ(c.size(), 6u);
    EXPECT_EQ(c[1].labels, (std::vector<int>{0, 1}));
    EXPECT_EQ(c[3].labels, (std::vector<int>{1, 0}));
}

TEST(StructureTable, P1TableShape) {
    const auto P = ProductPolytope::simplex(1);
    const auto coll = lexicographic_collection(parse_ranges("0..1"));
    const auto j = to_json(morse_structure_table(P, coll), 64);
    EXPECT_EQ(j["side"], "morse");
    EXPECT_EQ(j["objects"].size(), 2u);
    EXPECT_EQ(j["homs"].size(), 3u);  // (0,0), (0,1), (1,1)
    EXPECT_EQ(j["homs"][0]["generators"][0]["point"][0], "*");
    EXPECT_EQ(j["homs"][1]["generators"][1]["point"][0], "2");
    EXPECT_EQ(j["homs"][1]["generators"][1]["boundary_faces"][0], "f1:sum=2");
    EXPECT_TRUE(j["products"][0]["case"].is_null());
    EXPECT_TRUE(diff_tables(j, to_json(dg_structure_table(P, coll), 64)).empty());
}

TEST(StructureTable, ProductCasesPopulated) {
    const auto P = ProductPolytope::parse("P1xP1");
    auto cases_of = [&](const std::string& range) {
        const auto j = to_json(morse_structure_table(P, lexicographic_collection(parse_ranges(range))), 64);
        std::set<std::string> cases;
        for (const auto& p : j["products"]) cases.insert(p["case"].get<std::string>());
        return cases;
    };
    // labels 0..1 leave no room for a < b < c in a factor
    EXPECT_EQ(cases_of("0..1,0..1"), (std::set<std::string>{"(2)", "(2')", "(3)", "(4)"}));
    EXPECT_EQ(cases_of("0..2,0..2"), (std::set<std::string>{"(0)", "(1)", "(2)", "(2')", "(2'')", "(3)", "(4)"}));
}

TEST(StructureTable, DiffReportsDifferences) {
    nlohmann::json a{{"side", "morse"}, {"x", {1, 2}}, {"y", "p"}};
    nlohmann::json b{{"side", "dg"}, {"x", {1, 3, 4}}, {"z", 0}};
    const auto d = diff_tables(a, b);
    ASSERT_EQ(d.size(), 4u);
    EXPECT_EQ(d[0]["path"], "/x/1");
    EXPECT_EQ(d[1]["path"], "/x/2");
}

TEST(StructureTable, SerializationIsDeterministic) {
    const auto P = ProductPolytope::simplex(2);
    const auto coll = lexicographic_collection(parse_ranges("0..2"));
    EXPECT_EQ(to_json(morse_structure_table(P, coll), 64).dump(), to_json(morse_structure_table(P, coll), 64).dump());
}

TEST(SvgPlot, TriangleWithPointsAndTrees) {
    const auto svg = plot_triple_svg(ProductPolytope::simplex(2), {LineObject{{0}}, LineObject{{1}}, LineObject{{2}}});
    EXPECT_NE(svg.find("<polygon points=\"0,2 2,2 0,0\""), std::string::npos);
    std::size_t circles = 0;
    for (auto p = svg.find("<circle"); p != std::string::npos; p = svg.find("<circle", p + 1)) ++circles;
    EXPECT_EQ(circles, 12u);  // 3 + 3 + 6 intersection points
    EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
    EXPECT_THROW(plot_triple_svg(ProductPolytope::simplex(3), {LineObject{{0}}, LineObject{{1}}, LineObject{{2}}}), std::invalid_argument);
}

TEST(VerifySuites, ExactSuitePassesForSmallN) {
    for (const auto& c : run_exact_suite(1)) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
}

// Property: random pair flows stay within 1e-8 of the exact solution.
TEST(FlowProperty, RandomFlowsTrackExactSolution) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        const int n = std::uniform_int_distribution<int>(1, 3)(rng);
        const int d = std::uniform_int_distribution<int>(1, 3)(rng);
        const auto gens = hom_indices(0, d, n);
        const auto& g = gens[std::uniform_int_distribution<std::size_t>(0, gens.size() - 1)(rng)];
        Vec start(static_cast<std::size_t>(n));
        double budget = 1.9;
        for (auto& x : start) {
            x = std::uniform_real_distribution<double>(0.0, budget)(rng);
            budget -= x;
        }
        const auto s = integrate_pair_flow(0, d, g.index, start, 2.0, 2000);
        EXPECT_LT(s.max_deviation, 1e-8);
    }
}
