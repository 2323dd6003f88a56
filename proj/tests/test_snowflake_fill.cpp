#include "snowflake/dual_tree.hpp"
#include "snowflake/snowflake_fill.hpp"

#include <doctest.h>

#include <random>

using namespace snowflake;

TEST_SUITE("snowflake_fill") {
    TEST_CASE("cap-off depth") {
        auto p = params_new(6);
        CHECK(cap_off_depth(p, 1, 6) == 1);
        CHECK(cap_off_depth(p, 2, 6) == 1);
        for (int n = 3; n <= 12; ++n) CHECK(cap_off_depth(p, n, 6) == 2);
        CHECK_THROWS_AS(cap_off_depth(p, 0, 6), std::invalid_argument);
    }

    TEST_CASE("branch paths") {
        auto p = params_new(6);
        CHECK(branch_path(p, BranchKind::s_reversed, 2) == snowflake_path(p, 2, 's').inverse());
        CHECK(branch_path(p, BranchKind::t_forward, 1) == snowflake_path(p, 1, 't'));
    }

    TEST_CASE("subdivision of small snowflakes") {
        auto p = params_new(6);
        auto f1 = subdivide_snowflake(p, 1);
        CHECK(f1.diagram.area() == 1);
        CHECK(f1.diagram.mesh(p) == 12);
        CHECK(f1.diagram.count_nontrivial(p) == 0);
        auto f2 = subdivide_snowflake(p, 2);
        CHECK(f2.central_cells == 36);
        CHECK(f2.cap_cells == 4);
        CHECK(f2.diagram.area() == 40);
        CHECK(f2.diagram.chain_matches(p, GroupElement(), f2.loop));
        CHECK_THROWS_AS(subdivide_snowflake(p, 0), std::invalid_argument);
    }

    TEST_CASE("subdivision mesh, triviality and stable cell count") {
        auto p = params_new(6);
        std::size_t area = 0;
        for (int n = 3; n <= 7; ++n) {
            auto f = subdivide_snowflake(p, n);
            INFO("n = ", n);
            std::int64_t half = f.loop.length(p) / 2;
            CHECK(f.cap_depth == 2);
            CHECK(f.diagram.mesh(p) <= half);
            CHECK(f.diagram.count_nontrivial(p) == 0);
            CHECK(f.diagram.chain_matches(p, GroupElement(), f.loop));
            CHECK(f.central_cells == 36);
            CHECK(f.central_cells + f.grid_cells + f.strip_cells + f.cap_cells == f.diagram.area());
            CHECK(f.diagram.area() <= static_cast<std::size_t>(10 * 6 * 6 * 6));
            if (n > 3) CHECK(f.diagram.area() == area);
            area = f.diagram.area();
        }
    }

    TEST_CASE("subdivision at L = 8 and custom Lambda") {
        auto p = params_new(8);
        for (int n = 2; n <= 5; ++n) {
            auto f = subdivide_snowflake(p, n, 4);
            CHECK(f.diagram.count_nontrivial(p) == 0);
            CHECK(f.diagram.chain_matches(p, GroupElement(), f.loop));
        }
    }
}

namespace {

// Brute force: the minimum of f over vertices and a fine sample of each edge.
double brute_min_f(const HnnDualTree& t) {
    double best = 1e300;
    for (std::size_t v = 0; v < t.nodes.size(); ++v) best = std::min(best, central_f_vertex(t, v));
    for (std::size_t e = 0; e < t.edges.size(); ++e)
        for (int k = 1; k < 16; ++k) best = std::min(best, central_f_edge(t, e, k / 16.0));
    return best;
}

}  // namespace

TEST_SUITE("dual_tree") {
    TEST_CASE("snowflake trees") {
        for (int n = 1; n <= 7; ++n) {
            auto t = snowflake_hnn_tree(6, n);
            CHECK(t.nodes.size() == (std::size_t(1) << (n + 2)) - 3);
            CHECK(t.boundary_length() == snowflake_loop(params_new(6), n).length(params_new(6)));
            auto loc = find_central_region(t);
            CHECK_FALSE(loc.on_edge);
            CHECK(loc.vertex == 0);
            CHECK(loc.f <= 0);
            CHECK(loc.f == doctest::Approx(brute_min_f(t)));
        }
        CHECK_THROWS_AS(snowflake_hnn_tree(6, 0), std::invalid_argument);
    }

    TEST_CASE("single-node tree") {
        HnnDualTree t;
        t.add_node("only", 8);
        auto loc = find_central_region(t);
        CHECK_FALSE(loc.on_edge);
        CHECK(loc.vertex == 0);
        CHECK(loc.f == doctest::Approx(-4));
    }

    TEST_CASE("path trees") {
        HnnDualTree t;
        t.add_node("A", 10);
        t.add_node("B", 2);
        t.add_node("C", 10);
        t.add_edge(0, 1, 2, 1);
        t.add_edge(1, 2, 2, 1);
        CHECK(t.boundary_length() == 26);
        auto loc = find_central_region(t);
        CHECK_FALSE(loc.on_edge);
        CHECK(loc.vertex == 1);
        CHECK(loc.f == doctest::Approx(-1));
        t.nodes[0].arc = 12;
        auto loc2 = find_central_region(t);
        CHECK_FALSE(loc2.on_edge);
        CHECK(loc2.vertex == 1);
        CHECK(loc2.f == doctest::Approx(0));
        // Heavy leaf pulls the point onto an edge.
        t.nodes[0].arc = 14;
        t.edges[0].weight = 10;
        auto loc3 = find_central_region(t);
        CHECK(loc3.f <= 0);
        CHECK(loc3.f == doctest::Approx(brute_min_f(t)).epsilon(0.05));
    }

    TEST_CASE("central region minimises f on random trees") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 200; ++trial) {
            HnnDualTree t;
            std::size_t n = 1 + rng() % 12;
            for (std::size_t i = 0; i < n; ++i) t.add_node("v" + std::to_string(i), static_cast<std::int64_t>(rng() % 9));
            for (std::size_t i = 1; i < n; ++i) t.add_edge(rng() % i, i, 2, 1);
            auto loc = find_central_region(t);
            REQUIRE(loc.f <= 1e-9);
            REQUIRE(loc.f <= brute_min_f(t) + 1e-9);
        }
    }

    TEST_CASE("json and dot") {
        auto t = snowflake_hnn_tree(6, 3);
        auto back = HnnDualTree::from_json(t.to_json());
        CHECK(back.to_json() == t.to_json());
        auto dot = t.to_dot();
        CHECK(dot.rfind("graph dual_tree {", 0) == 0);
        CHECK(dot.find("n0 -- n1") != std::string::npos);
        nlohmann::json bad = {{"nodes", {{{"arc", 1}}, {{"arc", 1}}}}, {"edges", nlohmann::json::array()}};
        CHECK_THROWS_AS(HnnDualTree::from_json(bad), std::invalid_argument);
        HnnDualTree t2;
        t2.add_node("a", -1);
        CHECK_THROWS_AS(t2.validate(), std::invalid_argument);
    }
}
