#include "polygon_gen.hpp"
#include "snowflake/filling.hpp"

#include <doctest.h>

using namespace snowflake;

namespace {

std::size_t count_tag(const Diagram& d, const std::string& prefix) {
    std::size_t n = 0;
    for (const auto& c : d.cells)
        if (c.tag.rfind(prefix, 0) == 0) ++n;
    return n;
}

FillResult fill_case(const GroupParams& p, const testing::PolygonCase& c, FillBounds& b) {
    const auto& poly = c.polygon;
    switch (poly.kind) {
        case PolygonKind::bigon:
            b = bigon_bounds(p, poly.D, c.Lambda, c.E);
            return fill_bigon(p, poly, c.given[0], c.Lambda, c.E);
        case PolygonKind::triangle:
            b = triangle_bounds(p, poly.D, c.Lambda, c.E);
            return fill_triangle(p, poly, c.given[0], c.Lambda, c.E);
        case PolygonKind::diamond:
            b = diamond_bounds(p, poly.D, c.Lambda, c.E);
            return fill_diamond(p, poly, c.given[0], c.given[1], c.Lambda, c.E);
    }
    throw std::logic_error("unknown polygon kind");
}

}  // namespace

TEST_SUITE("filling") {
    TEST_CASE("subdivision helpers") {
        auto s = even_subdivision(BigInt(-10), 3);
        CHECK(s == Subdivision{-4, -3, -3});
        CHECK(subdivision_total(s) == -10);
        CHECK(subdivision_max(s) == 4);
        CHECK_NOTHROW(validate_subdivision(s, -10, 3, 4, "s"));
        CHECK_THROWS_AS(validate_subdivision(s, -10, 2, 4, "s"), std::invalid_argument);
        CHECK_THROWS_AS(validate_subdivision(s, -10, 3, 3, "s"), std::invalid_argument);
        CHECK_THROWS_AS(validate_subdivision(s, -9, 3, 4, "s"), std::invalid_argument);
        CHECK_THROWS_AS(validate_subdivision(Subdivision{5, -15}, -10, 3, 20, "s"), std::invalid_argument);
        auto p = params_new(6);
        auto pts = subdivision_points(p, HPoint(1, 1), Flavor::y, Subdivision{1, 2});
        REQUIRE(pts.size() == 3);
        CHECK(pts[2] == HPoint(1, 1) + HPoint::y_power(p, BigInt(3)));
        CHECK(detail::round_to_multiple(BigInt(3), 6) == 6);
        CHECK(detail::round_to_multiple(BigInt(2), 6) == 0);
        CHECK(detail::round_to_multiple(BigInt(-3), 6) == 0);
        CHECK(detail::round_to_multiple(BigInt(-4), 6) == -6);
    }

    TEST_CASE("snap examples") {
        auto p = params_new(6);
        // A true triangle snaps to itself.
        auto tri = make_polygon(p, PolygonKind::triangle, {HPoint(0, 0), HPoint(0, 4), HPoint(24, 0)},
                                {Flavor::x, Flavor::y, Flavor::a}, {4, 4, -24}, 0);
        auto r = snap_triangle(p, tri);
        CHECK(r.max_gap == 0);
        CHECK(r.polygon.corners == tri.corners);
        auto dia = make_polygon(p, PolygonKind::diamond, {HPoint(0, 0), HPoint(0, 3), HPoint(12, 1), HPoint(12, -2)},
                                {Flavor::x, Flavor::y, Flavor::x, Flavor::y}, {3, 2, -3, -2}, 0);
        auto rd = snap_diamond(p, dia);
        CHECK(rd.max_gap == 0);
        CHECK(rd.polygon.exponents == std::vector<BigInt>{3, 2, -3, -2});
        // Degenerate: all corners equal.
        auto deg = make_polygon(p, PolygonKind::triangle, {HPoint(5, 5), HPoint(5, 5), HPoint(5, 5)},
                                {Flavor::x, Flavor::y, Flavor::a}, {0, 0, 0}, 0);
        CHECK(snap_triangle(p, deg).max_gap == 0);
        CHECK_THROWS_AS(snap_triangle(p, dia), std::invalid_argument);
    }

    TEST_CASE("snap gaps stay within their bounds") {
        auto p = params_new(6);
        testing::PolygonGen gen(p, 7);
        for (int i = 0; i < 200; ++i) {
            auto t = gen.triangle();
            auto r = snap_triangle(p, t.polygon);
            REQUIRE(r.max_gap <= r.bound);
            auto d = gen.diamond();
            auto rd = snap_diamond(p, d.polygon);
            REQUIRE(rd.max_gap <= rd.bound);
        }
    }

    TEST_CASE("fill_bigon example") {
        auto p = params_new(6);
        auto poly = make_polygon(p, PolygonKind::bigon, {HPoint(0, 0), HPoint(13, 0)}, {Flavor::a, Flavor::a},
                                 {12, -13}, 3);
        auto r = fill_bigon(p, poly, Subdivision{6, 6}, 2, 6);
        CHECK(check_fill(p, r, bigon_bounds(p, 3, 2, 6)).empty());
        CHECK(r.diagram.area() <= 2);
        CHECK(subdivision_total(r.outputs[0]) == -13);
        CHECK(r.diagram.count_nontrivial(p) == 0);
    }

    TEST_CASE("zero-offset bigon") {
        auto p = params_new(6);
        auto poly = make_polygon(p, PolygonKind::bigon, {HPoint(0, 0), HPoint(0, 5)}, {Flavor::x, Flavor::x},
                                 {5, -5}, 0);
        auto r = fill_bigon(p, poly, Subdivision{2, 3}, 2, 3);
        CHECK(check_fill(p, r, bigon_bounds(p, 0, 2, 3)).empty());
        CHECK(r.outputs[0] == Subdivision{-3, -2});
        for (const auto& c : r.diagram.cells) {
            std::size_t empty = 0;
            for (const auto& a : c.arcs) empty += a.word.empty();
            CHECK(empty >= 2);
        }
    }

    TEST_CASE("true triangle grid") {
        auto p = params_new(6);
        auto tri = make_polygon(p, PolygonKind::triangle, {HPoint(0, 0), HPoint(0, 6), HPoint(36, 0)},
                                {Flavor::x, Flavor::y, Flavor::a}, {6, 6, -36}, 0);
        auto r = fill_triangle(p, tri, even_subdivision(BigInt(-36), 6), 6, 6);
        CHECK(count_tag(r.diagram, "triangle:grid") == 15);
        CHECK(count_tag(r.diagram, "triangle:diag") == 6);
        CHECK(check_fill(p, r, triangle_bounds(p, 0, 6, 6)).empty());
        CHECK(r.outputs[0] == Subdivision{1, 1, 1, 1, 1, 1});
        CHECK(r.outputs[1] == Subdivision{1, 1, 1, 1, 1, 1});
    }

    TEST_CASE("true diamond grid") {
        auto p = params_new(6);
        auto dia = make_polygon(p, PolygonKind::diamond, {HPoint(0, 0), HPoint(0, 8), HPoint(48, 0), HPoint(48, -8)},
                                {Flavor::x, Flavor::y, Flavor::x, Flavor::y}, {8, 8, -8, -8}, 0);
        auto r = fill_diamond(p, dia, even_subdivision(BigInt(8), 4), even_subdivision(BigInt(8), 4), 4, 2);
        CHECK(count_tag(r.diagram, "grid") == 16);
        CHECK(check_fill(p, r, diamond_bounds(p, 0, 4, 2)).empty());
        CHECK(subdivision_total(r.outputs[0]) == -8);
        CHECK(subdivision_total(r.outputs[1]) == -8);
    }

    TEST_CASE("invalid inputs are rejected") {
        auto p = params_new(6);
        auto poly = make_polygon(p, PolygonKind::bigon, {HPoint(0, 0), HPoint(12, 0)}, {Flavor::a, Flavor::a},
                                 {12, -12}, 0);
        CHECK_THROWS_AS(fill_bigon(p, poly, Subdivision{4, 4, 4}, 2, 6), std::invalid_argument);
        CHECK_THROWS_AS(fill_bigon(p, poly, Subdivision{12}, 2, 6), std::invalid_argument);
        CHECK_THROWS_AS(fill_bigon(p, poly, Subdivision{6, 5}, 2, 6), std::invalid_argument);
        auto bad = poly;
        bad.D = -1;
        CHECK_THROWS_AS(validate_polygon(p, bad), std::invalid_argument);
        CHECK_THROWS_AS(fill_triangle(p, poly, Subdivision{12}, 2, 12), std::invalid_argument);
    }

    TEST_CASE("random fills meet every bound") {
        for (int L : {6, 8}) {
            auto p = params_new(L);
            testing::PolygonGen gen(p, 1000 + static_cast<std::uint64_t>(L));
            for (int i = 0; i < 60; ++i) {
                for (auto c : {gen.bigon(), gen.triangle(), gen.diamond()}) {
                    FillBounds b;
                    auto r = fill_case(p, c, b);
                    auto bad = check_fill(p, r, b);
                    INFO(polygon_kind_name(c.polygon.kind), " case ", i);
                    REQUIRE(bad.empty());
                    for (const auto& s : r.outputs) REQUIRE(static_cast<std::int64_t>(s.size()) <= c.Lambda);
                }
            }
        }
    }

    TEST_CASE("gluings pair interior arcs") {
        auto p = params_new(6);
        auto tri = make_polygon(p, PolygonKind::triangle, {HPoint(0, 0), HPoint(0, 3), HPoint(18, 0)},
                                {Flavor::x, Flavor::y, Flavor::a}, {3, 3, -18}, 0);
        auto r = fill_triangle(p, tri, Subdivision{-6, -6, -6}, 3, 6);
        auto gl = r.diagram.gluings(p);
        CHECK_FALSE(gl.empty());
        for (const auto& g : gl) {
            const Arc& a = r.diagram.cells[g.cell_a].arcs[g.arc_a];
            const Arc& b = r.diagram.cells[g.cell_b].arcs[g.arc_b];
            CHECK(a.word == b.word.inverse());
        }
        auto j = r.diagram.to_json(p);
        CHECK(j["area"] == r.diagram.area());
        CHECK(j["cells"].size() == r.diagram.area());
        CHECK(j["gluings"].size() == gl.size());
    }

    TEST_CASE("area budget closed form equals the level sum") {
        for (int n = 0; n <= 30; ++n)
            for (int c : {0, 7, 100})
                REQUIRE(area_budget(c, 13, 29, n) == area_budget_by_summation(c, 13, 29, n));
        CHECK(area_budget(1, 1, 1, 1) == 1 + 8 + 8);
        CHECK_THROWS_AS(area_budget(1, 1, 1, -1), std::invalid_argument);
    }
}
