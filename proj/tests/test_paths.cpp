#include "snowflake/paths.hpp"

#include <doctest.h>

using namespace snowflake;

TEST_SUITE("paths") {
    TEST_CASE("path words") {
        auto p = params_new(6);
        auto w = parse_path("s a^5 s^-1 x y^-2");
        CHECK(to_string(w) == "s a^5 s^-1 x y^-2");
        CHECK(w.length(p) == 7 + 3 * 6);
        CHECK(to_string(parse_path("1")) == "1");
        CHECK(to_string(parse_path("sas^-1")) == "s a s^-1");
        CHECK_THROWS_AS(parse_path("s b"), std::invalid_argument);
        CHECK(path_endpoint(p, parse_path("x y")) == GroupElement(HPoint(6, 0)));
    }

    TEST_CASE("snowflake_path examples") {
        auto p = params_new(6);
        CHECK(to_string(snowflake_path(p, 1, 's')) == "s a s^-1 t a t^-1");
        auto w2 = snowflake_path(p, 2, 's');
        CHECK(w2.length(p) == 16);
        CHECK(path_endpoint(p, w2) == GroupElement(HPoint(36, 0)));
        CHECK(to_string(snowflake_path(params_new(10), 1, 't')) == "t a t^-1 s a s^-1");
        CHECK_THROWS_AS(snowflake_path(p, 0, 's'), std::invalid_argument);
    }

    TEST_CASE("snowflake length law and endpoints") {
        for (int L : {6, 8, 10, 12}) {
            auto p = params_new(L);
            for (int n = 1; n <= 20; ++n) {
                std::int64_t expect = 5 * (std::int64_t(1) << n) - 4;
                REQUIRE(dist_a_power(p, ipow(L, static_cast<unsigned>(n))) == expect);
                if (n <= 14) {
                    auto w = snowflake_path(p, n, n % 2 ? 's' : 't');
                    REQUIRE(w.length(p) == expect);
                    REQUIRE(path_endpoint(p, w) == GroupElement(HPoint::a_power(ipow(L, static_cast<unsigned>(n)))));
                }
            }
        }
    }

    TEST_CASE("snowflake_loop") {
        auto p = params_new(6);
        CHECK(snowflake_loop(p, 1).length(p) == 12);
        CHECK(snowflake_loop(p, 2).length(p) == 32);
        for (int n = 1; n <= 10; ++n) CHECK(is_closed(p, snowflake_loop(p, n)));
    }

    TEST_CASE("decompose_escapes examples") {
        auto p = params_new(6);
        auto d1 = decompose_escapes(p, snowflake_path(p, 1, 's'));
        REQUIRE(d1.segments.size() == 2);
        CHECK(d1.segments[0].kind == SegmentKind::x_escape);
        CHECK(d1.segments[0].exponent == 1);
        CHECK(d1.segments[1].kind == SegmentKind::y_escape);
        CHECK(d1.segments[1].exponent == 1);
        auto d2 = decompose_escapes(p, parse_path("a a a"));
        REQUIRE(d2.segments.size() == 1);
        CHECK(d2.segments[0].kind == SegmentKind::toral);
        CHECK(d2.segments[0].exponent == 3);
        auto d3 = decompose_escapes(p, snowflake_path(p, 2, 's'));
        REQUIRE(d3.segments.size() == 2);
        CHECK(d3.segments[0].kind == SegmentKind::x_escape);
        CHECK(d3.segments[0].exponent == 6);
        CHECK(d3.segments[1].kind == SegmentKind::y_escape);
        CHECK(d3.segments[1].exponent == 6);
        CHECK_THROWS_AS(decompose_escapes(p, parse_path("a s")), std::invalid_argument);
    }

    TEST_CASE("decompose_escapes reassembles and escapes touch H only at endpoints") {
        auto p = params_new(6);
        for (const char* text : {"s a^3 s^-1 a^2 t a^-1 t^-1 s^-1 x^2 s", "a s a s^-1 t a^2 t^-1 a^-4",
                                 "t^-1 y t a^5 s^-1 x^-3 s"}) {
            auto w = parse_path(text);
            auto d = decompose_escapes(p, w);
            CHECK(d.reassemble() == w);
            for (const auto& seg : d.segments) {
                if (!seg.is_escape()) continue;
                GroupElement cur;
                for (std::size_t i = 0; i + 1 < seg.subword.size(); ++i) {
                    cur.mul_letter(p, seg.subword.letters[i]);
                    CHECK_FALSE(cur.in_vertex_group());
                }
                CHECK(reduce_word(p, seg.subword) == GroupElement(seg.difference));
            }
        }
    }

    TEST_CASE("trace examples") {
        auto p = params_new(6);
        auto t1 = trace(decompose_escapes(p, parse_path("s a^5 s^-1")).segments[0]);
        CHECK(t1.flavor == Flavor::x);
        CHECK(t1.exponent == 5);
        auto t2 = trace(decompose_escapes(p, parse_path("t a^-2 t^-1")).segments[0]);
        CHECK(t2.flavor == Flavor::y);
        CHECK(t2.exponent == -2);
        auto t3 = trace(decompose_escapes(p, snowflake_path(p, 2, 's')).segments[0]);
        CHECK(t3.flavor == Flavor::x);
        CHECK(t3.exponent == 6);
        CHECK_THROWS_AS(trace(decompose_escapes(p, parse_path("a^2")).segments[0]), std::invalid_argument);
    }

    TEST_CASE("enfilade examples") {
        auto p = params_new(6);
        auto R = Rational::parse("4");
        auto d0 = enfilade_decompose(p, parse_path("s a^5 s^-1"), R);
        CHECK(d0.n() == 0);
        CHECK(to_string(d0.end) == "a^5");
        CHECK(d0.exponents[0] == 5);
        auto w1 = parse_path("s s a s^-1 t a t^-1 s^-1");
        auto d1 = enfilade_decompose(p, w1, R);
        CHECK(d1.n() == 0);
        CHECK(d1.end == snowflake_path(p, 1, 's'));
        // An escape whose inner path is one long a-escape plus short toral ends.
        auto w2 = parse_path("s t^-1 a^6 s a^-1 s^-1 t s^-1");
        auto d2 = enfilade_decompose(p, w2, R);
        CHECK(d2.n() == 1);
        CHECK(to_string(d2.end) == "a^6 s a^-1 s^-1");
        CHECK(d2.exponents[0] == 1);
        CHECK(d2.exponents[1] == 1);
        CHECK(d2.flavors[2] == Flavor::y);
        CHECK(d2.reassemble() == w2);
        CHECK_THROWS_AS(enfilade_decompose(p, parse_path("a s a s^-1"), R), std::invalid_argument);
        // s x^9 s^-1 is not in H, so this path is not an escape.
        CHECK_THROWS_AS(enfilade_decompose(p, parse_path("s s a^9 s^-1 s^-1"), R), std::invalid_argument);
        CHECK_THROWS_AS(enfilade_decompose(p, parse_path("s a s^-1"), Rational::parse("2")), std::invalid_argument);
    }

    TEST_CASE("enfilade growth, maximality and reassembly on snowflake escapes") {
        auto p = params_new(6);
        // End dominance needs |gamma| >= J with (R-1)/R (J-2)/J >= (R-2)/R and
        // (R-1)/R (R-2)/R (J-2)/J > (R-3)/R.
        auto min_length = [](const Rational& R) {
            double r = R.value();
            std::int64_t J = 3;
            while (!((r - 1) / r * (J - 2.0) / J >= (r - 2) / r && (r - 1) / r * (r - 2) / r * (J - 2.0) / J > (r - 3) / r))
                ++J;
            return J;
        };
        CHECK(min_length(Rational::parse("4")) == 7);
        CHECK(min_length(Rational::parse("7.5")) == 36);
        std::size_t dominance_checked = 0;
        for (const char* rs : {"5/2", "3", "4", "7.5"}) {
            auto R = Rational::parse(rs);
            for (int n = 1; n <= 6; ++n) {
                for (char f : {'s', 't'}) {
                    auto path = snowflake_path(p, n, f);
                    for (const auto& seg : decompose_escapes(p, path).segments) {
                        auto d = enfilade_decompose(p, seg.subword, R);
                        REQUIRE(d.reassemble() == seg.subword);
                        for (std::size_t i = 0; i < d.n(); ++i)
                            REQUIRE(R.num * d.lengths[i + 1] >= (R.num - R.den) * d.inner_lengths[i]);
                        // Maximal: no escape inside the end meets the growth bound.
                        for (const auto& s : decompose_escapes(p, d.end).segments)
                            if (s.is_escape())
                                REQUIRE(R.num * s.subword.length(p) < (R.num - R.den) * d.inner_lengths.back());
                        REQUIRE(d.exponents_same_sign());
                        // An escape whose length equals the distance between its
                        // endpoints is geodesic, so its biLipschitz constant is 1.
                        bool unit_k = seg.subword.length(p) == dist_h(p, seg.difference);
                        REQUIRE(unit_k);
                        if (R.num > 3 * R.den && unit_k && seg.subword.length(p) >= min_length(R)) {
                            REQUIRE(enfilade_end_dominates(p, d, R));
                            ++dominance_checked;
                        }
                    }
                }
            }
        }
        CHECK(dominance_checked > 20);
    }

    TEST_CASE("loop_bilip_constant") {
        auto p = params_new(6);
        auto rep = loop_bilip_constant(p, snowflake_loop(p, 1), 12);
        CHECK(rep.embedded);
        CHECK(rep.complete);
        CHECK(rep.num == 1);
        CHECK(rep.den == 1);
        auto bad = loop_bilip_constant(p, parse_path("s a s^-1 s a^-1 s^-1"), 12);
        CHECK_FALSE(bad.embedded);
        auto two = loop_bilip_constant(p, parse_path("a^6") + snowflake_path(p, 1, 's').inverse(), 12);
        CHECK(two.embedded);
        CHECK(two.complete);
        CHECK(two.num == 1);
        CHECK(two.den == 1);
        auto partial = loop_bilip_constant(p, snowflake_loop(p, 1), 2);
        CHECK_FALSE(partial.complete);
    }

    TEST_CASE("verify_geodesic_loop") {
        auto p = params_new(6);
        CHECK(verify_geodesic_loop(p, snowflake_loop(p, 1), 6));
        CHECK_FALSE(verify_geodesic_loop(p, parse_path("a^12 a^-12"), 12));
        CHECK_THROWS_AS(verify_geodesic_loop(p, snowflake_loop(p, 1), 5), IncompleteVerification);
        // Embedded but not geodesic: the antipode a^6 x of 1 is much closer than 12.
        auto rep = verify_geodesic_loop_report(p, parse_path("x a^6 x^-1 a^-6"), 12);
        CHECK(rep.embedded);
        CHECK_FALSE(rep.geodesic);
        CHECK(rep.failing_distance < 12);
    }
}
