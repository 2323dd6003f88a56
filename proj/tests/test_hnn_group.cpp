#include "snowflake/hnn_group.hpp"

#include <doctest.h>

#include <random>

using namespace snowflake;

namespace {

PathWord random_word(std::mt19937_64& rng, std::size_t max_len) {
    static const Letter gens[6] = {letters::a, letters::A, letters::s, letters::S, letters::t, letters::T};
    std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, 5);
    PathWord w;
    std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) w.push(gens[pick(rng)]);
    return w;
}

}  // namespace

TEST_SUITE("hnn_group") {
    TEST_CASE("reduce_word examples") {
        auto p = params_new(6);
        auto x = reduce_word(p, parse_path("s a s^-1"));
        CHECK(x.in_vertex_group());
        CHECK(x.tail() == HPoint(0, 1));
        CHECK(reduce_word(p, parse_path("s s^-1")).is_identity());
        CHECK(reduce_word(p, parse_path("s a^6 s^-1 t a^6 t^-1 a^-36")).is_identity());
        CHECK(normal_form_string(reduce_word(p, parse_path("s a s^-1 t a^-1 t^-1 s"))) == "a^-6 s a^2");
    }

    TEST_CASE("coset representative conventions") {
        auto p = params_new(6);
        // x^k s = s a^k
        CHECK(reduce_word(p, parse_path("x^3 s")) == reduce_word(p, parse_path("s a^3")));
        // a^k s^-1 = s^-1 x^k
        CHECK(reduce_word(p, parse_path("a^4 s^-1")) == reduce_word(p, parse_path("s^-1 x^4")));
        // y^k t = t a^k
        CHECK(reduce_word(p, parse_path("y^2 t")) == reduce_word(p, parse_path("t a^2")));
        // a^k t^-1 = t^-1 y^k
        CHECK(reduce_word(p, parse_path("a^5 t^-1")) == reduce_word(p, parse_path("t^-1 y^5")));
        auto g = reduce_word(p, parse_path("a^7 x^2 s"));
        REQUIRE(g.syllables().size() == 1);
        CHECK(g.syllables()[0].rep == HPoint(7, 0));
        CHECK(g.tail() == HPoint(2, 0));
    }

    TEST_CASE("multiply, invert, is_identity") {
        auto p = params_new(6);
        auto x = element_of(HPoint(0, 1));
        auto y = element_of(HPoint::y_power(p, BigInt(1)));
        CHECK(multiply(p, x, y) == element_of(HPoint(6, 0)));
        CHECK(invert(p, GroupElement()).is_identity());
        CHECK(multiply(p, reduce_word(p, parse_path("s a s^-1")), reduce_word(p, parse_path("s a^-1 s^-1")))
                  .is_identity());
    }

    TEST_CASE("reduction order confluence") {
        auto p = params_new(6);
        std::mt19937_64 rng(3);
        for (int i = 0; i < 3000; ++i) {
            PathWord w = random_word(rng, 30);
            auto g = reduce_word(p, w);
            for (int order = 0; order < 3; ++order)
                REQUIRE(reduce_word_reference(p, w, order, static_cast<std::uint64_t>(i)) == g);
        }
    }

    TEST_CASE("group laws") {
        for (int L : {6, 8}) {
            auto p = params_new(L);
            std::mt19937_64 rng(5);
            for (int i = 0; i < 2000; ++i) {
                auto a = reduce_word(p, random_word(rng, 20));
                auto b = reduce_word(p, random_word(rng, 20));
                auto c = reduce_word(p, random_word(rng, 20));
                REQUIRE(multiply(p, multiply(p, a, b), c) == multiply(p, a, multiply(p, b, c)));
                REQUIRE(multiply(p, a, invert(p, a)).is_identity());
                REQUIRE(multiply(p, invert(p, a), a).is_identity());
                REQUIRE(multiply(p, a, GroupElement()) == a);
                REQUIRE(multiply(p, GroupElement(), a) == a);
            }
        }
    }

    TEST_CASE("word of a product is the product of the words") {
        auto p = params_new(6);
        std::mt19937_64 rng(9);
        for (int i = 0; i < 2000; ++i) {
            PathWord u = random_word(rng, 15), v = random_word(rng, 15);
            REQUIRE(reduce_word(p, u + v) == multiply(p, reduce_word(p, u), reduce_word(p, v)));
            REQUIRE(reduce_word(p, u.inverse()) == invert(p, reduce_word(p, u)));
        }
    }

    TEST_CASE("normal forms are Britton reduced") {
        auto p = params_new(6);
        std::mt19937_64 rng(13);
        for (int i = 0; i < 2000; ++i) {
            auto g = reduce_word(p, random_word(rng, 30));
            const auto& syl = g.syllables();
            for (std::size_t k = 0; k < syl.size(); ++k) {
                Stable e = syl[k].letter;
                // Transversal: reps have one free coordinate.
                if (e == Stable::s || e == Stable::t) REQUIRE(syl[k].rep.v == 0);
                else REQUIRE(syl[k].rep.u == 0);
                if (k == 0) continue;
                // No pinch: e_{k-1} rep_k e_k with e_k = e_{k-1}^-1 and rep in the pinch subgroup.
                if (syl[k].letter != stable_inverse(syl[k - 1].letter)) continue;
                HPoint image;
                REQUIRE_FALSE(pinch(p, syl[k - 1].letter, syl[k].rep, image));
            }
        }
    }

    TEST_CASE("vertex group embedding") {
        auto p = params_new(6);
        std::mt19937_64 rng(17);
        std::uniform_int_distribution<int> coin(0, 1);
        for (int i = 0; i < 1000; ++i) {
            PathWord w;
            std::int64_t total = 0;
            for (int k = 0; k < 40; ++k) {
                bool up = coin(rng);
                w.push(up ? letters::a : letters::A);
                total += up ? 1 : -1;
            }
            auto g = reduce_word(p, w);
            REQUIRE(g.in_vertex_group());
            REQUIRE(g.tail() == HPoint(total, 0));
        }
    }

    TEST_CASE("snowflake endpoints with big exponents") {
        auto p = params_new(6);
        // a^{L^n} via repeated conjugation: x^{L^{n-1}} y^{L^{n-1}}
        for (int n = 1; n <= 30; ++n) {
            BigInt N = ipow(6, static_cast<unsigned>(n - 1));
            GroupElement g(HPoint::x_power(N) + HPoint::y_power(p, N));
            CHECK(g.tail() == HPoint::a_power(ipow(6, static_cast<unsigned>(n))));
        }
    }

    TEST_CASE("normal_form_string") {
        auto p = params_new(6);
        CHECK(normal_form_string(GroupElement()) == "1");
        CHECK(normal_form_string(reduce_word(p, parse_path("a^3"))) == "a^3");
    }
}
