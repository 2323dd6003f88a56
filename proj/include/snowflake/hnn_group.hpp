#pragma once

#include "snowflake/bigint.hpp"
#include "snowflake/hpoint.hpp"
#include "snowflake/params.hpp"
#include "snowflake/path_word.hpp"

#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace snowflake {

// Stable letters s, s^-1, t, t^-1.
enum class Stable : std::uint8_t { s, S, t, T };

inline Stable stable_inverse(Stable e) {
    switch (e) {
        case Stable::s: return Stable::S;
        case Stable::S: return Stable::s;
        case Stable::t: return Stable::T;
        case Stable::T: return Stable::t;
    }
    return e;
}

inline Letter stable_letter(Stable e) {
    switch (e) {
        case Stable::s: return letters::s;
        case Stable::S: return letters::S;
        case Stable::t: return letters::t;
        case Stable::T: return letters::T;
    }
    return letters::s;
}

inline Stable to_stable(Letter l) {
    if (l.gen == Gen::s) return l.inverse ? Stable::S : Stable::s;
    if (l.gen == Gen::t) return l.inverse ? Stable::T : Stable::t;
    throw std::invalid_argument("not a stable letter");
}

inline const char* stable_name(Stable e) {
    switch (e) {
        case Stable::s: return "s";
        case Stable::S: return "s^-1";
        case Stable::t: return "t";
        case Stable::T: return "t^-1";
    }
    return "?";
}

// Transversal conventions. Before a stable letter e, an element h of H is
// split as h = rep * k with k in the subgroup that e conjugates:
//   s   : k in <x>, x^k s = s a^k
//   s^-1: k in <a>, a^k s^-1 = s^-1 x^k
//   t   : k in <y>, y^k t = t a^k
//   t^-1: k in <a>, a^k t^-1 = t^-1 y^k
// The rep has a single nonzero coordinate. push_through returns (rep, image
// of k on the far side of e).
template <class Int>
std::pair<BasicHPoint<Int>, BasicHPoint<Int>> push_through(const GroupParams& p, const BasicHPoint<Int>& h,
                                                          Stable e) {
    using P = BasicHPoint<Int>;
    switch (e) {
        case Stable::s: return {P(h.u, Int(0)), P(h.v, Int(0))};
        case Stable::S: return {P(Int(0), h.v), P(Int(0), h.u)};
        case Stable::t: {
            Int k = -h.v;  // h = (u + L v, 0) * y^{-v}
            return {P(checked_add(h.u, checked_mul(Int(p.L), h.v)), Int(0)), P(k, Int(0))};
        }
        case Stable::T: return {P(Int(0), h.v), P::y_power(p, h.u)};
    }
    return {};
}

// e k e^-1 where k lies in the subgroup that e^-1 conjugates; returns the
// image if k is in that subgroup, otherwise false.
template <class Int>
bool pinch(const GroupParams& p, Stable e, const BasicHPoint<Int>& k, BasicHPoint<Int>& out) {
    using P = BasicHPoint<Int>;
    switch (e) {
        case Stable::s:  // s a^u s^-1 = x^u
            if (k.v != 0) return false;
            out = P(Int(0), k.u);
            return true;
        case Stable::S:  // s^-1 x^v s = a^v
            if (k.u != 0) return false;
            out = P(k.v, Int(0));
            return true;
        case Stable::t:  // t a^u t^-1 = y^u
            if (k.v != 0) return false;
            out = P::y_power(p, k.u);
            return true;
        case Stable::T: {  // t^-1 y^k t = a^k
            Int kk = -k.v;
            if (k.u != checked_mul(Int(p.L), kk)) return false;
            out = P(kk, Int(0));
            return true;
        }
    }
    return false;
}

template <class Int>
struct Syllable {
    BasicHPoint<Int> rep;
    Stable letter;
    friend bool operator==(const Syllable& a, const Syllable& b) {
        return a.letter == b.letter && a.rep == b.rep;
    }
};

// Britton normal form rep_1 e_1 rep_2 e_2 ... rep_k e_k tail with each rep_i
// taken from the transversal for e_i and no pinch e h e^-1 present.
template <class Int>
class BasicGroupElement {
public:
    using Point = BasicHPoint<Int>;

    BasicGroupElement() = default;
    explicit BasicGroupElement(Point h) : tail_(std::move(h)) {}

    const std::vector<Syllable<Int>>& syllables() const { return syl_; }
    const Point& tail() const { return tail_; }
    bool in_vertex_group() const { return syl_.empty(); }
    bool is_identity() const { return syl_.empty() && tail_.is_zero(); }

    // Head element of the normal form (first coset representative).
    Point head() const { return syl_.empty() ? tail_ : syl_.front().rep; }

    void mul_h(const Point& h) { tail_ += h; }

    void mul_stable(const GroupParams& p, Stable e) {
        if (!syl_.empty() && syl_.back().letter == stable_inverse(e)) {
            Point image;
            if (pinch(p, syl_.back().letter, tail_, image)) {
                tail_ = syl_.back().rep + image;
                syl_.pop_back();
                return;
            }
        }
        auto [rep, pushed] = push_through(p, tail_, e);
        syl_.push_back({std::move(rep), e});
        tail_ = std::move(pushed);
    }

    void mul_letter(const GroupParams& p, Letter l) {
        switch (l.gen) {
            case Gen::a: tail_.u = checked_add(tail_.u, Int(l.inverse ? -1 : 1)); break;
            case Gen::x: tail_.v = checked_add(tail_.v, Int(l.inverse ? -1 : 1)); break;
            case Gen::y: tail_ += Point::y_power(p, Int(l.inverse ? -1 : 1)); break;
            case Gen::s:
            case Gen::t: mul_stable(p, to_stable(l)); break;
        }
    }

    void mul_word(const GroupParams& p, const PathWord& w) {
        for (Letter l : w.letters) mul_letter(p, l);
    }

    BasicGroupElement times(const GroupParams& p, const BasicGroupElement& g) const {
        BasicGroupElement r = *this;
        for (const auto& sy : g.syl_) {
            r.mul_h(sy.rep);
            r.mul_stable(p, sy.letter);
        }
        r.mul_h(g.tail_);
        return r;
    }

    BasicGroupElement inverse(const GroupParams& p) const {
        BasicGroupElement r;
        r.mul_h(-tail_);
        for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) {
            r.mul_stable(p, stable_inverse(it->letter));
            r.mul_h(-it->rep);
        }
        return r;
    }

    friend bool operator==(const BasicGroupElement& a, const BasicGroupElement& b) {
        return a.tail_ == b.tail_ && a.syl_ == b.syl_;
    }
    friend bool operator!=(const BasicGroupElement& a, const BasicGroupElement& b) { return !(a == b); }

    // Direct construction from already-normalized data; used by alternative
    // reducers and decoders. No validation beyond what callers perform.
    static BasicGroupElement from_parts(std::vector<Syllable<Int>> syl, Point tail) {
        BasicGroupElement g;
        g.syl_ = std::move(syl);
        g.tail_ = std::move(tail);
        return g;
    }

private:
    std::vector<Syllable<Int>> syl_;
    Point tail_;
};

using GroupElement = BasicGroupElement<BigInt>;

template <class Int = BigInt>
BasicGroupElement<Int> reduce_word_t(const GroupParams& p, const PathWord& w) {
    BasicGroupElement<Int> g;
    g.mul_word(p, w);
    return g;
}

inline GroupElement reduce_word(const GroupParams& p, const PathWord& w) { return reduce_word_t<BigInt>(p, w); }

inline GroupElement multiply(const GroupParams& p, const GroupElement& a, const GroupElement& b) {
    return a.times(p, b);
}
inline GroupElement invert(const GroupParams& p, const GroupElement& g) { return g.inverse(p); }
inline bool is_identity(const GroupElement& g) { return g.is_identity(); }

inline GroupElement element_of(const HPoint& h) { return GroupElement(h); }

// Normal form string: "a^u x^v s a^u' t^-1 x^v' ...", identity "1".
template <class Int>
std::string normal_form_string(const BasicGroupElement<Int>& g) {
    std::string out;
    auto put_point = [&](const BasicHPoint<Int>& h) {
        if (h.u != 0) {
            if (!out.empty()) out += ' ';
            out += "a^" + to_string(h.u);
        }
        if (h.v != 0) {
            if (!out.empty()) out += ' ';
            out += "x^" + to_string(h.v);
        }
    };
    for (const auto& sy : g.syllables()) {
        put_point(sy.rep);
        if (!out.empty()) out += ' ';
        out += stable_name(sy.letter);
    }
    put_point(g.tail());
    return out.empty() ? "1" : out;
}

// Reference reducer that applies pinches in an arbitrary order on the
// unnormalized alternating form h_0 e_1 h_1 ... e_k h_k, then normalizes.
// order: 0 = leftmost pinch first, 1 = rightmost first, 2 = random.
template <class Int = BigInt>
BasicGroupElement<Int> reduce_word_reference(const GroupParams& p, const PathWord& w, int order,
                                             std::uint64_t seed = 0) {
    using P = BasicHPoint<Int>;
    std::vector<P> hs(1);
    std::vector<Stable> es;
    for (Letter l : w.letters) {
        if (l.is_stable()) {
            es.push_back(to_stable(l));
            hs.emplace_back();
        } else {
            BasicGroupElement<Int> tmp(hs.back());
            tmp.mul_letter(p, l);
            hs.back() = tmp.tail();
        }
    }
    std::mt19937_64 rng(seed);
    while (true) {
        std::vector<std::size_t> cand;  // index i: pinch of es[i], hs[i+1], es[i+1]
        for (std::size_t i = 0; i + 1 < es.size(); ++i) {
            P img;
            if (es[i + 1] == stable_inverse(es[i]) && pinch(p, es[i], hs[i + 1], img)) cand.push_back(i);
        }
        if (cand.empty()) break;
        std::size_t i;
        if (order == 0) {
            i = cand.front();
        } else if (order == 1) {
            i = cand.back();
        } else {
            i = cand[std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(rng)];
        }
        P img;
        pinch(p, es[i], hs[i + 1], img);
        hs[i] = hs[i] + img + hs[i + 2];
        hs.erase(hs.begin() + static_cast<std::ptrdiff_t>(i + 1), hs.begin() + static_cast<std::ptrdiff_t>(i + 3));
        es.erase(es.begin() + static_cast<std::ptrdiff_t>(i), es.begin() + static_cast<std::ptrdiff_t>(i + 2));
    }
    // Normalize: push each H-part through the following stable letter.
    std::vector<Syllable<Int>> syl;
    P carry = hs[0];
    for (std::size_t i = 0; i < es.size(); ++i) {
        auto [rep, pushed] = push_through(p, carry, es[i]);
        syl.push_back({rep, es[i]});
        carry = pushed + hs[i + 1];
    }
    return BasicGroupElement<Int>::from_parts(std::move(syl), carry);
}

template <class Int>
std::size_t hash_element(const BasicGroupElement<Int>& g) {
    std::hash<BasicHPoint<Int>> hp;
    std::size_t h = hp(g.tail());
    for (const auto& sy : g.syllables()) {
        h ^= hp(sy.rep) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= static_cast<std::size_t>(sy.letter) * 0x100000001b3ULL + (h << 6) + (h >> 2);
    }
    return h;
}

template <class Int>
BasicGroupElement<BigInt> to_big(const BasicGroupElement<Int>& g) {
    if constexpr (std::is_same_v<Int, BigInt>) {
        return g;
    } else {
        std::vector<Syllable<BigInt>> syl;
        for (const auto& sy : g.syllables())
            syl.push_back({HPoint(BigInt(sy.rep.u), BigInt(sy.rep.v)), sy.letter});
        return GroupElement::from_parts(std::move(syl), HPoint(BigInt(g.tail().u), BigInt(g.tail().v)));
    }
}

template <class Int>
BasicGroupElement<Int> from_big(const GroupElement& g) {
    if constexpr (std::is_same_v<Int, BigInt>) {
        return g;
    } else {
        using P = BasicHPoint<Int>;
        std::vector<Syllable<Int>> syl;
        for (const auto& sy : g.syllables())
            syl.push_back({P(int_cast<Int>(sy.rep.u), int_cast<Int>(sy.rep.v)), sy.letter});
        return BasicGroupElement<Int>::from_parts(std::move(syl),
                                                  P(int_cast<Int>(g.tail().u), int_cast<Int>(g.tail().v)));
    }
}

}  // namespace snowflake

template <class Int>
struct std::hash<snowflake::BasicGroupElement<Int>> {
    std::size_t operator()(const snowflake::BasicGroupElement<Int>& g) const noexcept {
        return snowflake::hash_element(g);
    }
};
