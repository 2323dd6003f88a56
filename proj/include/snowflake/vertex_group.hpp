#pragma once

#include "snowflake/bigint.hpp"
#include "snowflake/hpoint.hpp"
#include "snowflake/params.hpp"
#include "snowflake/path_word.hpp"

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

namespace snowflake {

namespace detail {

// |a^l| for 0 <= l <= L.
template <class Int>
Int dist_a_base(int L, const Int& l) {
    if (l <= Int(3 + L / 2)) return l;
    return Int(6 + L) - l;
}

// (|a^m|, |a^{m+1}|) for m >= 0. Each level of the recursion divides m by L,
// so the depth is O(log_L m) and no cache is needed.
template <class Int>
std::pair<Int, Int> dist_a_pair(int L, const Int& m) {
    const Int LL(L);
    if (m < LL) return {dist_a_base(L, m), dist_a_base(L, Int(m + 1))};
    Int q = m / LL;
    Int r = m % LL;
    auto [dq, dq1] = dist_a_pair(L, q);
    Int A = checked_add(Int(4), checked_mul(Int(2), dq));   // |a^{qL}|
    Int B = checked_add(Int(4), checked_mul(Int(2), dq1));  // |a^{(q+1)L}|
    auto at = [&](const Int& rr) {
        Int lo = A + rr;
        Int hi = B + (LL - rr);
        return lo < hi ? lo : hi;
    };
    Int here = at(r);
    Int next = (r + 1 == LL) ? B : at(Int(r + 1));
    return {here, next};
}

}  // namespace detail

// Word length |a^m| over the generators {a, s, t}.
template <class Int>
Int dist_a_power_t(const GroupParams& p, const Int& m) {
    static_assert(is_supported_int_v<Int>);
    Int am = abs_value(m);
    if (am == 0) return Int(0);
    return detail::dist_a_pair(p.L, am).first;
}

inline std::int64_t dist_a_power(const GroupParams& p, std::int64_t m) { return dist_a_power_t(p, m); }
inline BigInt dist_a_power(const GroupParams& p, const BigInt& m) { return dist_a_power_t(p, m); }

// |g^m| for g in {a, x, y}.
template <class Int>
Int dist_power_t(const GroupParams& p, Flavor g, const Int& m) {
    if (g == Flavor::a) return dist_a_power_t(p, m);
    if (m == 0) return Int(0);
    return checked_add(Int(2), dist_a_power_t(p, m));
}

inline std::int64_t dist_power(const GroupParams& p, Flavor g, std::int64_t m) { return dist_power_t(p, g, m); }
inline BigInt dist_power(const GroupParams& p, Flavor g, const BigInt& m) { return dist_power_t(p, g, m); }

// One candidate shape a^{ra} x^{mx} y^{ny} for a geodesic in H.
template <class Int>
struct HShape {
    Int a_exp;  // literal a-letters at the end of the word
    Int x_exp;
    Int y_exp;
    Int length;
};

namespace detail {

// All candidate shapes from the plane length formula, evaluated over every
// decomposition l = qL + r with |r| < L and both branches.
template <class Int>
std::vector<HShape<Int>> h_shapes(const GroupParams& p, const BasicHPoint<Int>& h) {
    const Int LL(p.L);
    const Int& l = h.u;
    const Int& m = h.v;
    const Int n(0);
    std::vector<Int> qs;
    Int qf = floor_div(l, LL);
    qs.push_back(qf);
    if (qf * LL != l) qs.push_back(qf + 1);
    std::vector<HShape<Int>> out;
    for (const Int& q : qs) {
        Int r = l - q * LL;
        int sg = sign_of(r);
        Int mq = checked_add(m, q), nq = checked_add(n, q);
        out.push_back({r, mq, nq,
                       abs_value(r) + dist_power_t(p, Flavor::x, mq) + dist_power_t(p, Flavor::y, nq)});
        if (sg != 0) {
            Int mq2 = mq + sg, nq2 = nq + sg;
            Int r2 = r - Int(sg) * LL;
            out.push_back({r2, mq2, nq2,
                           abs_value(r2) + dist_power_t(p, Flavor::x, mq2) + dist_power_t(p, Flavor::y, nq2)});
        }
    }
    return out;
}

template <class Int>
HShape<Int> best_h_shape(const GroupParams& p, const BasicHPoint<Int>& h) {
    auto shapes = h_shapes(p, h);
    std::size_t best = 0;
    for (std::size_t i = 1; i < shapes.size(); ++i)
        if (shapes[i].length < shapes[best].length) best = i;
    return shapes[best];
}

}  // namespace detail

// Word length of a^u x^v in G_L.
template <class Int>
Int dist_h_t(const GroupParams& p, const BasicHPoint<Int>& h) {
    return detail::best_h_shape(p, h).length;
}

inline std::int64_t dist_h(const GroupParams& p, const BasicHPoint<std::int64_t>& h) { return dist_h_t(p, h); }
inline BigInt dist_h(const GroupParams& p, const HPoint& h) { return dist_h_t(p, h); }

// Base-L digit expansion m = sum d_i L^i whose recursive path realizes |a^m|.
struct GeodesicExpression {
    std::vector<BigInt> digits;  // low to high
    int base = 0;

    BigInt value() const {
        BigInt v = 0;
        for (auto it = digits.rbegin(); it != digits.rend(); ++it) v = v * base + *it;
        return v;
    }
    // sum |d_i| 2^i + 4 (2^j - 1)
    BigInt path_length() const {
        BigInt len = 0;
        BigInt pw = 1;
        for (const auto& d : digits) {
            len += abs_value(d) * pw;
            pw *= 2;
        }
        std::size_t j = digits.empty() ? 0 : digits.size() - 1;
        len += 4 * ((BigInt(1) << j) - 1);
        return len;
    }
    std::size_t top_index() const { return digits.empty() ? 0 : digits.size() - 1; }
};

namespace detail {

inline void expression_positive(const GroupParams& p, const BigInt& m, std::vector<BigInt>& digits) {
    const int L = p.L;
    if (m <= L) {
        if (m <= L / 2 + 2) {
            digits.push_back(m);
        } else {
            digits.push_back(m - L);
            digits.push_back(1);
        }
        return;
    }
    BigInt q = m / L;
    BigInt r = m % L;
    BigInt A = 4 + 2 * dist_a_power(p, q);
    BigInt B = 4 + 2 * dist_a_power(p, BigInt(q + 1));
    BigInt lo = A + r, hi = B + (L - r);
    bool take_q = lo < hi || (lo == hi && r <= L / 2);
    if (take_q) {
        digits.push_back(r);
        expression_positive(p, q, digits);
    } else {
        digits.push_back(r - L);
        expression_positive(p, BigInt(q + 1), digits);
    }
}

}  // namespace detail

inline GeodesicExpression geodesic_expression(const GroupParams& p, const BigInt& m) {
    if (m == 0) throw std::invalid_argument("geodesic_expression requires m != 0");
    GeodesicExpression e;
    e.base = p.L;
    detail::expression_positive(p, abs_value(m), e.digits);
    if (m < 0)
        for (auto& d : e.digits) d = -d;
    return e;
}

inline bool expression_digits_valid(const GroupParams& p, const GeodesicExpression& e) {
    if (e.digits.empty()) return false;
    int sg = sign_of(e.digits.back());
    if (sg == 0) return false;
    BigInt top = e.digits.back() * sg;
    if (!(top > 0 && top <= p.L / 2 + 2)) return false;
    for (std::size_t i = 0; i + 1 < e.digits.size(); ++i)
        if (abs_value(e.digits[i]) > p.L / 2) return false;
    return true;
}

namespace detail {

inline PathWord expression_word(const std::vector<BigInt>& digits, std::size_t from) {
    PathWord w;
    std::int64_t d0 = static_cast<std::int64_t>(digits[from]);
    if (from + 1 < digits.size()) {
        PathWord inner = expression_word(digits, from + 1);
        w.letters.reserve(2 * inner.size() + 4 + static_cast<std::size_t>(d0 < 0 ? -d0 : d0));
        w.push(letters::s);
        w += inner;
        w.push(letters::S);
        w.push(letters::t);
        w += inner;
        w.push(letters::T);
    }
    w.push_power(letters::a, d0);
    return w;
}

}  // namespace detail

// Geodesic word from 1 to a^m.
inline PathWord geodesic_word_a_power(const GroupParams& p, const BigInt& m) {
    if (m == 0) return {};
    return detail::expression_word(geodesic_expression(p, m).digits, 0);
}

// Geodesic word from 1 to h of the shape (x-escape)(y-escape)(a-power).
inline PathWord geodesic_word_h(const GroupParams& p, const HPoint& h) {
    auto sh = detail::best_h_shape(p, h);
    PathWord w;
    if (sh.x_exp != 0) {
        w.push(letters::s);
        w += geodesic_word_a_power(p, sh.x_exp);
        w.push(letters::S);
    }
    if (sh.y_exp != 0) {
        w.push(letters::t);
        w += geodesic_word_a_power(p, sh.y_exp);
        w.push(letters::T);
    }
    w.push_power(letters::a, static_cast<std::int64_t>(sh.a_exp));
    return w;
}

// The two points of <a> closest to h: <a> meets h<x> and h<y>.
inline std::pair<HPoint, HPoint> closest_points_on_a_line(const GroupParams& p, const HPoint& h) {
    if (h.v == 0) throw std::invalid_argument("closest_points_on_a_line: h lies on <a>");
    return {HPoint(h.u, 0), HPoint(h.u + BigInt(p.L) * h.v, 0)};
}

struct LineIntersection {
    BigInt ell;
    HPoint point;
};

// The l with |l| <= L/2 (ties toward positive) such that <x> meets h a^l <y>,
// together with the intersection point.
inline LineIntersection xy_line_intersection(const GroupParams& p, const HPoint& h) {
    const BigInt L(p.L);
    BigInt r = floor_mod(h.u, L);
    BigInt ell;
    if (r == 0) {
        ell = 0;
    } else if (2 * r < L) {
        ell = -r;
    } else {
        ell = L - r;
    }
    BigInt shifted = h.u + ell;  // divisible by L
    return {ell, HPoint(0, h.v + shifted / L)};
}

// Closest point of <x> to a^pp, namely x^{pp/L}.
inline HPoint project_to_x_line(const GroupParams& p, const BigInt& pp) {
    if (pp % p.L != 0) throw std::invalid_argument("project_to_x_line: L does not divide p");
    return HPoint(0, pp / p.L);
}

}  // namespace snowflake
