#pragma once

#include "snowflake/bigint.hpp"
#include "snowflake/params.hpp"

#include <functional>
#include <ostream>
#include <string>

namespace snowflake {

// The element a^u x^v of the vertex group H = Z^2. The letter y is
// eliminated through y = a^L x^-1.
template <class Int>
struct BasicHPoint {
    Int u = 0;
    Int v = 0;

    BasicHPoint() = default;
    BasicHPoint(Int uu, Int vv) : u(std::move(uu)), v(std::move(vv)) {}

    static BasicHPoint from_triple(const GroupParams& p, const Int& l, const Int& m, const Int& n) {
        return {checked_add(l, checked_mul(Int(p.L), n)), checked_sub(m, n)};
    }
    static BasicHPoint a_power(const Int& k) { return {k, Int(0)}; }
    static BasicHPoint x_power(const Int& k) { return {Int(0), k}; }
    static BasicHPoint y_power(const GroupParams& p, const Int& k) {
        return {checked_mul(Int(p.L), k), Int(-k)};
    }

    bool is_zero() const { return u == 0 && v == 0; }

    friend BasicHPoint operator+(const BasicHPoint& a, const BasicHPoint& b) {
        return {checked_add(a.u, b.u), checked_add(a.v, b.v)};
    }
    friend BasicHPoint operator-(const BasicHPoint& a, const BasicHPoint& b) {
        return {checked_sub(a.u, b.u), checked_sub(a.v, b.v)};
    }
    friend BasicHPoint operator-(const BasicHPoint& a) { return {Int(-a.u), Int(-a.v)}; }
    BasicHPoint& operator+=(const BasicHPoint& b) { return *this = *this + b; }
    BasicHPoint& operator-=(const BasicHPoint& b) { return *this = *this - b; }

    friend bool operator==(const BasicHPoint& a, const BasicHPoint& b) {
        return a.u == b.u && a.v == b.v;
    }
    friend bool operator!=(const BasicHPoint& a, const BasicHPoint& b) { return !(a == b); }
    friend bool operator<(const BasicHPoint& a, const BasicHPoint& b) {
        return a.u < b.u || (a.u == b.u && a.v < b.v);
    }
};

using HPoint = BasicHPoint<BigInt>;

// Flavor of a one-parameter subgroup of H.
enum class Flavor { a, x, y };

inline const char* flavor_name(Flavor f) {
    switch (f) {
        case Flavor::a: return "a";
        case Flavor::x: return "x";
        case Flavor::y: return "y";
    }
    return "?";
}

inline Flavor parse_flavor(const std::string& s) {
    if (s == "a") return Flavor::a;
    if (s == "x") return Flavor::x;
    if (s == "y") return Flavor::y;
    throw std::invalid_argument("unknown flavor: " + s);
}

template <class Int>
inline BasicHPoint<Int> flavor_power(const GroupParams& p, Flavor f, const Int& k) {
    switch (f) {
        case Flavor::a: return BasicHPoint<Int>::a_power(k);
        case Flavor::x: return BasicHPoint<Int>::x_power(k);
        case Flavor::y: return BasicHPoint<Int>::y_power(p, k);
    }
    return {};
}

inline std::string to_string(const HPoint& h) {
    return "(" + h.u.str() + "," + h.v.str() + ")";
}

inline std::ostream& operator<<(std::ostream& os, const HPoint& h) { return os << to_string(h); }

}  // namespace snowflake

template <class Int>
struct std::hash<snowflake::BasicHPoint<Int>> {
    std::size_t operator()(const snowflake::BasicHPoint<Int>& h) const noexcept {
        std::size_t a, b;
        if constexpr (std::is_same_v<Int, snowflake::BigInt>) {
            a = boost::multiprecision::hash_value(h.u);
            b = boost::multiprecision::hash_value(h.v);
        } else {
            a = std::hash<Int>{}(h.u);
            b = std::hash<Int>{}(h.v);
        }
        return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    }
};
