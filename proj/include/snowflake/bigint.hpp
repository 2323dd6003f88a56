#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace snowflake {

using BigInt = boost::multiprecision::cpp_int;

template <class Int>
inline constexpr bool is_supported_int_v =
    std::is_same_v<Int, std::int64_t> || std::is_same_v<Int, BigInt>;

// Overflow-checked arithmetic. For BigInt these are plain operations.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in add");
    return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in sub");
    return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in mul");
    return r;
}
inline BigInt checked_add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }

template <class Int>
inline Int abs_value(const Int& a) {
    return a < 0 ? Int(-a) : a;
}

template <class Int>
inline int sign_of(const Int& a) {
    return a > 0 ? 1 : (a < 0 ? -1 : 0);
}

// Floor division and the matching nonnegative remainder (b > 0).
template <class Int>
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

template <class Int>
inline Int floor_mod(const Int& a, const Int& b) {
    return a - floor_div(a, b) * b;
}

inline BigInt ipow(std::int64_t base, unsigned exp) {
    return boost::multiprecision::pow(BigInt(base), exp);
}

inline std::string to_string(const BigInt& v) { return v.str(); }
inline std::string to_string(std::int64_t v) { return std::to_string(v); }

inline BigInt parse_bigint(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("bad integer: " + s);
    for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("bad integer: " + s);
    BigInt v(s.substr(i));
    return s[0] == '-' ? BigInt(-v) : v;
}

template <class To, class From>
inline To int_cast(const From& v) {
    if constexpr (std::is_same_v<To, From>) {
        return v;
    } else if constexpr (std::is_same_v<To, BigInt>) {
        return BigInt(v);
    } else {
        if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN))
            throw std::overflow_error("value does not fit in int64");
        return static_cast<std::int64_t>(v);
    }
}

}  // namespace snowflake
