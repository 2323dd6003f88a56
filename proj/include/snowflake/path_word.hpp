#pragma once

#include "snowflake/bigint.hpp"
#include "snowflake/params.hpp"

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace snowflake {

enum class Gen : std::uint8_t { a, s, t, x, y };

// A generator letter with exponent +1 or -1.
struct Letter {
    Gen gen = Gen::a;
    bool inverse = false;

    Letter inv() const { return {gen, !inverse}; }
    bool is_stable() const { return gen == Gen::s || gen == Gen::t; }
    friend bool operator==(const Letter& p, const Letter& q) {
        return p.gen == q.gen && p.inverse == q.inverse;
    }
    friend bool operator!=(const Letter& p, const Letter& q) { return !(p == q); }
};

namespace letters {
inline constexpr Letter a{Gen::a, false}, A{Gen::a, true};
inline constexpr Letter s{Gen::s, false}, S{Gen::s, true};
inline constexpr Letter t{Gen::t, false}, T{Gen::t, true};
inline constexpr Letter x{Gen::x, false}, X{Gen::x, true};
inline constexpr Letter y{Gen::y, false}, Y{Gen::y, true};
}  // namespace letters

inline char gen_char(Gen g) {
    switch (g) {
        case Gen::a: return 'a';
        case Gen::s: return 's';
        case Gen::t: return 't';
        case Gen::x: return 'x';
        case Gen::y: return 'y';
    }
    return '?';
}

inline int letter_weight(const GroupParams& p, Letter l) {
    return (l.gen == Gen::x || l.gen == Gen::y) ? p.L : 1;
}

// An edge path given by its letter sequence. Letters a, s, t have weight 1,
// letters x, y have weight L.
struct PathWord {
    std::vector<Letter> letters;

    PathWord() = default;
    explicit PathWord(std::vector<Letter> ls) : letters(std::move(ls)) {}

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }

    std::int64_t length(const GroupParams& p) const {
        std::int64_t n = 0;
        for (Letter l : letters) n += letter_weight(p, l);
        return n;
    }

    // Length counting every letter with weight 1.
    std::int64_t letter_count() const { return static_cast<std::int64_t>(letters.size()); }

    void push(Letter l) { letters.push_back(l); }
    void push_power(Letter l, std::int64_t k) {
        if (k < 0) {
            l = l.inv();
            k = -k;
        }
        letters.insert(letters.end(), static_cast<std::size_t>(k), l);
    }
    PathWord& operator+=(const PathWord& w) {
        letters.insert(letters.end(), w.letters.begin(), w.letters.end());
        return *this;
    }
    friend PathWord operator+(PathWord a, const PathWord& b) { return a += b; }

    PathWord inverse() const {
        PathWord r;
        r.letters.reserve(letters.size());
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) r.letters.push_back(it->inv());
        return r;
    }

    PathWord sub(std::size_t begin, std::size_t end) const {
        return PathWord(std::vector<Letter>(letters.begin() + static_cast<std::ptrdiff_t>(begin),
                                            letters.begin() + static_cast<std::ptrdiff_t>(end)));
    }

    friend bool operator==(const PathWord& a, const PathWord& b) { return a.letters == b.letters; }
    friend bool operator!=(const PathWord& a, const PathWord& b) { return !(a == b); }
};

inline PathWord power_word(Letter l, std::int64_t k) {
    PathWord w;
    w.push_power(l, k);
    return w;
}

// Serialization as space-separated tokens. Runs of one letter are written
// with an exponent: "s a^5 s^-1". The identity path is written "1".
inline std::string to_string(const PathWord& w) {
    if (w.empty()) return "1";
    std::string out;
    std::size_t i = 0;
    while (i < w.letters.size()) {
        std::size_t j = i;
        while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
        std::int64_t run = static_cast<std::int64_t>(j - i);
        if (!out.empty()) out += ' ';
        out += gen_char(w.letters[i].gen);
        if (w.letters[i].inverse) {
            out += "^-" + std::to_string(run);
        } else if (run > 1) {
            out += "^" + std::to_string(run);
        }
        i = j;
    }
    return out;
}

// Parses tokens such as "a", "a^5", "s^-1", "A" (inverse), "a-1". Tokens may
// be separated by spaces or written without separators ("sas^-1").
inline PathWord parse_path(const std::string& text) {
    PathWord w;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*' ||
                                   text[i] == '.' || text[i] == ','))
            ++i;
    };
    skip();
    if (text.substr(i) == "1") return w;
    while (i < text.size()) {
        char c = text[i++];
        Letter l;
        switch (c) {
            case 'a': l = letters::a; break;
            case 'A': l = letters::A; break;
            case 's': l = letters::s; break;
            case 'S': l = letters::S; break;
            case 't': l = letters::t; break;
            case 'T': l = letters::T; break;
            case 'x': l = letters::x; break;
            case 'X': l = letters::X; break;
            case 'y': l = letters::y; break;
            case 'Y': l = letters::Y; break;
            default: throw std::invalid_argument(std::string("unexpected character '") + c + "' in path");
        }
        std::int64_t k = 1;
        if (i < text.size() && (text[i] == '^' || text[i] == '-')) {
            if (text[i] == '^') ++i;
            bool neg = false;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
                neg = text[i] == '-';
                ++i;
            }
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (start == i) throw std::invalid_argument("missing exponent in path");
            k = std::stoll(text.substr(start, i - start));
            if (neg) k = -k;
        }
        w.push_power(l, k);
        skip();
    }
    return w;
}

}  // namespace snowflake
