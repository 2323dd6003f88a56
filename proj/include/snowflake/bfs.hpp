#pragma once

#include "snowflake/hnn_group.hpp"

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace snowflake {

using SmallPoint = BasicHPoint<std::int64_t>;
using SmallElement = BasicGroupElement<std::int64_t>;

inline constexpr std::size_t kDefaultBfsBudget = 10'000'000;
inline constexpr const char* kBfsBudgetEnv = "SNOWFLAKE_BFS_BUDGET";

// State budget for the search oracles. The environment variable overrides
// the default when it holds a positive integer.
inline std::size_t bfs_budget_from_env() {
    if (const char* s = std::getenv(kBfsBudgetEnv)) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultBfsBudget;
}

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::size_t visited, std::size_t frontier, int radius)
        : std::runtime_error("search budget exceeded at radius " + std::to_string(radius) + ": " +
                             std::to_string(visited) + " states visited, frontier size " +
                             std::to_string(frontier)),
          visited_states(visited),
          frontier_size(frontier),
          radius_reached(radius) {}
    std::size_t visited_states;
    std::size_t frontier_size;
    int radius_reached;
};

namespace detail {

inline void put_varint(std::string& out, std::int64_t v) {
    std::uint64_t z = (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
    while (z >= 0x80) {
        out.push_back(static_cast<char>((z & 0x7f) | 0x80));
        z >>= 7;
    }
    out.push_back(static_cast<char>(z));
}

inline std::int64_t get_varint(const std::string& in, std::size_t& pos) {
    std::uint64_t z = 0;
    int shift = 0;
    while (true) {
        auto b = static_cast<std::uint8_t>(in[pos++]);
        z |= static_cast<std::uint64_t>(b & 0x7f) << shift;
        if (!(b & 0x80)) break;
        shift += 7;
    }
    return static_cast<std::int64_t>((z >> 1) ^ (~(z & 1) + 1));
}

}  // namespace detail

// Compact byte key of a normal form. Transversal reps have one nonzero
// coordinate, so each syllable costs a letter byte plus one varint.
inline std::string encode_element(const SmallElement& g) {
    std::string out;
    for (const auto& sy : g.syllables()) {
        out.push_back(static_cast<char>(sy.letter));
        bool u_coord = sy.letter == Stable::s || sy.letter == Stable::t;
        detail::put_varint(out, u_coord ? sy.rep.u : sy.rep.v);
    }
    out.push_back(static_cast<char>(0x7f));
    detail::put_varint(out, g.tail().u);
    detail::put_varint(out, g.tail().v);
    return out;
}

inline SmallElement decode_element(const std::string& key) {
    std::vector<Syllable<std::int64_t>> syl;
    std::size_t pos = 0;
    while (static_cast<std::uint8_t>(key[pos]) != 0x7f) {
        auto e = static_cast<Stable>(key[pos++]);
        std::int64_t c = detail::get_varint(key, pos);
        bool u_coord = e == Stable::s || e == Stable::t;
        syl.push_back({u_coord ? SmallPoint(c, 0) : SmallPoint(0, c), e});
    }
    ++pos;
    std::int64_t u = detail::get_varint(key, pos);
    std::int64_t v = detail::get_varint(key, pos);
    return SmallElement::from_parts(std::move(syl), SmallPoint(u, v));
}

inline constexpr Letter kUnitGenerators[6] = {letters::a, letters::A, letters::s,
                                              letters::S, letters::t, letters::T};

// Ball of given radius around 1 in the Cayley graph over {a, s, t}.
class Ball {
public:
    int radius() const { return radius_; }
    std::size_t size() const { return dist_.size(); }
    const std::vector<std::vector<std::string>>& layers() const { return layers_; }

    std::optional<int> distance(const GroupElement& g) const {
        SmallElement s;
        try {
            s = from_big<std::int64_t>(g);
        } catch (const std::overflow_error&) {
            return std::nullopt;
        }
        auto it = dist_.find(encode_element(s));
        if (it == dist_.end()) return std::nullopt;
        return static_cast<int>(it->second);
    }

    // Number of Cayley graph edges found joining two elements at equal
    // distance from 1. Relators have even length, so this must be zero.
    std::size_t parity_violations() const { return parity_violations_; }

    std::optional<int> distance_key(const std::string& key) const {
        auto it = dist_.find(key);
        if (it == dist_.end()) return std::nullopt;
        return static_cast<int>(it->second);
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t d = 0; d < layers_.size(); ++d)
            for (const auto& key : layers_[d]) f(decode_element(key), static_cast<int>(d));
    }

private:
    friend Ball bfs_ball(const GroupParams&, int, std::size_t);
    int radius_ = 0;
    std::vector<std::vector<std::string>> layers_;
    std::unordered_map<std::string, std::uint8_t> dist_;
    std::size_t parity_violations_ = 0;
};

inline Ball bfs_ball(const GroupParams& p, int radius, std::size_t budget = bfs_budget_from_env()) {
    if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
    if (radius > 250) throw std::invalid_argument("radius too large for the oracle");
    Ball b;
    b.radius_ = radius;
    std::string root = encode_element(SmallElement());
    b.dist_.emplace(root, 0);
    b.layers_.push_back({root});
    for (int d = 0; d < radius; ++d) {
        std::vector<std::string> next;
        for (const auto& key : b.layers_[static_cast<std::size_t>(d)]) {
            SmallElement g = decode_element(key);
            for (Letter l : kUnitGenerators) {
                SmallElement h = g;
                h.mul_letter(p, l);
                std::string hk = encode_element(h);
                auto [it, inserted] = b.dist_.emplace(hk, static_cast<std::uint8_t>(d + 1));
                if (inserted) {
                    next.push_back(std::move(hk));
                    if (b.dist_.size() > budget) throw BudgetExceeded(b.dist_.size(), next.size(), d + 1);
                } else if (it->second == d) {
                    ++b.parity_violations_;
                }
            }
        }
        b.layers_.push_back(std::move(next));
    }
    // Edges inside the last layer are not visited above; check them too.
    for (const auto& key : b.layers_.back()) {
        SmallElement g = decode_element(key);
        for (Letter l : kUnitGenerators) {
            SmallElement h = g;
            h.mul_letter(p, l);
            auto it = b.dist_.find(encode_element(h));
            if (it != b.dist_.end() && it->second == radius) ++b.parity_violations_;
        }
    }
    return b;
}

// Parity of the length of any word representing g. Every relator has even
// length over {a, s, t}, so this is a homomorphism to Z/2 and must agree
// with the parity of the distance from 1.
template <class Int>
int element_parity(const BasicGroupElement<Int>& g) {
    // x = s a s^-1 and y = t a t^-1 have odd length.
    Int total = g.tail().u + g.tail().v;
    for (const auto& sy : g.syllables()) total = total + sy.rep.u + sy.rep.v + 1;
    return static_cast<int>(abs_value(total) % 2);
}

struct ScanStats {
    int radius = 0;
    std::vector<std::size_t> layer_sizes;  // distinct elements at each distance
    std::size_t stored_states = 0;         // peak number of stored states
    std::size_t parity_violations = 0;
    std::size_t total() const {
        std::size_t n = 0;
        for (auto c : layer_sizes) n += c;
        return n;
    }
};

// Visits every element at distance <= radius exactly once, calling
// visit(element, distance). Only the ball of radius - 1 is stored: the outer
// layer is streamed, and an element of it is reported from the first of its
// neighbours (in generator order) that lies in the stored ball.
template <class Visit>
ScanStats scan_ball(const GroupParams& p, int radius, Visit&& visit, std::size_t budget = bfs_budget_from_env()) {
    if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
    ScanStats st;
    st.radius = radius;
    if (radius == 0) {
        visit(SmallElement(), 0);
        st.layer_sizes.push_back(1);
        st.stored_states = 0;
        return st;
    }
    Ball inner = bfs_ball(p, radius - 1, budget);
    st.stored_states = inner.size();
    st.parity_violations = inner.parity_violations();
    for (std::size_t d = 0; d < inner.layers().size(); ++d) {
        st.layer_sizes.push_back(inner.layers()[d].size());
        for (const auto& key : inner.layers()[d]) {
            SmallElement g = decode_element(key);
            if (element_parity(g) != static_cast<int>(d % 2)) ++st.parity_violations;
            visit(g, static_cast<int>(d));
        }
    }
    std::size_t outer = 0;
    for (const auto& key : inner.layers().back()) {
        SmallElement f = decode_element(key);
        for (Letter l : kUnitGenerators) {
            SmallElement g = f;
            g.mul_letter(p, l);
            if (inner.distance_key(encode_element(g))) continue;
            // Canonical parent: the first neighbour of g inside the ball.
            Letter first{};
            for (Letter l2 : kUnitGenerators) {
                SmallElement h = g;
                h.mul_letter(p, l2);
                auto dh = inner.distance_key(encode_element(h));
                if (dh) {
                    if (*dh != radius - 1) ++st.parity_violations;
                    first = l2;
                    break;
                }
            }
            if (first != l.inv()) continue;
            // Edges from g to other outer elements would join equidistant
            // vertices; the per-element parity check covers that case.
            if (element_parity(g) != radius % 2) ++st.parity_violations;
            ++outer;
            visit(g, radius);
        }
    }
    st.layer_sizes.push_back(outer);
    return st;
}

// Exact d(g1, g2) when it is at most cap, by bidirectional breadth-first
// search from 1 and from g1^-1 g2.
inline std::optional<std::int64_t> pair_dist(const GroupParams& p, const GroupElement& g1, const GroupElement& g2,
                                             int cap, std::size_t budget = bfs_budget_from_env()) {
    GroupElement zb = g1.inverse(p).times(p, g2);
    if (zb.is_identity()) return 0;
    if (cap <= 0) return std::nullopt;
    SmallElement z = from_big<std::int64_t>(zb);

    struct Side {
        std::unordered_map<std::string, int> seen;
        std::vector<std::string> frontier;
        int radius = 0;
    };
    Side A, B;
    std::string ka = encode_element(SmallElement()), kb = encode_element(z);
    A.seen.emplace(ka, 0);
    A.frontier.push_back(ka);
    B.seen.emplace(kb, 0);
    B.frontier.push_back(kb);
    std::int64_t best = INT64_MAX;

    while (true) {
        if (best <= A.radius + B.radius) return best <= cap ? std::optional<std::int64_t>(best) : std::nullopt;
        if (A.radius + B.radius >= cap) return std::nullopt;
        Side& X = (A.frontier.size() <= B.frontier.size()) ? A : B;
        Side& Y = (&X == &A) ? B : A;
        if (X.frontier.empty()) return std::nullopt;
        std::vector<std::string> next;
        for (const auto& key : X.frontier) {
            SmallElement g = decode_element(key);
            for (Letter l : kUnitGenerators) {
                SmallElement h = g;
                h.mul_letter(p, l);
                std::string hk = encode_element(h);
                auto [it, inserted] = X.seen.emplace(hk, X.radius + 1);
                if (!inserted) continue;
                auto other = Y.seen.find(hk);
                if (other != Y.seen.end()) best = std::min<std::int64_t>(best, X.radius + 1 + other->second);
                next.push_back(std::move(hk));
            }
            if (A.seen.size() + B.seen.size() > budget)
                throw BudgetExceeded(A.seen.size() + B.seen.size(), next.size(), A.radius + B.radius + 1);
        }
        X.frontier = std::move(next);
        X.radius += 1;
    }
}

}  // namespace snowflake
