#pragma once

#include "snowflake/bfs.hpp"
#include "snowflake/hnn_group.hpp"
#include "snowflake/path_word.hpp"
#include "snowflake/vertex_group.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace snowflake {

inline GroupElement path_endpoint(const GroupParams& p, const PathWord& w) { return reduce_word(p, w); }

inline bool is_closed(const GroupParams& p, const PathWord& w) { return reduce_word(p, w).is_identity(); }

// sigma_{n,s} and sigma_{n,t}: geodesics from 1 to a^{L^n}.
inline PathWord snowflake_path(const GroupParams& p, int n, char flavor) {
    (void)p;
    if (n < 1) throw std::invalid_argument("snowflake_path requires n >= 1");
    if (flavor != 's' && flavor != 't') throw std::invalid_argument("flavor must be s or t");
    const Letter first = flavor == 's' ? letters::s : letters::t;
    const Letter second = flavor == 's' ? letters::t : letters::s;
    PathWord w = power_word(letters::a, 1);
    for (int k = 0; k < n; ++k) {
        PathWord next;
        next.letters.reserve(2 * w.size() + 4);
        next.push(first);
        next += w;
        next.push(first.inv());
        next.push(second);
        next += w;
        next.push(second.inv());
        w = std::move(next);
    }
    return w;
}

inline PathWord snowflake_loop(const GroupParams& p, int n) {
    return snowflake_path(p, n, 's') + snowflake_path(p, n, 't').inverse();
}

enum class SegmentKind { toral, x_escape, y_escape, a_escape };

inline const char* segment_kind_name(SegmentKind k) {
    switch (k) {
        case SegmentKind::toral: return "toral";
        case SegmentKind::x_escape: return "x-escape";
        case SegmentKind::y_escape: return "y-escape";
        case SegmentKind::a_escape: return "a-escape";
    }
    return "?";
}

struct Segment {
    SegmentKind kind = SegmentKind::toral;
    std::size_t begin = 0;  // letter indices [begin, end)
    std::size_t end = 0;
    PathWord subword;
    HPoint difference;     // start^-1 * end, an element of H
    Flavor flavor = Flavor::a;
    BigInt exponent = 0;   // difference = flavor^exponent when pure is set
    bool pure = true;

    bool is_escape() const { return kind != SegmentKind::toral; }
};

struct EscapeDecomposition {
    std::vector<Segment> segments;

    PathWord reassemble() const {
        PathWord w;
        for (const auto& s : segments) w += s.subword;
        return w;
    }
};

namespace detail {

inline void set_pure_power(const GroupParams& p, Segment& seg) {
    const HPoint& d = seg.difference;
    seg.pure = true;
    if (seg.kind == SegmentKind::x_escape) {
        seg.flavor = Flavor::x;
        seg.exponent = d.v;
        seg.pure = d.u == 0;
    } else if (seg.kind == SegmentKind::y_escape) {
        seg.flavor = Flavor::y;
        seg.exponent = -d.v;
        seg.pure = d.u == BigInt(p.L) * seg.exponent;
    } else if (seg.kind == SegmentKind::a_escape) {
        seg.flavor = Flavor::a;
        seg.exponent = d.u;
        seg.pure = d.v == 0;
    } else if (d.v == 0) {
        seg.flavor = Flavor::a;
        seg.exponent = d.u;
    } else if (d.u == 0) {
        seg.flavor = Flavor::x;
        seg.exponent = d.v;
    } else if (d.u == BigInt(p.L) * (-d.v)) {
        seg.flavor = Flavor::y;
        seg.exponent = -d.v;
    } else {
        seg.flavor = Flavor::a;
        seg.exponent = 0;
        seg.pure = false;
    }
}

}  // namespace detail

// Splits a path whose endpoints lie in one coset gH into maximal toral
// subpaths and escapes. Coset membership of a vertex is tested on the normal
// form of the prefix read from the start vertex.
inline EscapeDecomposition decompose_escapes(const GroupParams& p, const PathWord& path,
                                             const GroupElement& start = GroupElement()) {
    (void)start;  // membership in start*H depends only on the prefix
    std::vector<std::size_t> visits{0};
    std::vector<HPoint> where{HPoint()};
    GroupElement cur;
    for (std::size_t i = 0; i < path.letters.size(); ++i) {
        cur.mul_letter(p, path.letters[i]);
        if (cur.in_vertex_group()) {
            visits.push_back(i + 1);
            where.push_back(cur.tail());
        }
    }
    if (visits.back() != path.letters.size())
        throw std::invalid_argument("path endpoints do not lie in a common coset of H");

    EscapeDecomposition dec;
    for (std::size_t k = 0; k + 1 < visits.size(); ++k) {
        std::size_t b = visits[k], e = visits[k + 1];
        Letter first = path.letters[b];
        SegmentKind kind = SegmentKind::toral;
        if (first.is_stable()) {
            if (first == letters::s) kind = SegmentKind::x_escape;
            else if (first == letters::t) kind = SegmentKind::y_escape;
            else kind = SegmentKind::a_escape;
        }
        HPoint diff = where[k + 1] - where[k];
        if (kind == SegmentKind::toral && !dec.segments.empty() && dec.segments.back().kind == SegmentKind::toral) {
            Segment& last = dec.segments.back();
            last.end = e;
            last.subword.push(first);
            last.difference += diff;
            detail::set_pure_power(p, last);
            continue;
        }
        Segment seg;
        seg.kind = kind;
        seg.begin = b;
        seg.end = e;
        seg.subword = path.sub(b, e);
        seg.difference = diff;
        detail::set_pure_power(p, seg);
        dec.segments.push_back(std::move(seg));
    }
    return dec;
}

struct Trace {
    Flavor flavor;
    BigInt exponent;
};

inline Trace trace(const Segment& seg) {
    if (!seg.is_escape()) throw std::invalid_argument("trace of a toral segment");
    return {seg.flavor, seg.exponent};
}

// Exact positive rational used for the enfilade growth parameter R.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational parse(const std::string& s) {
        Rational r;
        auto slash = s.find('/');
        auto dot = s.find('.');
        if (slash != std::string::npos) {
            r.num = std::stoll(s.substr(0, slash));
            r.den = std::stoll(s.substr(slash + 1));
        } else if (dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            r.num = std::stoll(digits);
            r.den = 1;
            for (std::size_t i = dot + 1; i < s.size(); ++i) r.den *= 10;
        } else {
            r.num = std::stoll(s);
        }
        if (r.den <= 0) throw std::invalid_argument("bad rational: " + s);
        std::int64_t g = std::gcd(r.num, r.den);
        if (g > 1) {
            r.num /= g;
            r.den /= g;
        }
        return r;
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

inline Flavor conjugated_flavor(Letter eps) {
    // eps^-1 g eps for the flavor g of the escape starting with eps.
    if (eps == letters::s || eps == letters::t) return Flavor::a;
    if (eps == letters::S) return Flavor::x;
    return Flavor::y;
}

struct EnfiladeDecomposition {
    std::vector<Letter> epsilons;   // eps_0 .. eps_n
    std::vector<PathWord> alphas;   // alpha_1 .. alpha_n
    std::vector<PathWord> betas;    // beta_1 .. beta_n
    PathWord end;                   // gamma'_n
    std::vector<Flavor> flavors;    // g_0 .. g_{n+1}
    std::vector<BigInt> exponents;  // m_0 .. m_n
    std::vector<std::int64_t> lengths;        // |gamma_i|
    std::vector<std::int64_t> inner_lengths;  // |gamma'_i|

    std::size_t n() const { return epsilons.empty() ? 0 : epsilons.size() - 1; }

    PathWord reassemble() const {
        PathWord w = end;
        for (std::size_t i = epsilons.size(); i-- > 0;) {
            PathWord outer;
            outer.push(epsilons[i]);
            outer += w;
            outer.push(epsilons[i].inv());
            if (i == 0) {
                w = std::move(outer);
            } else {
                w = alphas[i - 1] + outer + betas[i - 1];
            }
        }
        return w;
    }

    bool exponents_same_sign() const {
        int sg = 0;
        for (const auto& m : exponents) {
            int s = sign_of(m);
            if (s == 0) continue;
            if (sg == 0) sg = s;
            else if (s != sg) return false;
        }
        return true;
    }
};

// The R-enfilade decomposition of a single escape. At each level the
// candidate is the top-level escape of gamma'_i meeting the growth bound;
// R > 2 leaves at most one candidate.
inline EnfiladeDecomposition enfilade_decompose(const GroupParams& p, const PathWord& path, const Rational& R) {
    if (!(R.num > 2 * R.den)) throw std::invalid_argument("enfilade requires R > 2");
    auto top = decompose_escapes(p, path);
    if (top.segments.size() != 1 || !top.segments[0].is_escape())
        throw std::invalid_argument("enfilade input must be a single escape");
    EnfiladeDecomposition dec;
    PathWord gamma = path;
    Segment seg = top.segments[0];
    while (true) {
        Letter eps = gamma.letters.front();
        if (gamma.letters.back() != eps.inv()) throw std::invalid_argument("escape does not end with the inverse letter");
        dec.epsilons.push_back(eps);
        dec.flavors.push_back(seg.flavor);
        dec.exponents.push_back(seg.exponent);
        dec.lengths.push_back(gamma.length(p));
        PathWord inner = gamma.sub(1, gamma.size() - 1);
        std::int64_t inner_len = inner.length(p);
        dec.inner_lengths.push_back(inner_len);
        auto parts = decompose_escapes(p, inner);
        const Segment* chosen = nullptr;
        for (const auto& s : parts.segments) {
            if (!s.is_escape()) continue;
            // |gamma_{i+1}| >= (R-1)/R |gamma'_i|
            std::int64_t len = s.subword.length(p);
            if (static_cast<__int128>(R.num) * len >= static_cast<__int128>(R.num - R.den) * inner_len) {
                chosen = &s;
                break;
            }
        }
        if (!chosen) {
            dec.end = std::move(inner);
            dec.flavors.push_back(conjugated_flavor(eps));
            break;
        }
        dec.alphas.push_back(inner.sub(0, chosen->begin));
        dec.betas.push_back(inner.sub(chosen->end, inner.size()));
        Segment next = *chosen;
        gamma = next.subword;
        seg = std::move(next);
    }
    return dec;
}

// |gamma'_n| >= (R-3)/R |gamma|, the end dominance inequality.
inline bool enfilade_end_dominates(const GroupParams& p, const EnfiladeDecomposition& d, const Rational& R) {
    std::int64_t end_len = d.end.length(p);
    std::int64_t total = d.lengths.front();
    return static_cast<__int128>(R.num) * end_len >= static_cast<__int128>(R.num - 3 * R.den) * total;
}

// Vertices of a closed path, with their arc-length positions.
struct LoopVertices {
    std::vector<GroupElement> vertices;  // v_0 .. v_{N-1}
    std::vector<std::int64_t> position;  // arc length from v_0
    std::int64_t total = 0;
};

inline LoopVertices loop_vertices(const GroupParams& p, const PathWord& loop) {
    LoopVertices lv;
    GroupElement cur;
    std::int64_t pos = 0;
    for (Letter l : loop.letters) {
        lv.vertices.push_back(cur);
        lv.position.push_back(pos);
        cur.mul_letter(p, l);
        pos += letter_weight(p, l);
    }
    if (!cur.is_identity()) throw std::invalid_argument("path is not closed");
    lv.total = pos;
    return lv;
}

struct BilipReport {
    bool embedded = true;
    std::size_t repeat_first = 0, repeat_second = 0;  // first repeated vertex pair
    bool complete = true;          // false when some pair exceeded the cap
    std::int64_t num = 0, den = 1;  // max d_S/d_X found (a lower bound if incomplete)
    std::size_t pair_i = 0, pair_j = 0;

    double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }
};

// max over vertex pairs of (distance along the loop) / (distance in G_L).
inline BilipReport loop_bilip_constant(const GroupParams& p, const PathWord& loop, int cap,
                                       std::size_t budget = bfs_budget_from_env()) {
    BilipReport rep;
    auto lv = loop_vertices(p, loop);
    const std::size_t N = lv.vertices.size();
    std::unordered_map<GroupElement, std::size_t> seen;
    for (std::size_t i = 0; i < N; ++i) {
        auto [it, ok] = seen.emplace(lv.vertices[i], i);
        if (!ok) {
            rep.embedded = false;
            rep.repeat_first = it->second;
            rep.repeat_second = i;
            return rep;
        }
    }
    std::unordered_map<GroupElement, std::optional<std::int64_t>> cache;
    rep.num = 0;
    rep.den = 1;
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i + 1; j < N; ++j) {
            std::int64_t arc = lv.position[j] - lv.position[i];
            std::int64_t ds = std::min(arc, lv.total - arc);
            GroupElement z = lv.vertices[i].inverse(p).times(p, lv.vertices[j]);
            auto it = cache.find(z);
            if (it == cache.end()) it = cache.emplace(z, pair_dist(p, GroupElement(), z, cap, budget)).first;
            if (!it->second) {
                rep.complete = false;
                continue;
            }
            std::int64_t dx = *it->second;
            if (static_cast<__int128>(ds) * rep.den > static_cast<__int128>(rep.num) * dx) {
                rep.num = ds;
                rep.den = dx;
                rep.pair_i = i;
                rep.pair_j = j;
            }
        }
    }
    std::int64_t g = std::gcd(rep.num, rep.den);
    if (g > 1) {
        rep.num /= g;
        rep.den /= g;
    }
    return rep;
}

class IncompleteVerification : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GeodesicLoopReport {
    bool geodesic = true;
    bool embedded = true;
    std::size_t pairs_checked = 0;
    std::size_t distinct_queries = 0;
    std::size_t failing_index = 0;  // first antipodal pair that is too close
    std::int64_t failing_distance = 0;
};

// Every antipodal vertex pair at distance exactly |loop|/2. A pair is
// confirmed by showing no path of length < |loop|/2 exists.
inline GeodesicLoopReport verify_geodesic_loop_report(const GroupParams& p, const PathWord& loop, int cap,
                                                      std::size_t budget = bfs_budget_from_env()) {
    auto lv = loop_vertices(p, loop);
    if (lv.total % 2 != 0) throw std::invalid_argument("loop has odd length");
    const std::int64_t half = lv.total / 2;
    if (cap < half)
        throw IncompleteVerification("cap " + std::to_string(cap) + " is below the antipodal distance " +
                                     std::to_string(half));
    GeodesicLoopReport rep;
    std::unordered_map<GroupElement, std::size_t> seen;
    for (std::size_t i = 0; i < lv.vertices.size(); ++i) {
        if (!seen.emplace(lv.vertices[i], i).second) {
            rep.embedded = false;
            rep.geodesic = false;
            rep.failing_index = i;
            return rep;
        }
    }
    std::map<std::int64_t, std::size_t> at;
    for (std::size_t i = 0; i < lv.position.size(); ++i) at[lv.position[i]] = i;
    std::unordered_map<GroupElement, std::optional<std::int64_t>> cache;
    for (std::size_t i = 0; i < lv.vertices.size(); ++i) {
        if (lv.position[i] >= half) break;
        auto it = at.find(lv.position[i] + half);
        if (it == at.end()) throw std::invalid_argument("antipode of a vertex is not a vertex");
        GroupElement z = lv.vertices[i].inverse(p).times(p, lv.vertices[it->second]);
        auto c = cache.find(z);
        if (c == cache.end()) {
            c = cache.emplace(z, pair_dist(p, GroupElement(), z, static_cast<int>(half - 1), budget)).first;
        }
        ++rep.pairs_checked;
        if (c->second) {
            rep.geodesic = false;
            rep.failing_index = i;
            rep.failing_distance = *c->second;
            break;
        }
    }
    rep.distinct_queries = cache.size();
    return rep;
}

inline bool verify_geodesic_loop(const GroupParams& p, const PathWord& loop, int cap,
                                 std::size_t budget = bfs_budget_from_env()) {
    return verify_geodesic_loop_report(p, loop, cap, budget).geodesic;
}

}  // namespace snowflake
