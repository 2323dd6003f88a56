#pragma once

#include "snowflake/filling.hpp"
#include "snowflake/paths.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace snowflake {

// Which recursive path a branch region is bounded by: sigma_{k,s} or
// sigma_{k,t}, read forward or reversed.
enum class BranchKind { s_forward, t_forward, s_reversed, t_reversed };

inline PathWord branch_path(const GroupParams& p, BranchKind kind, int level) {
    switch (kind) {
        case BranchKind::s_forward: return snowflake_path(p, level, 's');
        case BranchKind::t_forward: return snowflake_path(p, level, 't');
        case BranchKind::s_reversed: return snowflake_path(p, level, 's').inverse();
        case BranchKind::t_reversed: return snowflake_path(p, level, 't').inverse();
    }
    return {};
}

// Smallest depth m >= 1 with |a^{L^{n-m}}| + Lambda |a^{L^{n-m-1}}| <= |gamma|/2,
// or n when no depth below n satisfies it.
inline int cap_off_depth(const GroupParams& p, int n, std::int64_t Lambda) {
    if (n < 1) throw std::invalid_argument("depth must be at least 1");
    const BigInt half = dist_a_power(p, ipow(p.L, static_cast<unsigned>(n)));  // |gamma| / 2
    for (int m = 1; m < n; ++m) {
        BigInt lhs = dist_a_power(p, ipow(p.L, static_cast<unsigned>(n - m))) + Lambda * dist_a_power(p, ipow(p.L, static_cast<unsigned>(n - m - 1)));
        if (lhs <= half) return m;
    }
    return n;
}

struct SnowflakeFill {
    Diagram diagram;
    PathWord loop;
    int depth = 0;
    int cap_depth = 0;
    std::int64_t Lambda = 0;
    std::size_t central_cells = 0;
    std::size_t grid_cells = 0;
    std::size_t strip_cells = 0;
    std::size_t cap_cells = 0;
};

namespace detail {

struct Branch {
    GroupElement frame;        // start vertex of the bounding path
    BranchKind kind;
    int level = 0;             // the path is sigma_{level}
    std::vector<Arc> side;     // a-side arcs in path direction
    std::vector<BigInt> exps;  // a-exponents of those arcs
};

inline Letter escape_letter(Flavor f) { return f == Flavor::x ? letters::s : letters::t; }

// Branch bounded by the inner paths of escape arcs e w e^-1 along a side.
inline Branch escape_branch(const GroupParams& p, const std::vector<Arc>& arcs, const std::vector<BigInt>& exps,
                            Flavor f, BranchKind kind, int level) {
    Letter e = escape_letter(f);
    Branch b{GroupElement(), kind, level, {}, exps};
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const auto& w = arcs[i].word.letters;
        if (w.size() < 2 || w.front() != e || w.back() != e.inv())
            throw std::logic_error("escape arc does not have the form e w e^-1");
        GroupElement v = arcs[i].from;
        v.mul_letter(p, e);
        if (i == 0) b.frame = v;
        b.side.push_back({std::move(v), arcs[i].word.sub(1, w.size() - 1)});
    }
    return b;
}

inline void branch_axes(BranchKind kind, Flavor& U, Flavor& V, int& sign) {
    switch (kind) {
        case BranchKind::s_forward: U = Flavor::x, V = Flavor::y, sign = 1; break;
        case BranchKind::t_forward: U = Flavor::y, V = Flavor::x, sign = 1; break;
        case BranchKind::s_reversed: U = Flavor::y, V = Flavor::x, sign = -1; break;
        case BranchKind::t_reversed: U = Flavor::x, V = Flavor::y, sign = -1; break;
    }
}

}  // namespace detail

// Fills snowflake_loop(n) by subdividing the central diamond into Lambda^2
// pieces, gridding the branch triangles over the propagated subdivision and
// capping branches at the cap-off depth with a single cell each.
inline SnowflakeFill subdivide_snowflake(const GroupParams& p, int n, std::int64_t Lambda = 0) {
    if (n < 1) throw std::invalid_argument("snowflake depth must be at least 1, got " + std::to_string(n));
    if (Lambda == 0) Lambda = p.L;
    if (Lambda < 1) throw std::invalid_argument("Lambda must be positive");
    SnowflakeFill out;
    out.depth = n;
    out.Lambda = Lambda;
    out.loop = snowflake_loop(p, n);
    out.cap_depth = cap_off_depth(p, n, Lambda);
    GeodesicCache geo(p);
    Diagram& d = out.diagram;
    const GroupElement id;

    // Central diamond x^N y^N x^-N y^-N.
    const BigInt N = ipow(p.L, static_cast<unsigned>(n - 1));
    const std::int64_t K = N < Lambda ? static_cast<std::int64_t>(N) : Lambda;
    auto alpha = detail::partial_sums(even_subdivision(N, K));
    auto pt = [&](const BigInt& i, const BigInt& j) { return HPoint::x_power(i) + HPoint::y_power(p, j); };
    for (std::size_t i = 1; i < alpha.size(); ++i)
        for (std::size_t j = 1; j < alpha.size(); ++j)
            d.cells.push_back(detail::make_cell(
                "central", {geo.arc(pt(alpha[i - 1], alpha[j - 1]), pt(alpha[i], alpha[j - 1])),
                            geo.arc(pt(alpha[i], alpha[j - 1]), pt(alpha[i], alpha[j])),
                            geo.arc(pt(alpha[i], alpha[j]), pt(alpha[i - 1], alpha[j])),
                            geo.arc(pt(alpha[i - 1], alpha[j]), pt(alpha[i - 1], alpha[j - 1]))}));
    out.central_cells = d.cells.size();

    std::vector<detail::Branch> work;
    {
        std::vector<Arc> s1, s2, s3, s4;
        std::vector<BigInt> e1, e2, e3, e4;
        const std::size_t k = alpha.size() - 1;
        for (std::size_t i = 1; i <= k; ++i) {
            s1.push_back(geo.arc(pt(alpha[i - 1], 0), pt(alpha[i], 0)));
            e1.push_back(alpha[i] - alpha[i - 1]);
            s2.push_back(geo.arc(pt(N, alpha[i - 1]), pt(N, alpha[i])));
            e2.push_back(alpha[i] - alpha[i - 1]);
        }
        for (std::size_t i = k; i >= 1; --i) {
            s3.push_back(geo.arc(pt(alpha[i], N), pt(alpha[i - 1], N)));
            e3.push_back(alpha[i - 1] - alpha[i]);
            s4.push_back(geo.arc(pt(0, alpha[i]), pt(0, alpha[i - 1])));
            e4.push_back(alpha[i - 1] - alpha[i]);
        }
        work.push_back(detail::escape_branch(p, s1, e1, Flavor::x, BranchKind::s_forward, n - 1));
        work.push_back(detail::escape_branch(p, s2, e2, Flavor::y, BranchKind::s_forward, n - 1));
        work.push_back(detail::escape_branch(p, s3, e3, Flavor::x, BranchKind::t_reversed, n - 1));
        work.push_back(detail::escape_branch(p, s4, e4, Flavor::y, BranchKind::t_reversed, n - 1));
    }

    for (int m = 1; !work.empty(); ++m) {
        std::vector<detail::Branch> next;
        for (auto& b : work) {
            // A level-0 branch is the single edge a^{+-1}, shared with its parent.
            if (b.level == 0) continue;
            if (m >= out.cap_depth) {
                std::vector<Arc> arcs{Arc{b.frame, branch_path(p, b.kind, b.level)}};
                for (auto it = b.side.rbegin(); it != b.side.rend(); ++it) arcs.push_back(detail::reversed(p, *it));
                d.cells.push_back(detail::make_cell("cap", std::move(arcs)));
                ++out.cap_cells;
                continue;
            }
            Flavor U = Flavor::x, V = Flavor::y;
            int sign = 1;
            detail::branch_axes(b.kind, U, V, sign);
            auto t = detail::partial_sums(b.exps);
            bool aligned = true;
            for (const auto& ti : t)
                if (floor_mod(ti, BigInt(p.L)) != 0) aligned = false;
            std::vector<BigInt> idx;
            for (const auto& ti : t) idx.push_back(detail::round_to_multiple(ti, p.L) / p.L);
            auto P = [&](const BigInt& a) { return HPoint::a_power(a); };
            const BigInt LL(p.L);
            std::size_t before = d.cells.size();
            if (!aligned) {
                for (std::size_t i = 1; i < t.size(); ++i)
                    d.cells.push_back(detail::make_cell(
                        "strip", {detail::reversed(p, b.side[i - 1]), geo.arc(b.frame, P(t[i - 1]), P(LL * idx[i - 1])),
                                  geo.arc(b.frame, P(LL * idx[i - 1]), P(LL * idx[i])),
                                  geo.arc(b.frame, P(LL * idx[i]), P(t[i]))}));
                out.strip_cells += d.cells.size() - before;
            }
            before = d.cells.size();
            detail::lattice_triangle(
                p, geo, d, b.frame, HPoint(), U, V, idx,
                [&](std::size_t c) {
                    if (aligned) return detail::reversed(p, b.side[c - 1]);
                    return geo.arc(b.frame, P(LL * idx[c]), P(LL * idx[c - 1]));
                },
                "branch");
            out.grid_cells += d.cells.size() - before;

            auto q = [&](const BigInt& i, const BigInt& j) { return flavor_power(p, U, i) + flavor_power(p, V, j); };
            std::vector<Arc> su, sv;
            std::vector<BigInt> eu, ev;
            const BigInt& last = idx.back();
            for (std::size_t c = 1; c < idx.size(); ++c) {
                su.push_back(geo.arc(b.frame, q(idx[c - 1], 0), q(idx[c], 0)));
                eu.push_back(idx[c] - idx[c - 1]);
                sv.push_back(geo.arc(b.frame, q(last, idx[c - 1]), q(last, idx[c])));
                ev.push_back(idx[c] - idx[c - 1]);
            }
            // Zero-length pieces carry no escape; drop them.
            auto prune = [](std::vector<Arc>& arcs, std::vector<BigInt>& exps) {
                std::vector<Arc> a2;
                std::vector<BigInt> e2;
                for (std::size_t i = 0; i < arcs.size(); ++i)
                    if (exps[i] != 0) a2.push_back(std::move(arcs[i])), e2.push_back(exps[i]);
                arcs = std::move(a2);
                exps = std::move(e2);
            };
            prune(su, eu);
            prune(sv, ev);
            next.push_back(detail::escape_branch(p, su, eu, U, b.kind, b.level - 1));
            next.push_back(detail::escape_branch(p, sv, ev, V, b.kind, b.level - 1));
        }
        work = std::move(next);
    }
    return out;
}

}  // namespace snowflake
