#pragma once

#include "snowflake/diagram.hpp"
#include "snowflake/vertex_group.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace snowflake {

enum class PolygonKind { bigon, triangle, diamond };

inline const char* polygon_kind_name(PolygonKind k) {
    switch (k) {
        case PolygonKind::bigon: return "bigon";
        case PolygonKind::triangle: return "triangle";
        case PolygonKind::diamond: return "diamond";
    }
    return "?";
}

// Closed polygon of flavor-power sides joined by short corner paths. Side i
// runs from corners[i] to corners[i] + flavors[i]^exponents[i]; corner path i
// runs from there to corners[i+1].
struct ApproxPolygon {
    PolygonKind kind = PolygonKind::bigon;
    std::vector<HPoint> corners;
    std::vector<Flavor> flavors;
    std::vector<BigInt> exponents;
    std::vector<PathWord> corner_paths;
    std::int64_t D = 0;

    std::size_t sides() const { return corners.size(); }
    HPoint side_end(const GroupParams& p, std::size_t i) const {
        return corners[i] + flavor_power(p, flavors[i], exponents[i]);
    }
};

inline std::size_t polygon_side_count(PolygonKind k) {
    return k == PolygonKind::bigon ? 2 : k == PolygonKind::triangle ? 3 : 4;
}

// Fills in geodesic corner paths for the gaps of a polygon.
inline ApproxPolygon make_polygon(const GroupParams& p, PolygonKind kind, std::vector<HPoint> corners,
                                  std::vector<Flavor> flavors, std::vector<BigInt> exponents, std::int64_t D) {
    ApproxPolygon poly{kind, std::move(corners), std::move(flavors), std::move(exponents), {}, D};
    GeodesicCache geo(p);
    for (std::size_t i = 0; i < poly.sides(); ++i)
        poly.corner_paths.push_back(geo.word(poly.corners[(i + 1) % poly.sides()] - poly.side_end(p, i)));
    return poly;
}

// Structural check: side count and flavor pattern for the kind, and each
// corner path is an H-path of length at most D closing its gap.
inline void validate_polygon(const GroupParams& p, const ApproxPolygon& poly) {
    std::size_t n = polygon_side_count(poly.kind);
    if (poly.corners.size() != n || poly.flavors.size() != n || poly.exponents.size() != n ||
        poly.corner_paths.size() != n)
        throw std::invalid_argument(std::string(polygon_kind_name(poly.kind)) + " needs " + std::to_string(n) +
                                    " corners, flavors, exponents and corner paths");
    if (poly.D < 0) throw std::invalid_argument("D must be nonnegative");
    if (poly.kind == PolygonKind::bigon && poly.flavors[0] != poly.flavors[1])
        throw std::invalid_argument("bigon sides must share a flavor");
    if (poly.kind == PolygonKind::triangle &&
        (poly.flavors[0] != Flavor::x || poly.flavors[1] != Flavor::y || poly.flavors[2] != Flavor::a))
        throw std::invalid_argument("triangle sides must be x, y, a");
    if (poly.kind == PolygonKind::diamond && (poly.flavors[0] != Flavor::x || poly.flavors[1] != Flavor::y ||
                                              poly.flavors[2] != Flavor::x || poly.flavors[3] != Flavor::y))
        throw std::invalid_argument("diamond sides must be x, y, x, y");
    for (std::size_t i = 0; i < n; ++i) {
        const PathWord& w = poly.corner_paths[i];
        if (w.length(p) > poly.D)
            throw std::invalid_argument("corner path " + std::to_string(i) + " is longer than D");
        GroupElement g = reduce_word(p, w);
        if (!g.in_vertex_group() || g.tail() != poly.corners[(i + 1) % n] - poly.side_end(p, i))
            throw std::invalid_argument("corner path " + std::to_string(i) + " does not close its gap");
    }
}

// Signed exponents of consecutive segments of a side, in the side direction.
using Subdivision = std::vector<BigInt>;

inline BigInt subdivision_total(const Subdivision& s) {
    BigInt t = 0;
    for (const auto& e : s) t += e;
    return t;
}

inline BigInt subdivision_max(const Subdivision& s) {
    BigInt m = 0;
    for (const auto& e : s) m = std::max(m, abs_value(e));
    return m;
}

inline void validate_subdivision(const Subdivision& s, const BigInt& side, std::int64_t Lambda, const BigInt& E,
                                 const char* what) {
    std::string name(what);
    if (s.empty()) throw std::invalid_argument(name + ": subdivision is empty");
    if (static_cast<std::int64_t>(s.size()) > Lambda)
        throw std::invalid_argument(name + ": " + std::to_string(s.size()) + " segments exceed Lambda = " +
                                    std::to_string(Lambda));
    int sg = sign_of(side);
    for (const auto& e : s) {
        if (abs_value(e) > E) throw std::invalid_argument(name + ": segment exponent " + to_string(e) + " exceeds E");
        if (sign_of(e) != 0 && sign_of(e) != sg)
            throw std::invalid_argument(name + ": segments must run in the side direction");
    }
    if (subdivision_total(s) != side) throw std::invalid_argument(name + ": segments do not sum to the side exponent");
}

// Splits m into n segments differing by at most one, larger ones first.
inline Subdivision even_subdivision(const BigInt& m, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("segment count must be positive");
    BigInt am = abs_value(m);
    BigInt q = am / n, r = am % n;
    int sg = sign_of(m);
    Subdivision s;
    for (std::int64_t i = 0; i < n; ++i) s.push_back(sg * (q + (BigInt(i) < r ? 1 : 0)));
    return s;
}

// Points along a side: start, start + g^{e_1}, ..., start + g^{e_1+...+e_k}.
inline std::vector<HPoint> subdivision_points(const GroupParams& p, const HPoint& start, Flavor g,
                                              const Subdivision& s) {
    std::vector<HPoint> pts{start};
    BigInt acc = 0;
    for (const auto& e : s) {
        acc += e;
        pts.push_back(start + flavor_power(p, g, acc));
    }
    return pts;
}

// ---------------------------------------------------------------- snapping

struct SnapResult {
    ApproxPolygon polygon;     // the true polygon, D = 0
    BigInt max_gap = 0;        // largest distance between corresponding points
    std::vector<BigInt> gaps;  // per corresponding pair
    BigInt bound = 0;          // 2D+L for triangles, D+3L/2 for diamonds
};

namespace detail {

// Intersection of the x-line through c with the y-line through d. Requires
// c.u = d.u mod L.
inline HPoint x_meet_y(const GroupParams& p, const HPoint& c, const HPoint& d) {
    BigInt du = c.u - d.u;
    if (floor_mod(du, BigInt(p.L)) != 0) throw std::logic_error("x_meet_y: lines do not meet");
    return HPoint(c.u, d.v - du / p.L);
}

inline void record_gaps(const GroupParams& p, const ApproxPolygon& approx, SnapResult& r) {
    std::size_t n = approx.sides();
    for (std::size_t i = 0; i < n; ++i) {
        r.gaps.push_back(dist_h(p, approx.corners[i] - r.polygon.corners[i]));
        r.gaps.push_back(dist_h(p, approx.side_end(p, i) - r.polygon.side_end(p, i)));
    }
    for (const auto& g : r.gaps) r.max_gap = std::max(r.max_gap, g);
}

}  // namespace detail

// True triangle g0' x^M g1' y^M g2' a^{-LM} g0' near a D-approximate triangle.
inline SnapResult snap_triangle(const GroupParams& p, const ApproxPolygon& tri) {
    if (tri.kind != PolygonKind::triangle) throw std::invalid_argument("snap_triangle needs a triangle");
    const HPoint &g0 = tri.corners[0], &g1 = tri.corners[1], &g2 = tri.corners[2];
    HPoint g1s = g0 + xy_line_intersection(p, g1 - g0).point;
    HPoint g0s(g0.u, g2.v);
    BigInt M = g1s.v - g2.v;
    HPoint g2s = g0s + HPoint::a_power(BigInt(p.L) * M);
    SnapResult r;
    r.polygon = make_polygon(p, PolygonKind::triangle, {g0s, g1s, g2s}, {Flavor::x, Flavor::y, Flavor::a},
                             {M, M, -BigInt(p.L) * M}, 0);
    detail::record_gaps(p, tri, r);
    r.bound = 2 * tri.D + p.L;
    return r;
}

// True diamond g1' x^M h1' y^N g2' x^-M h2' y^-N g1' near a D-approximate one.
inline SnapResult snap_diamond(const GroupParams& p, const ApproxPolygon& dia) {
    if (dia.kind != PolygonKind::diamond) throw std::invalid_argument("snap_diamond needs a diamond");
    const HPoint &g1 = dia.corners[0], &h1 = dia.corners[1], &g2 = dia.corners[2], &h2 = dia.corners[3];
    HPoint h1s = g1 + xy_line_intersection(p, h1 - g1).point;
    BigInt p3 = xy_line_intersection(p, HPoint(g2.u - h1s.u, 0)).ell;
    HPoint g2s = detail::x_meet_y(p, g2 + HPoint::a_power(p3), h1s);
    BigInt p2 = xy_line_intersection(p, HPoint(h2.u - g1.u, 0)).ell;
    HPoint h2s = detail::x_meet_y(p, g2s, h2 + HPoint::a_power(p2));
    HPoint g1s = detail::x_meet_y(p, g1, h2s);
    BigInt M = h1s.v - g1s.v;
    BigInt N = (g2s.u - h1s.u) / p.L;
    SnapResult r;
    r.polygon = make_polygon(p, PolygonKind::diamond, {g1s, h1s, g2s, h2s},
                             {Flavor::x, Flavor::y, Flavor::x, Flavor::y}, {M, N, -M, -N}, 0);
    detail::record_gaps(p, dia, r);
    r.bound = dia.D + BigInt(3 * p.L / 2);
    return r;
}

// ---------------------------------------------------------------- fillings

struct FillResult {
    Diagram diagram;
    std::vector<Subdivision> outputs;  // output side subdivisions
    GroupElement start;                // base point of boundary
    PathWord boundary;                 // the subdivided boundary loop
};

struct FillBounds {
    double mesh = 0;
    std::size_t area = 0;
    double exponent = 0;
};

inline double e_root(const GroupParams& p, const BigInt& E) {
    return std::pow(static_cast<double>(E), 1.0 / p.alpha);
}

inline FillBounds bigon_bounds(const GroupParams& p, std::int64_t D, std::int64_t Lambda, const BigInt& E) {
    return {2 * (2 * p.C + 1) * D + 2 * p.C * e_root(p, E), static_cast<std::size_t>(Lambda),
            static_cast<double>(E) + p.L * std::pow(static_cast<double>(D), p.alpha)};
}

inline FillBounds triangle_bounds(const GroupParams& p, std::int64_t D, std::int64_t Lambda, const BigInt& E) {
    return {4 * p.C + (6 * p.C + 2) * D + 2 * p.C * e_root(p, E),
            static_cast<std::size_t>((Lambda * Lambda + 9 * Lambda + 6) / 2),
            1 + static_cast<double>(E) / p.L + std::pow(static_cast<double>(D), p.alpha)};
}

inline FillBounds diamond_bounds(const GroupParams& p, std::int64_t D, std::int64_t Lambda, const BigInt& E) {
    return {3.0 * p.L + (8 * p.C + 2) * D + 4 * p.C * e_root(p, E),
            static_cast<std::size_t>(Lambda * Lambda + 4 * Lambda + 4),
            static_cast<double>(E) + 2.0 * p.L * std::pow(static_cast<double>(D), p.alpha)};
}

namespace detail {

inline Cell make_cell(std::string tag, std::vector<Arc> arcs) { return Cell{std::move(arcs), std::move(tag)}; }

inline Arc reversed(const GroupParams& p, const Arc& a) {
    GroupElement end = a.from;
    end.mul_word(p, a.word);
    return {std::move(end), a.word.inverse()};
}

// Bigon between a bottom side B0 g^{s_1}...g^{s_k} and a top side running
// from h by g^{m1}. corner_end joins the bottom end to h and corner_start
// joins the top end to B0. Returns the top subdivision read from h.
inline Subdivision bigon_core(const GroupParams& p, GeodesicCache& geo, Diagram& out, const std::string& tag,
                              const HPoint& B0, Flavor g, const Subdivision& bottom, const HPoint& h,
                              const BigInt& m1, const Arc& corner_end, const Arc& corner_start) {
    const std::size_t k = bottom.size();
    const int sigma = sign_of(subdivision_total(bottom)) < 0 ? -1 : 1;
    std::vector<BigInt> s{0};
    for (const auto& e : bottom) s.push_back(s.back() + e);
    std::vector<HPoint> B, T;
    for (const auto& si : s) {
        B.push_back(B0 + flavor_power(p, g, si));
        T.push_back(h + flavor_power(p, g, BigInt(m1 + si)));
    }
    // Last index whose normalized partial sum lies in [0, -m1].
    std::size_t pidx = 0;
    for (std::size_t i = 0; i < k; ++i)
        if (sigma * s[i] <= -sigma * m1) pidx = i;
    const PathWord delta = corner_start.word.inverse();  // B_i to T_i, translated
    auto delta_arc = [&](std::size_t i) { return Arc{GroupElement(B[i]), delta}; };
    for (std::size_t i = 1; i <= pidx; ++i)
        out.cells.push_back(make_cell(tag + ":strip", {geo.arc(B[i - 1], B[i]), delta_arc(i), geo.arc(T[i], T[i - 1]),
                                                       reversed(p, delta_arc(i - 1))}));
    auto rho = [&](std::size_t i) { return i == k ? corner_end : geo.arc(B[i], h); };
    for (std::size_t i = pidx + 1; i <= k; ++i) {
        if (i == pidx + 1) {
            out.cells.push_back(make_cell(tag + ":fan", {geo.arc(B[i - 1], B[i]), rho(i), geo.arc(h, T[pidx]),
                                                         reversed(p, delta_arc(pidx))}));
        } else {
            out.cells.push_back(
                make_cell(tag + ":fan", {geo.arc(B[i - 1], B[i]), rho(i), reversed(p, rho(i - 1))}));
        }
    }
    Subdivision top{m1 + s[pidx]};
    for (std::size_t i = pidx; i >= 1; --i) top.push_back(-(s[i] - s[i - 1]));
    return top;
}

inline Subdivision reverse_negate(const Subdivision& s) {
    Subdivision r;
    for (auto it = s.rbegin(); it != s.rend(); ++it) r.push_back(-*it);
    return r;
}

inline Subdivision diffs(const std::vector<BigInt>& pts) {
    Subdivision s;
    for (std::size_t i = 1; i < pts.size(); ++i) s.push_back(pts[i] - pts[i - 1]);
    return s;
}

inline std::vector<BigInt> partial_sums(const Subdivision& s) {
    std::vector<BigInt> out{0};
    for (const auto& e : s) out.push_back(out.back() + e);
    return out;
}

// Boundary loop word: subdivided sides joined by corner paths.
inline PathWord polygon_boundary(const GroupParams& p, GeodesicCache& geo, const ApproxPolygon& poly,
                                 const std::vector<Subdivision>& subs) {
    PathWord w;
    for (std::size_t i = 0; i < poly.sides(); ++i) {
        auto pts = subdivision_points(p, poly.corners[i], poly.flavors[i], subs[i]);
        for (std::size_t j = 1; j < pts.size(); ++j) w += geo.word(pts[j] - pts[j - 1]);
        w += poly.corner_paths[i];
    }
    return w;
}

// Cells of the lattice grid on (x,y) coordinates from origin o. Point (i,j)
// is o + U^i V^j. Quads cover cols > rows; diag adds the triangles under the
// diagonal whose third side is an a-arc supplied by diag_arc(c).
template <class DiagArc>
void lattice_triangle(const GroupParams& p, GeodesicCache& geo, Diagram& out, const GroupElement& frame,
                      const HPoint& o, Flavor U, Flavor V, const std::vector<BigInt>& n, DiagArc&& diag_arc,
                      const std::string& tag) {
    auto pt = [&](const BigInt& i, const BigInt& j) { return o + flavor_power(p, U, i) + flavor_power(p, V, j); };
    for (std::size_t c = 1; c < n.size(); ++c) {
        for (std::size_t r = 1; r < c; ++r)
            out.cells.push_back(make_cell(tag + ":grid", {geo.arc(frame, pt(n[c - 1], n[r - 1]), pt(n[c], n[r - 1])),
                                                           geo.arc(frame, pt(n[c], n[r - 1]), pt(n[c], n[r])),
                                                           geo.arc(frame, pt(n[c], n[r]), pt(n[c - 1], n[r])),
                                                           geo.arc(frame, pt(n[c - 1], n[r]), pt(n[c - 1], n[r - 1]))}));
        out.cells.push_back(make_cell(tag + ":diag", {geo.arc(frame, pt(n[c - 1], n[c - 1]), pt(n[c], n[c - 1])),
                                                       geo.arc(frame, pt(n[c], n[c - 1]), pt(n[c], n[c])),
                                                       diag_arc(c)}));
    }
}

inline BigInt round_to_multiple(const BigInt& t, int L) {
    // nearest multiple of L, halves rounded up
    return floor_div(BigInt(2 * t + L), BigInt(2 * L)) * L;
}

}  // namespace detail

inline FillResult fill_bigon(const GroupParams& p, const ApproxPolygon& poly, const Subdivision& given,
                             std::int64_t Lambda, const BigInt& E) {
    if (poly.kind != PolygonKind::bigon) throw std::invalid_argument("fill_bigon needs a bigon");
    validate_polygon(p, poly);
    validate_subdivision(given, poly.exponents[0], Lambda, E, "given side");
    GeodesicCache geo(p);
    FillResult r;
    Flavor g = poly.flavors[0];
    Arc corner_end{GroupElement(poly.side_end(p, 0)), poly.corner_paths[0]};
    Arc corner_start{GroupElement(poly.side_end(p, 1)), poly.corner_paths[1]};
    r.outputs.push_back(detail::bigon_core(p, geo, r.diagram, "bigon", poly.corners[0], g, given, poly.corners[1],
                                           poly.exponents[1], corner_end, corner_start));
    r.start = GroupElement(poly.corners[0]);
    r.boundary = detail::polygon_boundary(p, geo, poly, {given, r.outputs[0]});
    return r;
}

// Outputs: x-side then y-side subdivisions.
inline FillResult fill_triangle(const GroupParams& p, const ApproxPolygon& tri, const Subdivision& a_side,
                                std::int64_t Lambda, const BigInt& E) {
    if (tri.kind != PolygonKind::triangle) throw std::invalid_argument("fill_triangle needs a triangle");
    validate_polygon(p, tri);
    validate_subdivision(a_side, tri.exponents[2], Lambda, E, "a side");
    GeodesicCache geo(p);
    FillResult r;
    Diagram& d = r.diagram;
    const int L = p.L;
    SnapResult snap = snap_triangle(p, tri);
    const HPoint &g0 = tri.corners[0], &g1 = tri.corners[1], &g2 = tri.corners[2];
    const HPoint &g0s = snap.polygon.corners[0], &g1s = snap.polygon.corners[1], &g2s = snap.polygon.corners[2];
    const BigInt M = snap.polygon.exponents[0];
    const HPoint e0 = tri.side_end(p, 0), e1 = tri.side_end(p, 1), e2 = tri.side_end(p, 2);

    // a-side bigon: approximate a-side against the true one read from g0'.
    Subdivision top = detail::bigon_core(p, geo, d, "a-bigon", g2, Flavor::a, a_side, g0s, BigInt(L) * M,
                                         geo.arc(e2, g0s), geo.arc(g2s, g2));

    // Rounding strip to multiples of L, then the lattice grid.
    auto t = detail::partial_sums(top);
    std::vector<BigInt> n;
    for (const auto& ti : t) n.push_back(detail::round_to_multiple(ti, L) / L);
    auto P = [&](const BigInt& a) { return g0s + HPoint::a_power(a); };
    for (std::size_t i = 1; i < t.size(); ++i)
        d.cells.push_back(detail::make_cell(
            "strip", {geo.arc(P(t[i]), P(t[i - 1])), geo.arc(P(t[i - 1]), P(BigInt(L) * n[i - 1])),
                      geo.arc(P(BigInt(L) * n[i - 1]), P(BigInt(L) * n[i])), geo.arc(P(BigInt(L) * n[i]), P(t[i]))}));
    detail::lattice_triangle(
        p, geo, d, GroupElement(), g0s, Flavor::x, Flavor::y, n,
        [&](std::size_t c) { return geo.arc(P(BigInt(L) * n[c]), P(BigInt(L) * n[c - 1])); }, "triangle");

    // x and y bigons between the true sides (read backward) and the
    // approximate ones.
    Subdivision grid = detail::diffs(n);
    Subdivision xs = detail::bigon_core(p, geo, d, "x-bigon", g1s, Flavor::x, detail::reverse_negate(grid), g0,
                                        tri.exponents[0], geo.arc(g0s, g0), geo.arc(e0, g1s));
    Subdivision ys = detail::bigon_core(p, geo, d, "y-bigon", g2s, Flavor::y, detail::reverse_negate(grid), g1,
                                        tri.exponents[1], geo.arc(g1s, g1), geo.arc(e1, g2s));

    d.cells.push_back(detail::make_cell(
        "corner", {Arc{GroupElement(e0), tri.corner_paths[0]}, geo.arc(g1, g1s), geo.arc(g1s, e0)}));
    d.cells.push_back(detail::make_cell(
        "corner", {Arc{GroupElement(e1), tri.corner_paths[1]}, geo.arc(g2, g2s), geo.arc(g2s, e1)}));
    d.cells.push_back(detail::make_cell(
        "corner", {Arc{GroupElement(e2), tri.corner_paths[2]}, geo.arc(g0, g0s), geo.arc(g0s, e2)}));

    r.outputs = {xs, ys};
    r.start = GroupElement(g0);
    r.boundary = detail::polygon_boundary(p, geo, tri, {xs, ys, a_side});
    return r;
}

// Given subdivisions of side 0 (x) and side 1 (y); outputs side 2 (x) then
// side 3 (y).
inline FillResult fill_diamond(const GroupParams& p, const ApproxPolygon& dia, const Subdivision& x_side,
                               const Subdivision& y_side, std::int64_t Lambda, const BigInt& E) {
    if (dia.kind != PolygonKind::diamond) throw std::invalid_argument("fill_diamond needs a diamond");
    validate_polygon(p, dia);
    validate_subdivision(x_side, dia.exponents[0], Lambda, E, "x side");
    validate_subdivision(y_side, dia.exponents[1], Lambda, E, "y side");
    GeodesicCache geo(p);
    FillResult r;
    Diagram& d = r.diagram;
    SnapResult snap = snap_diamond(p, dia);
    const auto& c = dia.corners;
    const auto& cs = snap.polygon.corners;
    const BigInt M = snap.polygon.exponents[0], N = snap.polygon.exponents[1];
    std::vector<HPoint> e;
    for (std::size_t i = 0; i < 4; ++i) e.push_back(dia.side_end(p, i));

    Subdivision s0 = detail::bigon_core(p, geo, d, "x-bigon", c[0], Flavor::x, x_side, cs[1], -M,
                                        geo.arc(e[0], cs[1]), geo.arc(cs[0], c[0]));
    Subdivision s1 = detail::bigon_core(p, geo, d, "y-bigon", c[1], Flavor::y, y_side, cs[2], -N,
                                        geo.arc(e[1], cs[2]), geo.arc(cs[1], c[1]));
    auto alpha = detail::partial_sums(detail::reverse_negate(s0));
    auto beta = detail::partial_sums(detail::reverse_negate(s1));
    auto pt = [&](const BigInt& i, const BigInt& j) {
        return cs[0] + HPoint::x_power(i) + HPoint::y_power(p, j);
    };
    for (std::size_t i = 1; i < alpha.size(); ++i)
        for (std::size_t j = 1; j < beta.size(); ++j)
            d.cells.push_back(detail::make_cell(
                "grid", {geo.arc(pt(alpha[i - 1], beta[j - 1]), pt(alpha[i], beta[j - 1])),
                         geo.arc(pt(alpha[i], beta[j - 1]), pt(alpha[i], beta[j])),
                         geo.arc(pt(alpha[i], beta[j]), pt(alpha[i - 1], beta[j])),
                         geo.arc(pt(alpha[i - 1], beta[j]), pt(alpha[i - 1], beta[j - 1]))}));

    Subdivision s2 = detail::bigon_core(p, geo, d, "x-bigon", cs[3], Flavor::x, detail::diffs(alpha), c[2],
                                        dia.exponents[2], geo.arc(cs[2], c[2]), geo.arc(e[2], cs[3]));
    Subdivision s3 = detail::bigon_core(p, geo, d, "y-bigon", cs[0], Flavor::y, detail::diffs(beta), c[3],
                                        dia.exponents[3], geo.arc(cs[3], c[3]), geo.arc(e[3], cs[0]));
    for (std::size_t i = 0; i < 4; ++i) {
        std::size_t nx = (i + 1) % 4;
        d.cells.push_back(detail::make_cell(
            "corner", {Arc{GroupElement(e[i]), dia.corner_paths[i]}, geo.arc(c[nx], cs[nx]), geo.arc(cs[nx], e[i])}));
    }
    r.outputs = {s2, s3};
    r.start = GroupElement(c[0]);
    r.boundary = detail::polygon_boundary(p, geo, dia, {x_side, y_side, s2, s3});
    return r;
}

// Checks a fill result against the area, mesh and exponent bounds and the
// cell and chain consistency. Returns a list of violations.
inline std::vector<std::string> check_fill(const GroupParams& p, const FillResult& r, const FillBounds& b) {
    std::vector<std::string> bad;
    if (r.diagram.area() > b.area)
        bad.push_back("area " + std::to_string(r.diagram.area()) + " > " + std::to_string(b.area));
    auto mesh = r.diagram.mesh(p);
    if (static_cast<double>(mesh) > b.mesh + 1e-9)
        bad.push_back("mesh " + std::to_string(mesh) + " > " + std::to_string(b.mesh));
    for (const auto& s : r.outputs) {
        if (static_cast<double>(subdivision_max(s)) > b.exponent + 1e-9)
            bad.push_back("output exponent " + to_string(subdivision_max(s)) + " > " + std::to_string(b.exponent));
    }
    if (auto n = r.diagram.count_nontrivial(p)) bad.push_back(std::to_string(n) + " nontrivial or open cells");
    if (!r.diagram.chain_matches(p, r.start, r.boundary)) bad.push_back("cell boundaries do not sum to the loop");
    return bad;
}

// ---------------------------------------------------------------- area budget

// Worst-case area C + 4(E+B)(2^n - 1) + 2^{n+2} of the assembled filling.
inline BigInt area_budget(const BigInt& central, const BigInt& escape, const BigInt& branch, int n) {
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
    BigInt pow2 = BigInt(1) << n;
    return central + 4 * (escape + branch) * (pow2 - 1) + 4 * pow2;
}

// The same total by summing the contributions level by level: 4 * 2^i escape
// and branch fillings at each level i < n, plus 2^{n+2} leaf cells.
inline BigInt area_budget_by_summation(const BigInt& central, const BigInt& escape, const BigInt& branch, int n) {
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
    BigInt total = central;
    BigInt level = 4;
    for (int i = 0; i < n; ++i) {
        total += level * (escape + branch);
        level *= 2;
    }
    return total + level;
}

}  // namespace snowflake
