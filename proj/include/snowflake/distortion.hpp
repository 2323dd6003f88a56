#pragma once

#include "snowflake/vertex_group.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace snowflake {

// m^{1/alpha} = 2^{log_L m}. In double precision the relative error is far
// below 1e-10 for m up to 1e6.
inline double root_alpha(const GroupParams& p, double m) {
    return std::exp2(std::log(m) / std::log(static_cast<double>(p.L)));
}

// Natural log of a positive big integer without converting it to double.
inline double big_log(const BigInt& m) {
    if (m <= 0) throw std::invalid_argument("big_log needs a positive argument");
    std::size_t bits = boost::multiprecision::msb(m) + 1;
    if (bits <= 60) return std::log(static_cast<double>(m));
    std::size_t shift = bits - 60;
    BigInt top = m >> shift;
    return std::log(static_cast<double>(top)) + static_cast<double>(shift) * std::log(2.0);
}

struct DistortionRow {
    std::int64_t m = 0;
    std::int64_t dist = 0;
    double ratio = 0.0;
};

inline std::vector<DistortionRow> distortion_table(const GroupParams& p, std::int64_t m_max, Flavor g = Flavor::a) {
    if (m_max < 1) throw std::invalid_argument("m_max must be at least 1");
    std::vector<DistortionRow> rows;
    rows.reserve(static_cast<std::size_t>(m_max));
    for (std::int64_t m = 1; m <= m_max; ++m) {
        std::int64_t d = dist_power(p, g, m);
        rows.push_back({m, d, static_cast<double>(d) / root_alpha(p, static_cast<double>(m))});
    }
    return rows;
}

inline std::string distortion_csv(const std::vector<DistortionRow>& rows) {
    std::ostringstream os;
    os.precision(12);
    os << "m,dist,ratio\n";
    for (const auto& r : rows) os << r.m << ',' << r.dist << ',' << r.ratio << '\n';
    return os.str();
}

// Rows breaking 1 <= ratio < C, or the strict lower bound away from |m| = 1
// for g = a.
inline std::vector<DistortionRow> distortion_violations(const GroupParams& p, const std::vector<DistortionRow>& rows,
                                                        Flavor g = Flavor::a, double tol = 1e-10) {
    std::vector<DistortionRow> bad;
    for (const auto& r : rows) {
        bool low = r.ratio < 1.0 - tol;
        bool high = r.ratio >= p.C;
        bool strict = g == Flavor::a && r.m != 1 && r.ratio <= 1.0 + tol;
        bool exact_one = g == Flavor::a && r.m == 1 && std::abs(r.ratio - 1.0) > tol;
        if (low || high || strict || exact_one) bad.push_back(r);
    }
    return bad;
}

struct MnRow {
    int n = 0;
    BigInt m;
    BigInt dist;
    BigInt predicted;
};

// m_n = M L^n - M (L^{n-1} + ... + 1) with M = (L-2)/2, and the predicted
// length (2^{n+1} - 1) M + 2^{n+2} - 4.
inline std::vector<MnRow> mn_sequence(const GroupParams& p, int n_max) {
    if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
    const BigInt M = (p.L - 2) / 2;
    std::vector<MnRow> rows;
    BigInt Ln = 1, geo = 0;
    for (int n = 0; n <= n_max; ++n) {
        BigInt m = M * Ln - M * geo;
        BigInt pw = BigInt(1) << (n + 1);
        rows.push_back({n, m, dist_a_power(p, m), (pw - 1) * M + 2 * pw - 4});
        geo += Ln;
        Ln *= p.L;
    }
    return rows;
}

inline double mn_ratio(const GroupParams& p, const MnRow& r) {
    return std::exp(big_log(r.dist) - big_log(r.m) / p.alpha);
}

inline double mn_ratio_limit(const GroupParams& p) {
    const double L = p.L;
    double base = 0.5 * (L - 2) * (L - 2) / (L - 1);
    return (L + 2) / std::pow(base, std::log(2.0) / std::log(L));
}

struct GapReport {
    int L = 0;
    double limsup_proxy = 0;  // limit along m_n
    double liminf_proxy = 5;  // limit of |a^{L^n}| / 2^n
    double ratio = 0;
    double ratio_threshold = 0;
    bool ratio_holds = false;
    bool product_applicable = false;  // only claimed for L >= 10
    double product = 0;
    bool product_holds = false;
    bool ok() const { return ratio_holds && (!product_applicable || product_holds); }

    nlohmann::json to_json() const {
        return {{"L", L},
                {"limsup_proxy", limsup_proxy},
                {"liminf_proxy", liminf_proxy},
                {"proxies", "witness subsequences m_n and L^n, not the true limits"},
                {"ratio", ratio},
                {"ratio_threshold", ratio_threshold},
                {"ratio_holds", ratio_holds},
                {"product_applicable", product_applicable},
                {"product", product},
                {"product_holds", product_holds},
                {"ok", ok()}};
    }
};

inline GapReport gap_checks(const GroupParams& p) {
    GapReport g;
    g.L = p.L;
    g.limsup_proxy = mn_ratio_limit(p);
    g.ratio = g.limsup_proxy / g.liminf_proxy;
    g.ratio_threshold = (p.L + 6) / 10.0;
    g.ratio_holds = g.ratio > g.ratio_threshold;
    g.product_applicable = p.L >= 10;
    g.product = (g.liminf_proxy / g.limsup_proxy) * std::pow(2.0, 1.0 - 1.0 / p.alpha);
    g.product_holds = g.product < 1.0;
    return g;
}

// Both sides of (1/n)^{1-1/alpha} sum r_i^{1/alpha} <= (sum r_i)^{1/alpha}
// <= sum r_i^{1/alpha} for one tuple of nonnegative reals.
inline bool reverse_holder_holds(double alpha, const std::vector<double>& r, double tol = 1e-12) {
    if (r.empty()) return true;
    double sum = 0, roots = 0;
    for (double v : r) {
        if (v < 0) throw std::invalid_argument("reverse_holder_check needs nonnegative inputs");
        sum += v;
        roots += std::pow(v, 1.0 / alpha);
    }
    double mid = std::pow(sum, 1.0 / alpha);
    double lower = std::pow(1.0 / static_cast<double>(r.size()), 1.0 - 1.0 / alpha) * roots;
    double slack = tol * std::max(1.0, roots);
    return lower <= mid + slack && mid <= roots + slack;
}

inline bool reverse_holder_check(double alpha, const std::vector<std::vector<double>>& samples, double tol = 1e-12) {
    for (const auto& s : samples)
        if (!reverse_holder_holds(alpha, s, tol)) return false;
    return true;
}

struct AgScan {
    double max_ratio = 1.0;
    std::int64_t ell = 0;
    std::int64_t m = 0;
};

// Max of (|a^l| + |x^m|) / |a^l x^m| over lo <= l, m <= hi.
inline AgScan ag_ratio_scan(const GroupParams& p, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("empty scan range");
    AgScan best;
    for (std::int64_t l = lo; l <= hi; ++l) {
        std::int64_t al = dist_a_power(p, l);
        for (std::int64_t m = lo; m <= hi; ++m) {
            if (l == 0 && m == 0) continue;
            std::int64_t d = dist_h(p, BasicHPoint<std::int64_t>(l, m));
            double r = static_cast<double>(al + dist_power(p, Flavor::x, m)) / static_cast<double>(d);
            if (r > best.max_ratio) best = {r, l, m};
        }
    }
    return best;
}

}  // namespace snowflake
