#include "snowflake/bfs.hpp"
#include "snowflake/distortion.hpp"
#include "snowflake/dual_tree.hpp"
#include "snowflake/filling.hpp"
#include "snowflake/paths.hpp"
#include "snowflake/snowflake_fill.hpp"
#include "snowflake/vertex_group.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace snowflake;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CliConfig {
    int L = 6;
    std::string format = "plain";
    std::size_t budget = 0;
    int cap = -1;
};

BigInt big(const std::string& s, const char* flag) {
    try {
        return BigInt(s);
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + ": not an integer: " + s);
    }
}

json big_json(const BigInt& v) {
    if (abs_value(v) < (BigInt(1) << 62)) return static_cast<std::int64_t>(v);
    return to_string(v);
}

json big_list(const std::vector<BigInt>& v) {
    json j = json::array();
    for (const auto& x : v) j.push_back(big_json(x));
    return j;
}

json read_json_file(const std::string& path, const char* flag) {
    std::ifstream in(path);
    if (!in) throw UsageError(std::string(flag) + ": cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError(std::string(flag) + ": invalid JSON: " + e.what());
    }
}

Flavor flavor_flag(const std::string& s, const char* flag) {
    try {
        return parse_flavor(s);
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + ": expected a, x or y, got " + s);
    }
}

PathWord path_flag(const std::string& s, const char* flag) {
    try {
        return parse_path(s);
    } catch (const std::exception& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

void print_fill(const CliConfig& cfg, const GroupParams& p, const Diagram& d, json extra) {
    if (cfg.format == "json") {
        json j = d.to_json(p);
        for (auto& [k, v] : extra.items()) j[k] = v;
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::cout << "area: " << d.area() << "\nmesh: " << d.mesh(p) << '\n';
    for (auto& [k, v] : extra.items()) std::cout << k << ": " << v.dump() << '\n';
}

// Polygon file: {"kind", "corners": [[u,v],...], "flavors", "exponents", "D",
// "given": [[...], ...], "Lambda", "E"}.
int run_fill_polygon(const CliConfig& cfg, const GroupParams& p, const std::string& kind_name, const std::string& file) {
    json j = read_json_file(file, "--polygon");
    PolygonKind kind;
    if (kind_name == "bigon") kind = PolygonKind::bigon;
    else if (kind_name == "triangle") kind = PolygonKind::triangle;
    else kind = PolygonKind::diamond;
    auto bigv = [](const json& v) { return v.is_string() ? BigInt(v.get<std::string>()) : BigInt(v.get<std::int64_t>()); };
    std::vector<HPoint> corners;
    std::vector<Flavor> flavors;
    std::vector<BigInt> exps;
    std::vector<Subdivision> given;
    std::int64_t D, Lambda;
    BigInt E;
    try {
        for (const auto& c : j.at("corners")) corners.emplace_back(bigv(c.at(0)), bigv(c.at(1)));
        for (const auto& f : j.at("flavors")) flavors.push_back(parse_flavor(f.get<std::string>()));
        for (const auto& e : j.at("exponents")) exps.push_back(bigv(e));
        for (const auto& s : j.at("given")) {
            Subdivision sub;
            for (const auto& e : s) sub.push_back(bigv(e));
            given.push_back(std::move(sub));
        }
        D = j.at("D").get<std::int64_t>();
        Lambda = j.at("Lambda").get<std::int64_t>();
        E = bigv(j.at("E"));
    } catch (const std::exception& e) {
        throw UsageError(std::string("--polygon: ") + e.what());
    }
    std::size_t need_given = kind == PolygonKind::diamond ? 2 : 1;
    if (given.size() != need_given) throw UsageError("--polygon: expected " + std::to_string(need_given) + " given subdivisions");
    ApproxPolygon poly;
    FillResult r;
    FillBounds b;
    try {
        poly = make_polygon(p, kind, corners, flavors, exps, D);
        if (kind == PolygonKind::bigon) {
            r = fill_bigon(p, poly, given[0], Lambda, E);
            b = bigon_bounds(p, D, Lambda, E);
        } else if (kind == PolygonKind::triangle) {
            r = fill_triangle(p, poly, given[0], Lambda, E);
            b = triangle_bounds(p, D, Lambda, E);
        } else {
            r = fill_diamond(p, poly, given[0], given[1], Lambda, E);
            b = diamond_bounds(p, D, Lambda, E);
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--polygon: ") + e.what());
    }
    auto bad = check_fill(p, r, b);
    json outs = json::array();
    for (const auto& s : r.outputs) outs.push_back(big_list(s));
    print_fill(cfg, p, r.diagram,
               {{"kind", kind_name},
                {"outputs", outs},
                {"bounds", {{"area", b.area}, {"mesh", b.mesh}, {"exponent", b.exponent}}},
                {"violations", bad}});
    return bad.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Word metric, geodesics, distortion and fillings in the snowflake groups G_L"};
    app.require_subcommand(1);
    CliConfig cfg;
    cfg.budget = bfs_budget_from_env();
    app.add_option("--L", cfg.L, "Group parameter, even and at least 6")->capture_default_str();
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"plain", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--budget", cfg.budget, "Breadth-first search state budget (env SNOWFLAKE_BFS_BUDGET)")
        ->check(CLI::PositiveNumber);
    app.add_option("--cap", cfg.cap, "Distance cap for pair searches (default: what the check needs)");

    auto sub = [&](const char* name, const char* desc) {
        auto* s = app.add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };

    std::string a_power, u_str, v_str, power_str, flavor_str = "a";
    auto* dist = sub("dist", "Word length of a^m, of g^k for a flavor g, or of a^u x^v");
    dist->add_option("--a-power", a_power, "m for a^m");
    dist->add_option("--u", u_str, "a-exponent of a^u x^v");
    dist->add_option("--v", v_str, "x-exponent of a^u x^v");
    dist->add_option("--power", power_str, "k for g^k with --flavor");
    dist->add_option("--flavor", flavor_str, "a, x or y")->capture_default_str();

    std::string m_str;
    auto* expr = sub("expr", "Geodesic expression of a^m");
    expr->add_option("--m", m_str, "Exponent")->required();

    auto* word = sub("word", "Geodesic word for a^m or a^u x^v");
    word->add_option("--m", m_str, "Exponent of a");
    word->add_option("--u", u_str, "a-exponent");
    word->add_option("--v", v_str, "x-exponent");

    std::int64_t table_max = 100;
    auto* table = sub("table", "Distortion table m, |g^m|, |g^m| / m^(1/alpha)");
    table->add_option("--max", table_max, "Largest m")->check(CLI::PositiveNumber)->capture_default_str();
    table->add_option("--flavor", flavor_str, "a, x or y")->capture_default_str();

    int mn_max = 10;
    auto* mn = sub("mn", "The sequence m_n with exact and predicted lengths");
    mn->add_option("--n", mn_max, "Largest n")->check(CLI::NonNegativeNumber)->capture_default_str();

    int depth = 1;
    std::string sf_flavor = "s";
    auto* sf = sub("snowflake", "Snowflake path or loop");
    sf->add_option("--n", depth, "Depth")->required();
    sf->add_option("--flavor", sf_flavor, "s, t or loop")->check(CLI::IsMember({"s", "t", "loop"}))->capture_default_str();

    std::string path_str;
    auto* vl = sub("verify-loop", "Check every antipodal vertex pair of a loop is at half its length");
    vl->add_option("--n", depth, "Snowflake loop depth");
    vl->add_option("--path", path_str, "Closed path instead of a snowflake loop");

    int radius = 3;
    auto* ball = sub("ball", "Breadth-first ball as JSON lines");
    ball->add_option("--radius", radius, "Radius")->check(CLI::Range(0, 250))->capture_default_str();

    std::string fill_kind, polygon_file;
    std::int64_t lambda = 0;
    auto* fill = sub("fill", "Fill an approximate polygon or a snowflake loop");
    fill->add_option("kind", fill_kind, "bigon, triangle, diamond or snowflake")
        ->required()
        ->check(CLI::IsMember({"bigon", "triangle", "diamond", "snowflake"}));
    fill->add_option("--polygon", polygon_file, "Polygon JSON file");
    fill->add_option("--n", depth, "Snowflake depth");
    fill->add_option("--lambda", lambda, "Central subdivision count (default L)");

    std::string tree_file;
    int tree_depth = 0;
    bool dot = false;
    auto* central = sub("central", "Central region of a corridor dual tree");
    central->add_option("--tree", tree_file, "Dual tree JSON file");
    central->add_option("--snowflake", tree_depth, "Use the dual tree of snowflake_loop(p)");
    central->add_flag("--dot", dot, "Print the tree in DOT instead");

    std::string r_str = "4";
    auto* enf = sub("enfilade", "Enfilade decomposition of a single escape");
    enf->add_option("--path", path_str, "Escape path")->required();
    enf->add_option("--R", r_str, "Growth parameter R > 2, integer, decimal or p/q")->capture_default_str();

    std::string c_str = "0", e_str = "0", b_str = "0";
    int budget_n = 0;
    auto* ab = sub("area-budget", "Area C + 4(E+B)(2^n - 1) + 2^(n+2) of the assembled filling");
    ab->add_option("--central", c_str, "Central filling area C")->capture_default_str();
    ab->add_option("--escape", e_str, "Escape filling area E")->capture_default_str();
    ab->add_option("--branch", b_str, "Branch filling area B")->capture_default_str();
    ab->add_option("--n", budget_n, "Depth")->required()->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        GroupParams p;
        try {
            p = params_new(cfg.L);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--L: ") + e.what());
        }
        std::cout.precision(12);

        if (dist->parsed()) {
            BigInt d;
            if (!a_power.empty()) {
                d = dist_a_power(p, big(a_power, "--a-power"));
            } else if (!u_str.empty() || !v_str.empty()) {
                d = dist_h(p, HPoint(big(u_str.empty() ? "0" : u_str, "--u"), big(v_str.empty() ? "0" : v_str, "--v")));
            } else if (!power_str.empty()) {
                d = dist_power(p, flavor_flag(flavor_str, "--flavor"), big(power_str, "--power"));
            } else {
                throw UsageError("dist: give --a-power, --u/--v or --power");
            }
            std::cout << d << '\n';
            return 0;
        }

        if (expr->parsed()) {
            BigInt m = big(m_str, "--m");
            if (m == 0) throw UsageError("--m: must be nonzero");
            auto e = geodesic_expression(p, m);
            if (cfg.format == "json") {
                std::cout << json{{"m", big_json(m)}, {"digits", big_list(e.digits)}, {"length", big_json(e.path_length())}}.dump()
                          << '\n';
            } else {
                std::cout << "digits:";
                for (const auto& d : e.digits) std::cout << ' ' << d;
                std::cout << "\nlength: " << e.path_length() << '\n';
            }
            return 0;
        }

        if (word->parsed()) {
            PathWord w;
            if (!m_str.empty()) w = geodesic_word_a_power(p, big(m_str, "--m"));
            else if (!u_str.empty() || !v_str.empty())
                w = geodesic_word_h(p, HPoint(big(u_str.empty() ? "0" : u_str, "--u"), big(v_str.empty() ? "0" : v_str, "--v")));
            else throw UsageError("word: give --m or --u/--v");
            std::cout << to_string(w) << '\n';
            return 0;
        }

        if (table->parsed()) {
            Flavor g = flavor_flag(flavor_str, "--flavor");
            auto rows = distortion_table(p, table_max, g);
            if (cfg.format == "json") {
                for (const auto& r : rows) std::cout << json{{"m", r.m}, {"dist", r.dist}, {"ratio", r.ratio}}.dump() << '\n';
            } else {
                std::cout << distortion_csv(rows);
            }
            return distortion_violations(p, rows, g).empty() ? 0 : 1;
        }

        if (mn->parsed()) {
            auto rows = mn_sequence(p, mn_max);
            bool ok = true;
            if (cfg.format == "json") {
                json out = json::array();
                for (const auto& r : rows)
                    out.push_back({{"n", r.n}, {"m", big_json(r.m)}, {"dist", big_json(r.dist)},
                                   {"predicted", big_json(r.predicted)}, {"ratio", mn_ratio(p, r)}});
                std::cout << json{{"rows", out}, {"limit", mn_ratio_limit(p)}, {"gap", gap_checks(p).to_json()}}.dump(2) << '\n';
            } else {
                std::cout << "n,m,dist,predicted,ratio\n";
                for (const auto& r : rows)
                    std::cout << r.n << ',' << r.m << ',' << r.dist << ',' << r.predicted << ',' << mn_ratio(p, r) << '\n';
            }
            for (const auto& r : rows) ok = ok && r.dist == r.predicted;
            return ok ? 0 : 1;
        }

        if (sf->parsed()) {
            if (depth < 1) throw UsageError("--n: must be at least 1");
            PathWord w = sf_flavor == "loop" ? snowflake_loop(p, depth) : snowflake_path(p, depth, sf_flavor[0]);
            std::cout << to_string(w) << '\n';
            return 0;
        }

        if (vl->parsed()) {
            PathWord loop;
            if (!path_str.empty()) loop = path_flag(path_str, "--path");
            else {
                if (depth < 1) throw UsageError("--n: must be at least 1");
                loop = snowflake_loop(p, depth);
            }
            if (!is_closed(p, loop)) throw UsageError("--path: path is not closed");
            std::int64_t half = loop.length(p) / 2;
            int cap = cfg.cap >= 0 ? cfg.cap : static_cast<int>(half);
            GeodesicLoopReport rep;
            try {
                rep = verify_geodesic_loop_report(p, loop, cap, cfg.budget);
            } catch (const IncompleteVerification& e) {
                throw UsageError(std::string("--cap: ") + e.what());
            } catch (const std::invalid_argument& e) {
                throw UsageError(std::string("--path: ") + e.what());
            }
            std::cout << "geodesic: " << (rep.geodesic ? "true" : "false") << '\n';
            std::cout << "length: " << loop.length(p) << "\npairs checked: " << rep.pairs_checked << '\n';
            if (!rep.geodesic) {
                if (!rep.embedded) std::cout << "counterexample: vertex " << rep.failing_index << " repeats\n";
                else
                    std::cout << "counterexample: vertex " << rep.failing_index << " is at distance "
                              << rep.failing_distance << " from its antipode, below " << half << '\n';
                return 1;
            }
            return 0;
        }

        if (ball->parsed()) {
            auto b = bfs_ball(p, radius, cfg.budget);
            b.for_each([&](const SmallElement& g, int d) {
                std::cout << json{{"element", normal_form_string(to_big(g))}, {"distance", d}}.dump() << '\n';
            });
            return b.parity_violations() == 0 ? 0 : 1;
        }

        if (fill->parsed()) {
            if (fill_kind == "snowflake") {
                if (depth < 1) throw UsageError("--n: must be at least 1");
                auto f = subdivide_snowflake(p, depth, lambda);
                std::int64_t half = f.loop.length(p) / 2;
                bool ok = f.diagram.count_nontrivial(p) == 0 && f.diagram.chain_matches(p, GroupElement(), f.loop);
                print_fill(cfg, p, f.diagram,
                           {{"depth", f.depth},
                            {"cap_depth", f.cap_depth},
                            {"half_length", half},
                            {"central_cells", f.central_cells},
                            {"grid_cells", f.grid_cells},
                            {"strip_cells", f.strip_cells},
                            {"cap_cells", f.cap_cells},
                            {"consistent", ok}});
                return ok ? 0 : 1;
            }
            if (polygon_file.empty()) throw UsageError("--polygon: required for " + fill_kind);
            return run_fill_polygon(cfg, p, fill_kind, polygon_file);
        }

        if (central->parsed()) {
            HnnDualTree tree;
            if (!tree_file.empty()) {
                try {
                    tree = HnnDualTree::from_json(read_json_file(tree_file, "--tree"));
                } catch (const std::invalid_argument& e) {
                    throw UsageError(std::string("--tree: ") + e.what());
                }
            } else if (tree_depth >= 1) {
                tree = snowflake_hnn_tree(p.L, tree_depth);
            } else {
                throw UsageError("central: give --tree or --snowflake");
            }
            if (dot) {
                std::cout << tree.to_dot();
                return 0;
            }
            auto loc = find_central_region(tree);
            if (cfg.format == "json") {
                json j{{"on_edge", loc.on_edge}, {"f", loc.f}, {"boundary_length", tree.boundary_length()}};
                if (loc.on_edge) j["edge"] = loc.edge, j["t"] = loc.t;
                else j["vertex"] = loc.vertex;
                std::cout << j.dump() << '\n';
            } else {
                std::cout << "central: " << to_string(tree, loc) << "\nf: " << loc.f << '\n';
            }
            return loc.f <= 0 ? 0 : 1;
        }

        if (enf->parsed()) {
            Rational R;
            try {
                R = Rational::parse(r_str);
            } catch (const std::exception&) {
                throw UsageError("--R: not a rational: " + r_str);
            }
            EnfiladeDecomposition d;
            try {
                d = enfilade_decompose(p, path_flag(path_str, "--path"), R);
            } catch (const std::invalid_argument& e) {
                throw UsageError(std::string("enfilade: ") + e.what());
            }
            json eps = json::array(), alphas = json::array(), betas = json::array(), flavors = json::array();
            for (auto l : d.epsilons) eps.push_back(to_string(PathWord({l})));
            for (const auto& w : d.alphas) alphas.push_back(to_string(w));
            for (const auto& w : d.betas) betas.push_back(to_string(w));
            for (auto f : d.flavors) flavors.push_back(flavor_name(f));
            json j{{"R", R.str()},           {"n", d.n()},         {"epsilons", eps},
                   {"alphas", alphas},       {"betas", betas},     {"end", to_string(d.end)},
                   {"flavors", flavors},     {"exponents", big_list(d.exponents)},
                   {"lengths", d.lengths},   {"inner_lengths", d.inner_lengths},
                   {"end_dominates", enfilade_end_dominates(p, d, R)}};
            std::cout << j.dump(cfg.format == "json" ? 2 : -1) << '\n';
            return 0;
        }

        if (ab->parsed()) {
            std::cout << area_budget(big(c_str, "--central"), big(e_str, "--escape"), big(b_str, "--branch"), budget_n)
                      << '\n';
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << " (raise --budget)\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
