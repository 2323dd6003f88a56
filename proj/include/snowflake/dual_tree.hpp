#pragma once

#include "snowflake/bigint.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace snowflake {

// Dual tree of a corridor decomposition. Nodes are vertex regions carrying
// the total length of boundary arcs they contain; edges are corridors
// carrying the length of boundary they meet (their two stable-letter edges)
// and the corridor length in cells.
struct DualNode {
    std::string label;
    std::int64_t arc = 0;
};

struct DualEdge {
    std::size_t a = 0, b = 0;
    std::int64_t weight = 2;
    std::int64_t corridor = 0;
};

class HnnDualTree {
public:
    std::vector<DualNode> nodes;
    std::vector<DualEdge> edges;

    std::size_t add_node(std::string label, std::int64_t arc) {
        nodes.push_back({std::move(label), arc});
        return nodes.size() - 1;
    }
    std::size_t add_edge(std::size_t a, std::size_t b, std::int64_t weight, std::int64_t corridor) {
        edges.push_back({a, b, weight, corridor});
        return edges.size() - 1;
    }

    // Total boundary length: arcs plus corridor boundary weights.
    std::int64_t boundary_length() const {
        std::int64_t n = 0;
        for (const auto& v : nodes) n += v.arc;
        for (const auto& e : edges) n += e.weight;
        return n;
    }

    // Incident edge ids per node.
    std::vector<std::vector<std::size_t>> adjacency() const {
        std::vector<std::vector<std::size_t>> adj(nodes.size());
        for (std::size_t i = 0; i < edges.size(); ++i) {
            adj[edges[i].a].push_back(i);
            adj[edges[i].b].push_back(i);
        }
        return adj;
    }

    // Throws unless the graph is a nonempty tree with nonnegative weights.
    void validate() const {
        if (nodes.empty()) throw std::invalid_argument("dual tree has no nodes");
        if (edges.size() + 1 != nodes.size()) throw std::invalid_argument("dual tree edge count must be nodes - 1");
        for (const auto& v : nodes)
            if (v.arc < 0) throw std::invalid_argument("negative arc length at node " + v.label);
        for (const auto& e : edges) {
            if (e.a >= nodes.size() || e.b >= nodes.size() || e.a == e.b)
                throw std::invalid_argument("dual tree edge endpoint out of range");
            if (e.weight < 0 || e.corridor < 0) throw std::invalid_argument("negative edge weight");
        }
        auto adj = adjacency();
        std::vector<bool> seen(nodes.size(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (auto e : adj[v]) {
                std::size_t w = other(e, v);
                if (!seen[w]) {
                    seen[w] = true;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        if (count != nodes.size()) throw std::invalid_argument("dual tree is not connected");
    }

    std::size_t other(std::size_t edge, std::size_t v) const { return edges[edge].a == v ? edges[edge].b : edges[edge].a; }

    // Boundary length on the far side of edge e as seen from v, including
    // the edge's own weight.
    std::int64_t branch_length(std::size_t e, std::size_t v) const {
        auto adj = adjacency();
        return branch_length(adj, e, v);
    }

    std::int64_t branch_length(const std::vector<std::vector<std::size_t>>& adj, std::size_t e, std::size_t v) const {
        std::int64_t total = edges[e].weight;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{other(e, v), e}};
        while (!stack.empty()) {
            auto [w, from] = stack.back();
            stack.pop_back();
            total += nodes[w].arc;
            for (auto f : adj[w]) {
                if (f == from) continue;
                total += edges[f].weight;
                stack.push_back({other(f, w), f});
            }
        }
        return total;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        auto& jn = j["nodes"] = nlohmann::json::array();
        for (const auto& v : nodes) jn.push_back({{"label", v.label}, {"arc", v.arc}});
        auto& je = j["edges"] = nlohmann::json::array();
        for (const auto& e : edges)
            je.push_back({{"a", e.a}, {"b", e.b}, {"weight", e.weight}, {"corridor", e.corridor}});
        return j;
    }

    static HnnDualTree from_json(const nlohmann::json& j) {
        HnnDualTree t;
        for (const auto& v : j.at("nodes")) t.add_node(v.value("label", std::string()), v.at("arc").get<std::int64_t>());
        for (const auto& e : j.at("edges"))
            t.add_edge(e.at("a").get<std::size_t>(), e.at("b").get<std::size_t>(), e.value("weight", std::int64_t(2)),
                       e.value("corridor", std::int64_t(0)));
        t.validate();
        return t;
    }

    std::string to_dot() const {
        std::ostringstream os;
        os << "graph dual_tree {\n";
        for (std::size_t i = 0; i < nodes.size(); ++i)
            os << "  n" << i << " [label=\"" << nodes[i].label << "\\narc=" << nodes[i].arc << "\"];\n";
        for (const auto& e : edges)
            os << "  n" << e.a << " -- n" << e.b << " [label=\"w=" << e.weight << " c=" << e.corridor << "\"];\n";
        os << "}\n";
        return os.str();
    }
};

// Dual tree of the standard snowflake diagram of snowflake_loop(n): a
// central node with four corridors, each branch region splitting into two
// at every level, and level-0 leaves holding one a-edge each.
inline HnnDualTree snowflake_hnn_tree(int L, int n) {
    if (n < 1) throw std::invalid_argument("snowflake depth must be at least 1");
    HnnDualTree t;
    std::size_t root = t.add_node("central", 0);
    std::function<void(std::size_t, int, const std::string&)> grow = [&](std::size_t parent, int level,
                                                                         const std::string& name) {
        std::int64_t corridor = static_cast<std::int64_t>(ipow(L, static_cast<unsigned>(level)));
        std::size_t v = t.add_node(name, level == 0 ? 1 : 0);
        t.add_edge(parent, v, 2, corridor);
        if (level == 0) return;
        grow(v, level - 1, name + "0");
        grow(v, level - 1, name + "1");
    };
    for (int side = 0; side < 4; ++side) grow(root, n - 1, "b" + std::to_string(side) + ".");
    return t;
}

// A point of the tree: a node, or an interior point of an edge at parameter
// t in (0, 1) measured from edges[edge].a.
struct TreeLocation {
    bool on_edge = false;
    std::size_t vertex = 0;
    std::size_t edge = 0;
    double t = 0.0;
    double f = 0.0;
};

// f = (longest component of the boundary minus the preimage of the point)
// minus half the boundary length.
inline double central_f_vertex(const HnnDualTree& tree, std::size_t v) {
    auto adj = tree.adjacency();
    std::int64_t best = 0;
    for (auto e : adj[v]) best = std::max(best, tree.branch_length(adj, e, v));
    return static_cast<double>(best) - static_cast<double>(tree.boundary_length()) / 2.0;
}

inline double central_f_edge(const HnnDualTree& tree, std::size_t e, double t) {
    const auto& ed = tree.edges[e];
    auto adj = tree.adjacency();
    double w = static_cast<double>(ed.weight);
    double side_a = static_cast<double>(tree.branch_length(adj, e, ed.b)) - w + t * w;
    double side_b = static_cast<double>(tree.branch_length(adj, e, ed.a)) - w + (1 - t) * w;
    return std::max(side_a, side_b) - static_cast<double>(tree.boundary_length()) / 2.0;
}

// Walks from node 0 toward the heavy side until every complementary
// component is at most half the boundary.
inline TreeLocation find_central_region(const HnnDualTree& tree) {
    tree.validate();
    auto adj = tree.adjacency();
    const std::int64_t total = tree.boundary_length();
    std::size_t v = 0, came_from = SIZE_MAX;
    for (std::size_t steps = 0; steps <= tree.nodes.size(); ++steps) {
        std::size_t heavy = SIZE_MAX;
        std::int64_t W = 0;
        for (auto e : adj[v]) {
            std::int64_t b = tree.branch_length(adj, e, v);
            if (2 * b > total) heavy = e, W = b;
        }
        if (heavy == SIZE_MAX) return {false, v, 0, 0.0, central_f_vertex(tree, v)};
        if (heavy == came_from) throw std::logic_error("central region walk reversed direction");
        const auto& ed = tree.edges[heavy];
        // Point at which the near side reaches exactly half.
        double tstar = ed.weight == 0 ? 1.0 : (static_cast<double>(W) - total / 2.0) / static_cast<double>(ed.weight);
        if (tstar < 1.0) {
            double t = ed.a == v ? tstar : 1.0 - tstar;
            return {true, 0, heavy, t, central_f_edge(tree, heavy, t)};
        }
        came_from = heavy;
        v = tree.other(heavy, v);
    }
    throw std::logic_error("central region walk did not terminate");
}

inline std::string to_string(const HnnDualTree& tree, const TreeLocation& loc) {
    std::ostringstream os;
    if (loc.on_edge) {
        const auto& e = tree.edges[loc.edge];
        os << "edge " << loc.edge << " (" << tree.nodes[e.a].label << " -- " << tree.nodes[e.b].label
           << ") at t=" << loc.t;
    } else {
        os << "vertex " << loc.vertex << " (" << tree.nodes[loc.vertex].label << ")";
    }
    return os.str();
}

}  // namespace snowflake
