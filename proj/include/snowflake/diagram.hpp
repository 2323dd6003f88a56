#pragma once

#include "snowflake/hnn_group.hpp"
#include "snowflake/path_word.hpp"
#include "snowflake/vertex_group.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace snowflake {

// A boundary arc: a path word read from a start vertex.
struct Arc {
    GroupElement from;
    PathWord word;
};

// A 2-cell given by a closed cycle of arcs.
struct Cell {
    std::vector<Arc> arcs;
    std::string tag;

    PathWord boundary() const {
        PathWord w;
        for (const auto& a : arcs) w += a.word;
        return w;
    }
    std::int64_t length(const GroupParams& p) const {
        std::int64_t n = 0;
        for (const auto& a : arcs) n += a.word.length(p);
        return n;
    }
    // Boundary word trivial and consecutive arcs joined end to start.
    bool is_consistent(const GroupParams& p) const {
        if (arcs.empty()) return true;
        GroupElement cur = arcs.front().from;
        for (const auto& a : arcs) {
            if (a.from != cur) return false;
            cur.mul_word(p, a.word);
        }
        return cur == arcs.front().from;
    }
    bool is_trivial(const GroupParams& p) const { return reduce_word(p, boundary()).is_identity(); }
};

struct Gluing {
    std::size_t cell_a, arc_a, cell_b, arc_b;
};

class Diagram {
public:
    std::vector<Cell> cells;

    std::size_t area() const { return cells.size(); }
    std::int64_t mesh(const GroupParams& p) const {
        std::int64_t m = 0;
        for (const auto& c : cells) m = std::max(m, c.length(p));
        return m;
    }

    void append(Diagram&& other) {
        cells.insert(cells.end(), std::make_move_iterator(other.cells.begin()),
                     std::make_move_iterator(other.cells.end()));
    }

    std::size_t count_nontrivial(const GroupParams& p) const {
        std::size_t n = 0;
        for (const auto& c : cells)
            if (!c.is_trivial(p) || !c.is_consistent(p)) ++n;
        return n;
    }

    // Pairs of arcs traversing the same path in opposite directions.
    std::vector<Gluing> gluings(const GroupParams& p) const {
        std::map<std::tuple<std::string, std::string, std::string>, std::vector<std::pair<std::size_t, std::size_t>>>
            by_key;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            for (std::size_t j = 0; j < cells[i].arcs.size(); ++j) {
                const Arc& a = cells[i].arcs[j];
                if (a.word.empty()) continue;
                GroupElement to = a.from;
                to.mul_word(p, a.word);
                by_key[{normal_form_string(a.from), normal_form_string(to), to_string(a.word)}].push_back({i, j});
            }
        }
        std::vector<Gluing> out;
        for (auto& [key, list] : by_key) {
            const auto& [from, to, word] = key;
            if (from > to || (from == to && word > to_string(parse_path(word).inverse()))) continue;
            auto it = by_key.find({to, from, to_string(parse_path(word).inverse())});
            if (it == by_key.end()) continue;
            std::size_t n = std::min(list.size(), it->second.size());
            for (std::size_t k = 0; k < n; ++k)
                out.push_back({list[k].first, list[k].second, it->second[k].first, it->second[k].second});
        }
        return out;
    }

    // The 1-chain sum of the cell boundaries equals the given boundary loop
    // read from start. Interior edges must cancel in pairs.
    bool chain_matches(const GroupParams& p, const GroupElement& start, const PathWord& loop) const {
        std::unordered_map<GroupElement, std::array<std::int64_t, 5>> net;
        auto walk = [&](GroupElement cur, const PathWord& w, std::int64_t sign) {
            for (Letter l : w.letters) {
                GroupElement next = cur;
                next.mul_letter(p, l);
                if (l.inverse) {
                    net[next][static_cast<int>(l.gen)] -= sign;
                } else {
                    net[cur][static_cast<int>(l.gen)] += sign;
                }
                cur = std::move(next);
            }
        };
        for (const auto& c : cells)
            for (const auto& a : c.arcs) walk(a.from, a.word, 1);
        walk(start, loop, -1);
        for (const auto& [v, counts] : net)
            for (auto c : counts)
                if (c != 0) return false;
        return true;
    }

    nlohmann::json to_json(const GroupParams& p) const {
        nlohmann::json j;
        j["area"] = area();
        j["mesh"] = mesh(p);
        auto& jc = j["cells"] = nlohmann::json::array();
        for (const auto& c : cells) {
            nlohmann::json cj;
            cj["tag"] = c.tag;
            cj["boundary"] = to_string(c.boundary());
            cj["length"] = c.length(p);
            auto& arcs = cj["arcs"] = nlohmann::json::array();
            for (const auto& a : c.arcs)
                arcs.push_back({{"from", normal_form_string(a.from)}, {"word", to_string(a.word)}});
            jc.push_back(std::move(cj));
        }
        auto& jg = j["gluings"] = nlohmann::json::array();
        for (const auto& g : gluings(p)) jg.push_back({g.cell_a, g.arc_a, g.cell_b, g.arc_b});
        return j;
    }
};

// Deterministic geodesic arcs between points of a coset F*H. The word for
// Q - P is geodesic_word_h of the difference when the difference is
// lexicographically positive and the inverse of the reversed word otherwise,
// so an arc and its reverse always carry inverse words.
class GeodesicCache {
public:
    explicit GeodesicCache(const GroupParams& p) : p_(p) {}

    const PathWord& word(const HPoint& diff) {
        auto it = cache_.find(diff);
        if (it != cache_.end()) return it->second;
        PathWord w;
        if (diff.is_zero()) {
        } else if (diff.u > 0 || (diff.u == 0 && diff.v > 0)) {
            w = geodesic_word_h(p_, diff);
        } else {
            w = geodesic_word_h(p_, -diff).inverse();
        }
        return cache_.emplace(diff, std::move(w)).first->second;
    }

    Arc arc(const GroupElement& frame, const HPoint& from, const HPoint& to) {
        GroupElement v = frame;
        v.mul_h(from);
        return {std::move(v), word(to - from)};
    }
    Arc arc(const HPoint& from, const HPoint& to) { return arc(GroupElement(), from, to); }

    const GroupParams& params() const { return p_; }

private:
    GroupParams p_;
    std::unordered_map<HPoint, PathWord> cache_;
};

}  // namespace snowflake
