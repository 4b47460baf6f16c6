#include "rainbow/families.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "rainbow/combinatorics.hpp"

namespace rainbow {

namespace {

UniformHypergraph graph_3u(int n, std::vector<Edge> edges) {
    return UniformHypergraph::make(3, n, std::move(edges));
}

// Alternating 3-uniform path: e0 = {0,1,2}; a loose step appends {q,q+1,q+2},
// a tight step {p,q,q+1}, where (p,q) are the two largest vertices so far.
UniformHypergraph alternating_path(int t, bool loose_first) {
    if (t < 1) throw std::invalid_argument("make_family: path needs at least one edge");
    std::vector<Edge> edges{{0, 1, 2}};
    int p = 1, q = 2;
    bool loose = loose_first;
    for (int i = 1; i < t; ++i) {
        if (loose) {
            edges.push_back({q, q + 1, q + 2});
            p = q + 1;
            q = q + 2;
        } else {
            edges.push_back({p, q, q + 1});
            p = q;
            q = q + 1;
        }
        loose = !loose;
    }
    return graph_3u(q + 1, std::move(edges));
}

UniformHypergraph sunflower_graph(int d, int m, int r) {
    if (r < 2 || d < 0 || d >= r || m < 1) throw std::invalid_argument("make_family: sunflower needs 0 <= d < r, m >= 1");
    std::vector<Edge> edges;
    Edge core(d);
    for (int i = 0; i < d; ++i) core[i] = i;
    for (int i = 0; i < m; ++i) {
        Edge e = core;
        for (int j = 0; j < r - d; ++j) e.push_back(d + i * (r - d) + j);
        edges.push_back(std::move(e));
    }
    return UniformHypergraph::make(r, d + m * (r - d), std::move(edges));
}

UniformHypergraph clique_graph(int p, int r) {
    if (r < 2 || p < r) throw std::invalid_argument("make_family: clique needs p >= r >= 2");
    std::vector<Edge> edges;
    for_each_combination(p, r, [&](const std::vector<int>& c) { edges.push_back(c); });
    return UniformHypergraph::make(r, p, std::move(edges));
}

int param(const std::vector<int>& params, std::size_t i, std::optional<int> fallback = std::nullopt) {
    if (i < params.size()) return params[i];
    if (fallback) return *fallback;
    throw std::invalid_argument("make_family: missing parameter");
}

}  // namespace

UniformHypergraph make_family(const std::string& name, const std::vector<int>& params) {
    if (name == "tp3") return graph_3u(5, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}});
    if (name == "sp3") return graph_3u(6, {{0, 1, 2}, {1, 2, 3}, {3, 4, 5}});
    if (name == "lc3") return graph_3u(6, {{0, 1, 3}, {1, 2, 4}, {0, 2, 5}});
    if (name == "tce") return graph_3u(5, {{0, 1, 3}, {1, 2, 3}, {2, 3, 4}, {0, 2, 3}});
    if (name == "lce") return graph_3u(6, {{0, 1, 3}, {1, 2, 4}, {0, 2, 5}, {0, 3, 5}});
    if (name == "sp1") return alternating_path(param(params, 0), /*loose_first=*/true);
    if (name == "sp2") return alternating_path(param(params, 0), /*loose_first=*/false);
    if (name == "tp") {
        int t = param(params, 0);
        if (t < 1) throw std::invalid_argument("make_family: tp needs t >= 1");
        std::vector<Edge> edges;
        for (int i = 0; i < t; ++i) edges.push_back({i, i + 1, i + 2});
        return graph_3u(t + 2, std::move(edges));
    }
    if (name == "lp") {
        int t = param(params, 0);
        if (t < 1) throw std::invalid_argument("make_family: lp needs t >= 1");
        std::vector<Edge> edges;
        for (int i = 0; i < t; ++i) edges.push_back({2 * i, 2 * i + 1, 2 * i + 2});
        return graph_3u(2 * t + 1, std::move(edges));
    }
    if (name == "sunflower") return sunflower_graph(param(params, 0), param(params, 1), param(params, 2, 3));
    if (name == "matching") return sunflower_graph(0, param(params, 0), param(params, 1, 3));
    if (name == "clique") return clique_graph(param(params, 0), param(params, 1, 3));
    throw std::invalid_argument("make_family: unknown family '" + name + "'");
}

UniformHypergraph parse_family(const std::string& text) {
    auto open = text.find('(');
    if (open == std::string::npos) return make_family(text, {});
    if (text.back() != ')') throw std::invalid_argument("parse_family: expected ')' in '" + text + "'");
    std::string name = text.substr(0, open);
    std::string args = text.substr(open + 1, text.size() - open - 2);
    std::vector<int> params;
    std::size_t pos = 0;
    while (pos < args.size()) {
        auto comma = args.find(',', pos);
        std::string tok = args.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        params.push_back(std::stoi(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return make_family(name, params);
}

bool SunflowerWitness::valid_for(const UniformHypergraph& h) const {
    if (petals.empty()) return false;
    std::vector<Vertex> sorted_core = core;
    std::sort(sorted_core.begin(), sorted_core.end());
    for (const auto& p : petals) {
        if (!h.has_edge(p)) return false;
        if (!std::includes(p.begin(), p.end(), sorted_core.begin(), sorted_core.end())) return false;
    }
    for (std::size_t i = 0; i < petals.size(); ++i)
        for (std::size_t j = i + 1; j < petals.size(); ++j) {
            Edge inter;
            std::set_intersection(petals[i].begin(), petals[i].end(), petals[j].begin(), petals[j].end(),
                                  std::back_inserter(inter));
            if (inter != sorted_core) return false;
        }
    return true;
}

namespace {

using EdgeSet = std::vector<Edge>;

// Erdos-Rado recursion: a maximal disjoint family either is the sunflower, or
// its union covers every edge and some covered vertex has a heavy link.
std::optional<std::pair<std::vector<Vertex>, EdgeSet>> greedy_sunflower(const EdgeSet& edges, int m) {
    if (edges.empty()) return std::nullopt;
    EdgeSet chosen;
    for (const auto& e : edges) {
        bool disjoint = true;
        for (const auto& c : chosen) {
            Edge inter;
            std::set_intersection(e.begin(), e.end(), c.begin(), c.end(), std::back_inserter(inter));
            if (!inter.empty()) {
                disjoint = false;
                break;
            }
        }
        if (disjoint) chosen.push_back(e);
    }
    if (static_cast<int>(chosen.size()) >= m)
        return std::make_pair(std::vector<Vertex>{}, EdgeSet(chosen.begin(), chosen.begin() + m));

    std::set<Vertex> covered;
    for (const auto& c : chosen) covered.insert(c.begin(), c.end());
    Vertex best = -1;
    std::size_t best_deg = 0;
    for (Vertex x : covered) {
        std::size_t deg = 0;
        for (const auto& e : edges)
            if (std::binary_search(e.begin(), e.end(), x)) ++deg;
        if (deg > best_deg) {
            best_deg = deg;
            best = x;
        }
    }
    if (best < 0) return std::nullopt;
    EdgeSet link;
    for (const auto& e : edges) {
        if (!std::binary_search(e.begin(), e.end(), best)) continue;
        Edge reduced;
        for (Vertex v : e)
            if (v != best) reduced.push_back(v);
        link.push_back(std::move(reduced));
    }
    auto sub = greedy_sunflower(link, m);
    if (!sub) return std::nullopt;
    auto [core, petals] = std::move(*sub);
    core.push_back(best);
    std::sort(core.begin(), core.end());
    for (auto& p : petals) {
        p.push_back(best);
        std::sort(p.begin(), p.end());
    }
    return std::make_pair(std::move(core), std::move(petals));
}

// Complete search: every achievable core is the intersection of two petals
// (or empty); per core, m pairwise-disjoint petal differences form a packing.
std::optional<SunflowerWitness> exhaustive_sunflower(const UniformHypergraph& h, int m) {
    std::set<Edge> cores;
    cores.insert(Edge{});
    if (m == 1 && !h.edges.empty()) {
        SunflowerWitness w;
        w.petals = {h.edges.front()};
        return w;
    }
    for (std::size_t i = 0; i < h.edges.size(); ++i)
        for (std::size_t j = i + 1; j < h.edges.size(); ++j) {
            Edge inter;
            std::set_intersection(h.edges[i].begin(), h.edges[i].end(), h.edges[j].begin(), h.edges[j].end(),
                                  std::back_inserter(inter));
            cores.insert(std::move(inter));
        }
    for (const auto& core : cores) {
        EdgeSet candidates;
        for (const auto& e : h.edges)
            if (std::includes(e.begin(), e.end(), core.begin(), core.end())) candidates.push_back(e);
        if (static_cast<int>(candidates.size()) < m) continue;
        // DFS packing of pairwise core-exact candidates.
        std::vector<std::size_t> pick;
        std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
            if (static_cast<int>(pick.size()) == m) return true;
            for (std::size_t i = start; i < candidates.size(); ++i) {
                if (candidates.size() - i < static_cast<std::size_t>(m) - pick.size()) return false;
                bool ok = true;
                for (std::size_t pi : pick) {
                    Edge inter;
                    std::set_intersection(candidates[pi].begin(), candidates[pi].end(), candidates[i].begin(),
                                          candidates[i].end(), std::back_inserter(inter));
                    if (inter != core) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                pick.push_back(i);
                if (rec(i + 1)) return true;
                pick.pop_back();
            }
            return false;
        };
        if (rec(0)) {
            SunflowerWitness w;
            w.core = core;
            for (std::size_t pi : pick) w.petals.push_back(candidates[pi]);
            return w;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<SunflowerWitness> find_sunflower(const UniformHypergraph& h, int m) {
    h.validate();
    if (m < 1) throw std::invalid_argument("find_sunflower: m must be positive");
    if (auto greedy = greedy_sunflower(h.edges, m)) {
        SunflowerWitness w;
        w.core = std::move(greedy->first);
        w.petals = std::move(greedy->second);
        if (!w.valid_for(h)) throw std::logic_error("find_sunflower: greedy produced an invalid witness");
        return w;
    }
    auto w = exhaustive_sunflower(h, m);
    if (w && !w->valid_for(h)) throw std::logic_error("find_sunflower: exhaustive search produced an invalid witness");
    return w;
}

UniformHypergraph cube_bridge(const std::vector<std::string>& vectors) {
    if (vectors.empty()) throw std::invalid_argument("cube_bridge: empty vector set");
    const int n = static_cast<int>(vectors.front().size());
    int r = -1;
    std::set<Edge> edges;
    for (const auto& s : vectors) {
        if (static_cast<int>(s.size()) != n) throw std::invalid_argument("cube_bridge: vectors of unequal length");
        Edge e;
        for (int i = 0; i < n; ++i) {
            if (s[i] == '1')
                e.push_back(i);
            else if (s[i] != '0')
                throw std::invalid_argument("cube_bridge: vectors must be 0/1 strings");
        }
        if (r < 0) r = static_cast<int>(e.size());
        if (static_cast<int>(e.size()) != r) throw std::invalid_argument("cube_bridge: Hamming weight mismatch");
        edges.insert(std::move(e));
    }
    return UniformHypergraph::make(r, n, std::vector<Edge>(edges.begin(), edges.end()));
}

std::string edge_to_vector(const Edge& e, int n) {
    std::string s(n, '0');
    for (Vertex v : e) {
        if (v < 0 || v >= n) throw std::invalid_argument("edge_to_vector: vertex out of range");
        s[v] = '1';
    }
    return s;
}

}  // namespace rainbow
