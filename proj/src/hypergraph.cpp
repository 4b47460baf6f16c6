#include "rainbow/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "rainbow/combinatorics.hpp"

namespace rainbow {

UniformHypergraph UniformHypergraph::make(int r, int n, std::vector<Edge> edges, bool require_spanning) {
    UniformHypergraph h;
    h.r = r;
    h.n = n;
    for (auto& e : edges) std::sort(e.begin(), e.end());
    std::sort(edges.begin(), edges.end());
    h.edges = std::move(edges);
    h.validate(require_spanning);
    return h;
}

void UniformHypergraph::validate(bool require_spanning) const {
    if (r < 2) throw std::invalid_argument("hypergraph: uniformity must be at least 2");
    if (n < 0) throw std::invalid_argument("hypergraph: negative vertex count");
    for (const auto& e : edges) {
        if (static_cast<int>(e.size()) != r) throw std::invalid_argument("hypergraph: edge of wrong size");
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= n) throw std::invalid_argument("hypergraph: vertex out of range");
            if (i > 0 && e[i] <= e[i - 1]) throw std::invalid_argument("hypergraph: edge not strictly increasing");
        }
    }
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1]) throw std::invalid_argument("hypergraph: duplicate edge");
    if (require_spanning && !spanning()) throw std::invalid_argument("hypergraph: isolated vertex present");
}

bool UniformHypergraph::spanning() const {
    std::vector<char> seen(n, 0);
    for (const auto& e : edges)
        for (Vertex v : e) seen[v] = 1;
    for (Vertex v = 0; v < n; ++v)
        if (!seen[v]) return false;
    return true;
}

bool UniformHypergraph::has_edge(const Edge& e) const {
    return std::binary_search(edges.begin(), edges.end(), e);
}

std::vector<int> UniformHypergraph::degrees() const {
    std::vector<int> deg(n, 0);
    for (const auto& e : edges)
        for (Vertex v : e) ++deg[v];
    return deg;
}

std::vector<Vertex> UniformHypergraph::isolated_vertices() const {
    std::vector<Vertex> iso;
    auto deg = degrees();
    for (Vertex v = 0; v < n; ++v)
        if (deg[v] == 0) iso.push_back(v);
    return iso;
}

bool VertexOrder::valid() const {
    int n = size();
    std::vector<char> seen(n + 1, 0);
    for (int rk : ranks) {
        if (rk < 1 || rk > n || seen[rk]) return false;
        seen[rk] = 1;
    }
    return true;
}

VertexOrder VertexOrder::identity(int n) {
    VertexOrder o;
    o.ranks.resize(n);
    for (int v = 0; v < n; ++v) o.ranks[v] = v + 1;
    return o;
}

VertexOrder VertexOrder::from_ranks(std::vector<int> ranks) {
    VertexOrder o;
    o.ranks = std::move(ranks);
    if (!o.valid()) throw std::invalid_argument("vertex order: ranks are not a bijection onto 1..n");
    return o;
}

VertexOrder VertexOrder::from_sequence(const std::vector<Vertex>& seq) {
    std::vector<int> ranks(seq.size(), 0);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        Vertex v = seq[i];
        if (v < 0 || v >= static_cast<int>(seq.size())) throw std::invalid_argument("vertex order: vertex out of range");
        ranks[v] = static_cast<int>(i) + 1;
    }
    return from_ranks(std::move(ranks));
}

VertexOrder VertexOrder::reversed() const {
    VertexOrder o;
    int n = size();
    o.ranks.resize(n);
    for (int v = 0; v < n; ++v) o.ranks[v] = n + 1 - ranks[v];
    return o;
}

bool Embedding::valid() const {
    if (static_cast<int>(map.size()) != pattern.n) return false;
    std::vector<char> used(host_n, 0);
    for (Vertex img : map) {
        if (img < 0 || img >= host_n || used[img]) return false;
        used[img] = 1;
    }
    return true;
}

Edge Embedding::image_edge(const Edge& pattern_edge) const {
    Edge img;
    img.reserve(pattern_edge.size());
    for (Vertex v : pattern_edge) img.push_back(map[v]);
    std::sort(img.begin(), img.end());
    return img;
}

std::vector<Edge> Embedding::image_edges() const {
    std::vector<Edge> out;
    out.reserve(pattern.edges.size());
    for (const auto& e : pattern.edges) out.push_back(image_edge(e));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Canonical labeling: iterated degree-profile refinement plus individualization
// backtracking. Cell signatures are label-invariant, so two inputs explore
// matching labeling sets and the minimum edge list is a true canonical form.
// ---------------------------------------------------------------------------

namespace {

struct Canonicalizer {
    const UniformHypergraph& h;
    std::vector<std::vector<int>> incidence;  // vertex -> edge indices

    std::vector<std::vector<int>> best_edges;
    std::vector<int> best_labels;
    bool have_best = false;

    explicit Canonicalizer(const UniformHypergraph& graph) : h(graph), incidence(graph.n) {
        for (std::size_t i = 0; i < h.edges.size(); ++i)
            for (Vertex v : h.edges[i]) incidence[v].push_back(static_cast<int>(i));
    }

    // Refines colors to a fixpoint. Signatures start with the old color, so the
    // cell order is preserved and only ever split.
    std::vector<int> refine(std::vector<int> colors) const {
        while (true) {
            using Sig = std::pair<int, std::vector<std::vector<int>>>;
            std::vector<Sig> sigs(h.n);
            for (Vertex v = 0; v < h.n; ++v) {
                std::vector<std::vector<int>> profile;
                profile.reserve(incidence[v].size());
                for (int ei : incidence[v]) {
                    std::vector<int> ecols;
                    ecols.reserve(h.r);
                    for (Vertex u : h.edges[ei]) ecols.push_back(colors[u]);
                    std::sort(ecols.begin(), ecols.end());
                    profile.push_back(std::move(ecols));
                }
                std::sort(profile.begin(), profile.end());
                sigs[v] = {colors[v], std::move(profile)};
            }
            std::vector<Sig> distinct = sigs;
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            std::vector<int> next(h.n);
            for (Vertex v = 0; v < h.n; ++v)
                next[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sigs[v]) - distinct.begin());
            if (next == colors) return colors;
            colors = std::move(next);
        }
    }

    void consider(const std::vector<int>& labels) {
        std::vector<std::vector<int>> relabeled;
        relabeled.reserve(h.edges.size());
        for (const auto& e : h.edges) {
            std::vector<int> img;
            img.reserve(e.size());
            for (Vertex v : e) img.push_back(labels[v]);
            std::sort(img.begin(), img.end());
            relabeled.push_back(std::move(img));
        }
        std::sort(relabeled.begin(), relabeled.end());
        if (!have_best || relabeled < best_edges) {
            best_edges = std::move(relabeled);
            best_labels = labels;
            have_best = true;
        }
    }

    void search(std::vector<int> colors) {
        colors = refine(std::move(colors));
        int cells = h.n == 0 ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
        if (cells == h.n) {
            consider(colors);
            return;
        }
        // first non-singleton cell
        std::vector<int> count(cells, 0);
        for (int c : colors) ++count[c];
        int target = 0;
        while (count[target] <= 1) ++target;
        for (Vertex v = 0; v < h.n; ++v) {
            if (colors[v] != target) continue;
            std::vector<int> branched(h.n);
            for (Vertex u = 0; u < h.n; ++u)
                branched[u] = colors[u] * 2 + ((colors[u] == target && u != v) ? 1 : 0);
            search(std::move(branched));
        }
    }
};

std::vector<int> initial_colors(const UniformHypergraph& h) {
    // Cells keyed by degree, with isolated vertices pushed to the last cell so
    // edge vertices receive the small canonical labels.
    auto deg = h.degrees();
    std::vector<std::pair<int, int>> keys(h.n);
    for (Vertex v = 0; v < h.n; ++v) keys[v] = {deg[v] == 0 ? 1 : 0, deg[v]};
    auto distinct = keys;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> colors(h.n);
    for (Vertex v = 0; v < h.n; ++v)
        colors[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), keys[v]) - distinct.begin());
    return colors;
}

}  // namespace

CanonicalResult canonical_form(const UniformHypergraph& h) {
    h.validate();
    CanonicalResult res;
    uint64_t complete = 0;
    if (h.n <= kMaxBinomialN && h.r <= kMaxBinomialK) complete = binomial(h.n, h.r);
    if (h.edges.empty() || (complete != 0 && h.edges.size() == complete)) {
        // Empty and complete graphs are canonical under any labeling.
        res.canonical = h;
        res.relabeling = VertexOrder::identity(h.n);
        return res;
    }
    Canonicalizer c(h);
    c.search(initial_colors(h));
    std::vector<Edge> edges;
    edges.reserve(c.best_edges.size());
    for (auto& e : c.best_edges) edges.push_back(Edge(e.begin(), e.end()));
    res.canonical = UniformHypergraph::make(h.r, h.n, std::move(edges));
    std::vector<int> ranks(h.n);
    for (Vertex v = 0; v < h.n; ++v) ranks[v] = c.best_labels[v] + 1;
    res.relabeling = VertexOrder::from_ranks(std::move(ranks));
    return res;
}

bool is_isomorphic(const UniformHypergraph& a, const UniformHypergraph& b) {
    if (a.r != b.r || a.n != b.n || a.edges.size() != b.edges.size()) return false;
    auto da = a.degrees(), db = b.degrees();
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    return canonical_form(a).canonical == canonical_form(b).canonical;
}

// ---------------------------------------------------------------------------
// Automorphisms
// ---------------------------------------------------------------------------

namespace {

// Finds one edge-preserving bijection with image[pin_from] = pin_to, if any.
bool find_automorphism_pinned(const UniformHypergraph& h, Vertex pin_from, Vertex pin_to) {
    auto deg = h.degrees();
    if (deg[pin_from] != deg[pin_to]) return false;
    std::set<Edge> edge_set(h.edges.begin(), h.edges.end());
    std::vector<std::vector<int>> incidence(h.n);
    for (std::size_t i = 0; i < h.edges.size(); ++i)
        for (Vertex v : h.edges[i]) incidence[v].push_back(static_cast<int>(i));

    std::vector<int> image(h.n, -1);
    std::vector<char> used(h.n, 0);
    image[pin_from] = pin_to;
    used[pin_to] = 1;

    // Assign vertices in decreasing degree order; check each edge as soon as it
    // is fully mapped.
    std::vector<Vertex> order;
    for (Vertex v = 0; v < h.n; ++v)
        if (v != pin_from) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](Vertex x, Vertex y) { return deg[x] > deg[y]; });

    std::function<bool(std::size_t)> rec = [&](std::size_t idx) -> bool {
        if (idx == order.size()) return true;
        Vertex v = order[idx];
        for (Vertex cand = 0; cand < h.n; ++cand) {
            if (used[cand] || deg[cand] != deg[v]) continue;
            image[v] = cand;
            used[cand] = 1;
            bool ok = true;
            for (int ei : incidence[v]) {
                Edge img;
                bool full = true;
                for (Vertex u : h.edges[ei]) {
                    if (image[u] < 0) {
                        full = false;
                        break;
                    }
                    img.push_back(image[u]);
                }
                if (!full) continue;
                std::sort(img.begin(), img.end());
                if (!edge_set.count(img)) {
                    ok = false;
                    break;
                }
            }
            if (ok && rec(idx + 1)) return true;
            image[v] = -1;
            used[cand] = 0;
        }
        return false;
    };
    return rec(0);
}

}  // namespace

std::vector<Vertex> automorphism_orbit(const UniformHypergraph& h, Vertex v0) {
    std::vector<Vertex> orbit{v0};
    for (Vertex u = 0; u < h.n; ++u) {
        if (u == v0) continue;
        if (find_automorphism_pinned(h, v0, u)) orbit.push_back(u);
    }
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

std::vector<std::vector<Vertex>> vertex_orbits(const UniformHypergraph& h) {
    std::vector<std::vector<Vertex>> orbits;
    std::vector<char> placed(h.n, 0);
    for (Vertex v = 0; v < h.n; ++v) {
        if (placed[v]) continue;
        auto orbit = automorphism_orbit(h, v);
        for (Vertex u : orbit) placed[u] = 1;
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

// ---------------------------------------------------------------------------
// Enumeration of isomorphism classes
// ---------------------------------------------------------------------------

namespace {

struct ClassEnumerator {
    int r, m, max_n;
    const std::function<void(const UniformHypergraph&)>& yield;
    std::vector<Edge> chosen;
    std::set<std::vector<int>> seen_labeled;
    std::set<std::vector<int>> seen_canonical;

    static std::vector<int> flatten(int n, const std::vector<Edge>& edges) {
        std::vector<int> key{n};
        for (const auto& e : edges)
            for (Vertex v : e) key.push_back(v);
        return key;
    }

    // All next-edge candidates: any r-subset of the used labels plus a block of
    // consecutive fresh labels starting at `used`.
    std::vector<Edge> candidates(int used) const {
        std::vector<Edge> out;
        for (int fresh = 0; fresh <= r && used + fresh <= max_n; ++fresh) {
            int old_part = r - fresh;
            if (old_part > used) continue;
            std::vector<Edge> olds;
            for_each_combination(used, old_part, [&](const std::vector<int>& c) { olds.push_back(c); });
            for (auto& base : olds) {
                Edge e = base;
                for (int j = 0; j < fresh; ++j) e.push_back(used + j);
                out.push_back(std::move(e));
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    void emit() {
        int used = 0;
        for (const auto& e : chosen) used = std::max(used, e.back() + 1);
        std::vector<Edge> sorted = chosen;
        std::sort(sorted.begin(), sorted.end());
        auto labeled_key = flatten(used, sorted);
        if (!seen_labeled.insert(labeled_key).second) return;
        auto g = UniformHypergraph::make(r, used, sorted, /*require_spanning=*/true);
        auto canon = canonical_form(g).canonical;
        auto canon_key = flatten(canon.n, canon.edges);
        if (!seen_canonical.insert(canon_key).second) return;
        yield(canon);
    }

    void rec(int used, bool prev_was_old) {
        if (static_cast<int>(chosen.size()) == m) {
            emit();
            return;
        }
        for (const auto& cand : candidates(used)) {
            bool is_old = cand.back() < used;
            // Two consecutive no-new-label edges commute; keep them sorted.
            if (is_old && prev_was_old && !chosen.empty() && !(chosen.back() < cand)) continue;
            if (std::find(chosen.begin(), chosen.end(), cand) != chosen.end()) continue;
            chosen.push_back(cand);
            rec(std::max(used, cand.back() + 1), is_old);
            chosen.pop_back();
        }
    }
};

}  // namespace

void enumerate_hypergraphs(int r, int m, int max_n, const std::function<void(const UniformHypergraph&)>& yield) {
    if (m < 1 || r < 2 || max_n < r) throw std::invalid_argument("enumerate_hypergraphs: need m >= 1, r >= 2, max_n >= r");
    ClassEnumerator en{r, m, max_n, yield, {}, {}, {}};
    Edge first(r);
    for (int i = 0; i < r; ++i) first[i] = i;
    en.chosen.push_back(first);
    en.rec(r, false);
}

std::vector<UniformHypergraph> enumerate_hypergraphs(int r, int m, int max_n) {
    std::vector<UniformHypergraph> out;
    enumerate_hypergraphs(r, m, max_n, [&](const UniformHypergraph& h) { out.push_back(h); });
    return out;
}

// ---------------------------------------------------------------------------
// Embeddings
// ---------------------------------------------------------------------------

void for_each_injection(int pattern_n, int host_n, const std::function<bool(const std::vector<Vertex>&)>& fn) {
    if (pattern_n > host_n) return;
    std::vector<Vertex> map(pattern_n);
    std::vector<char> used(host_n, 0);
    std::function<bool(int)> rec = [&](int idx) -> bool {
        if (idx == pattern_n) return fn(map);
        for (Vertex v = 0; v < host_n; ++v) {
            if (used[v]) continue;
            used[v] = 1;
            map[idx] = v;
            bool keep = rec(idx + 1);
            used[v] = 0;
            if (!keep) return false;
        }
        return true;
    };
    rec(0);
}

void for_each_embedding(const UniformHypergraph& pattern, int host_n,
                        const std::function<void(const Embedding&)>& yield) {
    pattern.validate();
    if (pattern.n > host_n) throw std::invalid_argument("embedding: pattern larger than host");
    auto isolated = pattern.isolated_vertices();
    // Copies on one vertex subset W are deduplicated by (edge image, isolated
    // image set); the key identifies an automorphism orbit of injections.
    for_each_combination(host_n, pattern.n, [&](const std::vector<int>& w) {
        std::set<std::vector<uint64_t>> seen;
        std::vector<Vertex> local(pattern.n);
        for (int i = 0; i < pattern.n; ++i) local[i] = i;
        std::sort(local.begin(), local.end());
        do {
            Embedding emb;
            emb.pattern = pattern;
            emb.host_n = host_n;
            emb.map.resize(pattern.n);
            for (int i = 0; i < pattern.n; ++i) emb.map[i] = w[local[i]];
            std::vector<uint64_t> key;
            key.reserve(pattern.edges.size() + isolated.size());
            for (const auto& e : pattern.edges) key.push_back(colex_rank(emb.image_edge(e)));
            std::sort(key.begin(), key.end());
            std::vector<uint64_t> iso_imgs;
            for (Vertex v : isolated) iso_imgs.push_back(static_cast<uint64_t>(emb.map[v]));
            std::sort(iso_imgs.begin(), iso_imgs.end());
            key.insert(key.end(), iso_imgs.begin(), iso_imgs.end());
            if (seen.insert(std::move(key)).second) yield(emb);
        } while (std::next_permutation(local.begin(), local.end()));
    });
}

std::vector<Embedding> enumerate_embeddings(const UniformHypergraph& pattern, int host_n) {
    std::vector<Embedding> out;
    for_each_embedding(pattern, host_n, [&](const Embedding& e) { out.push_back(e); });
    return out;
}

uint64_t count_embeddings(const UniformHypergraph& pattern, int host_n) {
    uint64_t count = 0;
    for_each_embedding(pattern, host_n, [&](const Embedding&) { ++count; });
    return count;
}

}  // namespace rainbow
