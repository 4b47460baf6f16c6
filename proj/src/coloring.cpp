#include "rainbow/coloring.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "rainbow/combinatorics.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

uint64_t ColoringFamily::edge_count() const { return binomial(n, r); }

uint32_t ColoringFamily::color_of(Vertex v, const Edge& e) const {
    return color(v, colex_rank(e));
}

void ColoringFamily::validate() const {
    if (n < r || r < 2) throw std::invalid_argument("family: need n >= r >= 2");
    if (k < 1) throw std::invalid_argument("family: need k >= 1");
    if (colors.size() != uint64_t(n) * edge_count()) throw std::invalid_argument("family: color table has wrong size");
    for (uint32_t c : colors)
        if (c < 1 || c > k) throw std::invalid_argument("family: color value out of range");
}

uint32_t PQColoring::color_of(const Edge& e) const { return colors[colex_rank(e)]; }

bool PQColoring::valid() const {
    if (n < p || p < t || q < 1 || uint64_t(q) > binomial(p, t)) return false;
    bool ok = true;
    for_each_combination(n, p, [&](const std::vector<int>& subset) {
        if (!ok) return;
        std::vector<uint32_t> seen;
        for_each_combination(p, t, [&](const std::vector<int>& idx) {
            Edge e(t);
            for (int i = 0; i < t; ++i) e[i] = subset[idx[i]];
            seen.push_back(color_of(e));
        });
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        if (static_cast<int>(seen.size()) < q) ok = false;
    });
    return ok;
}

PQColoring PQColoring::shifted(uint32_t delta) const {
    PQColoring out = *this;
    out.k = k + delta;
    for (auto& c : out.colors) c += delta;
    return out;
}

uint64_t WideEdgeColoring::color_of(const Edge& e) const { return colors[colex_rank(e)]; }

// ---------------------------------------------------------------------------

ColoringFamily deterministic_family(int n, int r, const VertexOrder& base_order) {
    if (n < r || r < 2) throw std::invalid_argument("deterministic_family: need n >= r >= 2");
    if (base_order.size() != n || !base_order.valid())
        throw std::invalid_argument("deterministic_family: order is not a bijection on the host");
    ColoringFamily fam;
    fam.n = n;
    fam.r = r;
    fam.k = 2 * r + 1;
    fam.colors.assign(uint64_t(n) * binomial(n, r), 0);
    fam.provenance.tag = "deterministic";
    const uint64_t stride = fam.edge_count();
    uint64_t rank = 0;
    for_each_combination(n, r, [&](const std::vector<int>& e) {
        for (Vertex v = 0; v < n; ++v) {
            int below = 0;
            bool contains = false;
            for (Vertex u : e) {
                if (u == v)
                    contains = true;
                else if (base_order.ranks[u] < base_order.ranks[v])
                    ++below;
            }
            fam.colors[uint64_t(v) * stride + rank] = contains ? 1 + below : r + 1 + below;
        }
        ++rank;
    });
    return fam;
}

// ---------------------------------------------------------------------------

uint64_t lll_color_count(int n, int r, int h) {
    // h^(2r + r/h) * n^((h-r)/h) = (h^(2rh+r) * n^(h-r))^(1/h); the base fits
    // unsigned __int128 for every desk-scale instance.
    const int e1 = 2 * r * h + r;
    unsigned __int128 x = 1;
    const unsigned __int128 limit = ~static_cast<unsigned __int128>(0);
    for (int i = 0; i < e1; ++i) {
        if (x > limit / static_cast<unsigned>(h)) throw std::overflow_error("lll_color_count: instance too large");
        x *= static_cast<unsigned>(h);
    }
    for (int i = 0; i < h - r; ++i) {
        if (x > limit / static_cast<unsigned>(n)) throw std::overflow_error("lll_color_count: instance too large");
        x *= static_cast<unsigned>(n);
    }
    return ceil_nth_root(x, h);
}

namespace {

// Cells of one clique copy: every (vertex of W, r-subset of W) pair.
struct CopyCells {
    std::vector<uint64_t> edge_ranks;
    std::vector<Vertex> verts;
};

bool copy_violated(const ColoringFamily& fam, const CopyCells& copy) {
    for (Vertex v : copy.verts) {
        bool repeat = false;
        for (std::size_t i = 0; i < copy.edge_ranks.size() && !repeat; ++i)
            for (std::size_t j = i + 1; j < copy.edge_ranks.size(); ++j)
                if (fam.color(v, copy.edge_ranks[i]) == fam.color(v, copy.edge_ranks[j])) {
                    repeat = true;
                    break;
                }
        if (!repeat) return false;  // v is rainbow on the copy
    }
    return true;
}

}  // namespace

LllResult lll_sample(int n, int r, int h, uint64_t seed, int64_t budget) {
    if (!(r <= h && h <= n)) throw std::invalid_argument("lll_sample: need r <= h <= n");
    LllResult res;
    res.color_count_formula = lll_color_count(n, r, h);
    uint64_t k64 = res.color_count_formula;
    if (k64 > std::numeric_limits<uint32_t>::max()) throw std::overflow_error("lll_sample: color count exceeds 32 bits");
    const uint32_t k = static_cast<uint32_t>(k64);

    std::vector<CopyCells> copies;
    for_each_combination(n, h, [&](const std::vector<int>& w) {
        CopyCells c;
        c.verts.assign(w.begin(), w.end());
        for_each_combination(h, r, [&](const std::vector<int>& idx) {
            Edge e(r);
            for (int i = 0; i < r; ++i) e[i] = w[idx[i]];
            c.edge_ranks.push_back(colex_rank(e));
        });
        copies.push_back(std::move(c));
    });
    if (budget <= 0) budget = 1000 * static_cast<int64_t>(copies.size());

    ColoringFamily fam;
    fam.n = n;
    fam.r = r;
    fam.k = k;
    fam.provenance.tag = "lll(h=" + std::to_string(h) + ")";
    fam.provenance.seed = seed;
    Rng rng(seed);
    fam.colors.resize(uint64_t(n) * binomial(n, r));
    for (auto& c : fam.colors) c = static_cast<uint32_t>(bounded(rng, k)) + 1;

    const uint64_t stride = fam.edge_count();
    while (true) {
        std::size_t violated = copies.size();
        for (std::size_t i = 0; i < copies.size(); ++i)
            if (copy_violated(fam, copies[i])) {
                violated = i;
                break;
            }
        if (violated == copies.size()) break;
        if (res.resamples >= static_cast<uint64_t>(budget))
            throw std::runtime_error("lll_sample: resample budget exhausted (pathological seed?)");
        ++res.resamples;
        const CopyCells& c = copies[violated];
        for (Vertex v : c.verts)
            for (uint64_t rank : c.edge_ranks)
                fam.colors[uint64_t(v) * stride + rank] = static_cast<uint32_t>(bounded(rng, k)) + 1;
    }
    fam.validate();
    res.family = std::move(fam);
    return res;
}

// ---------------------------------------------------------------------------

ColoringFamily product_lift(const ColoringFamily& base, const std::vector<Vertex>& anchors) {
    base.validate();
    std::vector<char> seen(base.n, 0);
    for (Vertex u : anchors) {
        if (u < 0 || u >= base.n) throw std::invalid_argument("product_lift: anchor outside host");
        if (seen[u]) throw std::invalid_argument("product_lift: duplicate anchor");
        seen[u] = 1;
    }
    const unsigned h = static_cast<unsigned>(anchors.size());
    const uint64_t k_lifted = checked_pow(base.k, h + 1, std::numeric_limits<uint32_t>::max());

    ColoringFamily out;
    out.n = base.n;
    out.r = base.r;
    out.k = static_cast<uint32_t>(k_lifted);
    out.provenance.tag = "lift(h=" + std::to_string(h) + " of " + base.provenance.tag + ")";
    out.provenance.seed = base.provenance.seed;
    const uint64_t stride = base.edge_count();
    out.colors.resize(base.colors.size());
    for (Vertex v = 0; v < base.n; ++v)
        for (uint64_t rank = 0; rank < stride; ++rank) {
            uint64_t acc = base.color(v, rank) - 1;
            for (Vertex u : anchors) acc = acc * base.k + (base.color(u, rank) - 1);
            out.colors[uint64_t(v) * stride + rank] = static_cast<uint32_t>(acc) + 1;
        }
    return out;
}

// ---------------------------------------------------------------------------
// (p,q)-coloring search
// ---------------------------------------------------------------------------

namespace {

struct PqInstance {
    int n, t, p, q;
    uint32_t k;
    uint64_t edge_total;
    std::vector<std::vector<uint32_t>> set_edges;   // per p-set: member edge ranks
    std::vector<std::vector<uint32_t>> edge_sets;   // per edge: containing p-sets

    PqInstance(int n_, int t_, int p_, int q_, uint32_t k_) : n(n_), t(t_), p(p_), q(q_), k(k_) {
        edge_total = binomial(n, t);
        edge_sets.resize(edge_total);
        for_each_combination(n, p, [&](const std::vector<int>& subset) {
            std::vector<uint32_t> members;
            for_each_combination(p, t, [&](const std::vector<int>& idx) {
                Edge e(t);
                for (int i = 0; i < t; ++i) e[i] = subset[idx[i]];
                members.push_back(static_cast<uint32_t>(colex_rank(e)));
            });
            uint32_t sid = static_cast<uint32_t>(set_edges.size());
            for (uint32_t m : members) edge_sets[m].push_back(sid);
            set_edges.push_back(std::move(members));
        });
    }
};

// Backtracking state: per p-set color multiset, distinct count, unassigned count.
struct PqSearch {
    const PqInstance& inst;
    std::vector<uint32_t> assignment;                 // 0 = unassigned
    std::vector<std::vector<uint16_t>> set_color_use; // [set][color]
    std::vector<int> set_distinct;
    std::vector<int> set_unassigned;
    uint64_t nodes = 0;
    uint64_t node_cap;
    bool capped = false;

    explicit PqSearch(const PqInstance& i, uint64_t cap)
        : inst(i),
          assignment(i.edge_total, 0),
          set_color_use(i.set_edges.size(), std::vector<uint16_t>(i.k + 1, 0)),
          set_distinct(i.set_edges.size(), 0),
          set_unassigned(i.set_edges.size(), 0),
          node_cap(cap) {
        for (std::size_t s = 0; s < inst.set_edges.size(); ++s)
            set_unassigned[s] = static_cast<int>(inst.set_edges[s].size());
    }

    bool set_alive(std::size_t s) const { return set_distinct[s] + set_unassigned[s] >= inst.q; }

    void assign(uint32_t edge, uint32_t c) {
        assignment[edge] = c;
        for (uint32_t s : inst.edge_sets[edge]) {
            if (set_color_use[s][c]++ == 0) ++set_distinct[s];
            --set_unassigned[s];
        }
    }

    void unassign(uint32_t edge) {
        uint32_t c = assignment[edge];
        assignment[edge] = 0;
        for (uint32_t s : inst.edge_sets[edge]) {
            if (--set_color_use[s][c] == 0) --set_distinct[s];
            ++set_unassigned[s];
        }
    }

    bool feasible_after(uint32_t edge) const {
        for (uint32_t s : inst.edge_sets[edge])
            if (!set_alive(s)) return false;
        return true;
    }

    // Next edge: an unassigned member of the tightest live p-set, else the
    // lowest unassigned rank.
    int select_edge() const {
        int best_edge = -1;
        int best_slack = std::numeric_limits<int>::max();
        for (std::size_t s = 0; s < inst.set_edges.size(); ++s) {
            if (set_unassigned[s] == 0) continue;
            int slack = set_distinct[s] + set_unassigned[s] - inst.q;
            if (slack >= best_slack) continue;
            for (uint32_t e : inst.set_edges[s])
                if (assignment[e] == 0) {
                    best_slack = slack;
                    best_edge = static_cast<int>(e);
                    break;
                }
        }
        if (best_edge >= 0) return best_edge;
        for (uint64_t e = 0; e < inst.edge_total; ++e)
            if (assignment[e] == 0) return static_cast<int>(e);
        return -1;
    }

    bool dfs(uint64_t assigned, uint32_t used_colors, const std::vector<uint32_t>& value_order) {
        if (assigned == inst.edge_total) return true;
        if (++nodes > node_cap) {
            capped = true;
            return false;
        }
        int edge = select_edge();
        uint32_t limit = std::min<uint32_t>(inst.k, used_colors + 1);  // first-use symmetry
        for (uint32_t ci = 0; ci < inst.k; ++ci) {
            uint32_t c = value_order[ci];
            if (c > limit) continue;
            assign(edge, c);
            if (feasible_after(edge) && dfs(assigned + 1, std::max(used_colors, c), value_order)) return true;
            unassign(edge);
            if (capped) return false;
        }
        return false;
    }
};

std::optional<std::vector<uint32_t>> pq_greedy(const PqInstance& inst) {
    PqSearch s(inst, std::numeric_limits<uint64_t>::max());
    uint32_t used = 0;
    for (uint64_t e = 0; e < inst.edge_total; ++e) {
        uint32_t best = 0;
        long best_score = std::numeric_limits<long>::min();
        uint32_t limit = std::min<uint32_t>(inst.k, used + 1);
        for (uint32_t c = 1; c <= limit; ++c) {
            s.assign(static_cast<uint32_t>(e), c);
            bool ok = s.feasible_after(static_cast<uint32_t>(e));
            long score = 0;
            if (ok) {
                // prefer colors that add distinct values to still-needy sets
                for (uint32_t sid : inst.edge_sets[e]) {
                    if (s.set_color_use[sid][c] == 1 && s.set_distinct[sid] <= inst.q) score += 2;
                    score -= s.set_color_use[sid][c] > 1 ? 1 : 0;
                }
            }
            s.unassign(static_cast<uint32_t>(e));
            if (ok && score > best_score) {
                best_score = score;
                best = c;
            }
        }
        if (best == 0) return std::nullopt;
        s.assign(static_cast<uint32_t>(e), best);
        used = std::max(used, best);
    }
    return s.assignment;
}

}  // namespace

PQSearchResult pq_coloring_search(int n, int t, int p, int q, uint32_t k_max, uint64_t seed, uint64_t node_budget) {
    if (!(2 <= t && t <= p && p <= n)) throw std::invalid_argument("pq_coloring_search: need 2 <= t <= p <= n");
    if (q < 1 || uint64_t(q) > binomial(p, t)) throw std::invalid_argument("pq_coloring_search: q outside [1, C(p,t)]");

    PQSearchResult res;
    res.minimal_proven = true;
    for (uint32_t k = static_cast<uint32_t>(q); k <= k_max; ++k) {
        PqInstance inst(n, t, p, q, k);
        auto finish = [&](std::vector<uint32_t> colors) {
            PQColoring col;
            col.n = n;
            col.t = t;
            col.p = p;
            col.q = q;
            col.k = k;
            col.colors = std::move(colors);
            col.seed = seed;
            if (!col.valid()) throw std::logic_error("pq_coloring_search: produced an invalid coloring");
            res.coloring = std::move(col);
        };
        if (auto greedy = pq_greedy(inst)) {
            finish(std::move(*greedy));
            res.complete = true;
            return res;
        }
        // Randomized restarts, then one uncapped run that decides k for sure.
        bool solved = false;
        bool refuted = false;
        const int restarts = 4;
        for (int attempt = 0; attempt <= restarts && !solved && !refuted; ++attempt) {
            bool final_attempt = attempt == restarts;
            uint64_t cap = final_attempt ? node_budget : std::max<uint64_t>(1000, node_budget / 16);
            PqSearch search(inst, cap);
            std::vector<uint32_t> value_order(k);
            for (uint32_t i = 0; i < k; ++i) value_order[i] = i + 1;
            if (attempt > 0) {
                Rng rng(mix_seed(seed, (uint64_t(k) << 8) | unsigned(attempt)));
                for (uint32_t i = k; i > 1; --i)
                    std::swap(value_order[i - 1], value_order[bounded(rng, i)]);
            }
            bool found = search.dfs(0, 0, value_order);
            res.nodes += search.nodes;
            if (found) {
                finish(std::move(search.assignment));
                solved = true;
                res.complete = true;
            } else if (!search.capped) {
                refuted = true;  // complete search: no (p,q)-coloring with k colors
            } else if (final_attempt) {
                res.minimal_proven = false;  // ran out of budget at this k
            }
        }
        if (solved) return res;
    }
    res.complete = res.minimal_proven;
    return res;
}

// ---------------------------------------------------------------------------

ColoringFamily tce_family(int n, const PQColoring& gamma, const PQColoring& rho) {
    if (gamma.n != n || rho.n != n) throw std::invalid_argument("tce_family: colorings on the wrong host");
    if (gamma.t != 3 || gamma.p != 4 || gamma.q != 3) throw std::invalid_argument("tce_family: gamma must be a (4,3)-coloring of triples");
    if (rho.t != 4 || rho.p != 5 || rho.q != 4) throw std::invalid_argument("tce_family: rho must be a (5,4)-coloring of quadruples");
    if (!gamma.valid() || !rho.valid()) throw std::invalid_argument("tce_family: input coloring fails its (p,q) property");
    {
        std::vector<uint32_t> a(gamma.colors), b(rho.colors);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        std::vector<uint32_t> inter;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
        if (!inter.empty()) throw std::invalid_argument("tce_family: gamma and rho color ranges overlap");
    }

    ColoringFamily fam;
    fam.n = n;
    fam.r = 3;
    fam.k = std::max(gamma.k, rho.k);
    fam.provenance.tag = "tce";
    fam.provenance.seed = gamma.seed;
    const uint64_t stride = binomial(n, 3);
    fam.colors.assign(uint64_t(n) * stride, 0);
    uint64_t rank = 0;
    for_each_combination(n, 3, [&](const std::vector<int>& e) {
        uint32_t ge = gamma.colors[rank];
        for (Vertex v = 0; v < n; ++v) {
            uint32_t c;
            if (std::find(e.begin(), e.end(), v) != e.end()) {
                c = ge;
            } else {
                Edge quad = e;
                quad.push_back(v);
                std::sort(quad.begin(), quad.end());
                c = rho.color_of(quad);
            }
            fam.colors[uint64_t(v) * stride + rank] = c;
        }
        ++rank;
    });
    fam.validate();
    return fam;
}

// ---------------------------------------------------------------------------

WideEdgeColoring ramsey_product_coloring(const ColoringFamily& family, const VertexOrder& base_order) {
    family.validate();
    if (base_order.size() != family.n || !base_order.valid())
        throw std::invalid_argument("ramsey_product_coloring: order is not a bijection on the host");
    const int r = family.r;
    const int s = r + 1;
    const unsigned tuple_len = static_cast<unsigned>(s) * static_cast<unsigned>(s);
    WideEdgeColoring g;
    g.n = family.n;
    g.s = s;
    g.k = checked_pow(family.k, tuple_len, std::numeric_limits<uint64_t>::max());
    g.colors.resize(binomial(family.n, s));
    uint64_t rank = 0;
    std::vector<Vertex> by_rank(s);
    for_each_combination(family.n, s, [&](const std::vector<int>& e) {
        by_rank.assign(e.begin(), e.end());
        std::sort(by_rank.begin(), by_rank.end(),
                  [&](Vertex a, Vertex b) { return base_order.ranks[a] < base_order.ranks[b]; });
        uint64_t acc = 0;
        for (int i = 0; i < s; ++i) {          // row: colorer u_i
            for (int j = 0; j < s; ++j) {      // column j removes u_{s-1-j}
                Edge sub;
                sub.reserve(r);
                for (int t = 0; t < s; ++t)
                    if (t != s - 1 - j) sub.push_back(by_rank[t]);
                std::sort(sub.begin(), sub.end());
                acc = acc * family.k + (family.color_of(by_rank[i], sub) - 1);
            }
        }
        g.colors[rank++] = acc + 1;
    });
    return g;
}

// ---------------------------------------------------------------------------

ColoringFamily random_family(int n, int r, uint32_t k, uint64_t seed) {
    if (n < r || r < 2 || k < 1) throw std::invalid_argument("random_family: need n >= r >= 2, k >= 1");
    ColoringFamily fam;
    fam.n = n;
    fam.r = r;
    fam.k = k;
    fam.provenance.tag = "random";
    fam.provenance.seed = seed;
    Rng rng(seed);
    fam.colors.resize(uint64_t(n) * binomial(n, r));
    for (auto& c : fam.colors) c = static_cast<uint32_t>(bounded(rng, k)) + 1;
    return fam;
}

ColoringFamily constant_family(int n, int r, uint32_t color_value) {
    ColoringFamily fam;
    fam.n = n;
    fam.r = r;
    fam.k = color_value;
    fam.provenance.tag = "constant";
    fam.colors.assign(uint64_t(n) * binomial(n, r), color_value);
    fam.validate();
    return fam;
}

ColoringFamily injective_family(int n, int r) {
    ColoringFamily fam;
    fam.n = n;
    fam.r = r;
    const uint64_t stride = binomial(n, r);
    if (stride > std::numeric_limits<uint32_t>::max()) throw std::overflow_error("injective_family: too many edges");
    fam.k = static_cast<uint32_t>(stride);
    fam.provenance.tag = "injective";
    fam.colors.resize(uint64_t(n) * stride);
    for (Vertex v = 0; v < n; ++v)
        for (uint64_t rank = 0; rank < stride; ++rank) fam.colors[uint64_t(v) * stride + rank] = static_cast<uint32_t>(rank) + 1;
    return fam;
}

}  // namespace rainbow
