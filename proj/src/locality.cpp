#include "rainbow/locality.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

#include "rainbow/combinatorics.hpp"
#include "rainbow/parallel.hpp"

namespace rainbow {

int txi_bucket(const Edge& e, const VertexOrder& order, Vertex x) {
    const int r = static_cast<int>(e.size());
    int below = 0;
    bool contains = false;
    for (Vertex v : e) {
        if (v == x) {
            contains = true;
            continue;
        }
        if (order.ranks[v] < order.ranks[x]) ++below;
    }
    return contains ? 1 + below : r + 1 + below;
}

TxiPartition txi_partition(const UniformHypergraph& h, const VertexOrder& order, Vertex x) {
    if (x < 0 || x >= h.n) throw std::invalid_argument("txi_partition: vertex outside graph");
    if (order.size() != h.n || !order.valid()) throw std::invalid_argument("txi_partition: order is not a bijection on V");
    TxiPartition part;
    part.x = x;
    part.order = order;
    part.buckets.assign(2 * h.r + 1, {});
    for (std::size_t i = 0; i < h.edges.size(); ++i)
        part.buckets[txi_bucket(h.edges[i], order, x) - 1].push_back(static_cast<int>(i));
    return part;
}

bool is_2ll_under(const UniformHypergraph& h, const VertexOrder& order) {
    if (order.size() != h.n || !order.valid()) throw std::invalid_argument("is_2ll_under: order is not a bijection on V");
    std::vector<int> counts(2 * h.r + 2, 0);
    for (Vertex x = 0; x < h.n; ++x) {
        std::fill(counts.begin(), counts.end(), 0);
        bool good = false;
        for (const auto& e : h.edges) {
            int b = txi_bucket(e, order, x);
            if (++counts[b] >= 2) {
                good = true;
                break;
            }
        }
        if (!good) return false;
    }
    return h.n > 0;
}

namespace {

// Rank-by-rank DFS over orders of `verts`. Placing x fixes every bucket of x
// (edges below x are exactly the placed ones), so x failing kills the subtree.
struct OrderSearch {
    const UniformHypergraph& h;
    std::vector<Vertex> verts;       // vertices being ordered
    std::vector<Vertex> orbit;       // symmetry orbit (possibly empty)
    Vertex pivot = -1;               // must precede the rest of its orbit

    std::vector<Vertex> placement;   // placement[i] = vertex at rank i+1
    std::vector<char> placed;        // by vertex id
    std::vector<int> edge_below;     // per edge: placed vertices it contains
    std::vector<char> in_orbit;      // by vertex id

    uint64_t examined = 0;
    std::optional<std::vector<Vertex>> witness;
    const std::atomic<long>* stop_if_before = nullptr;  // block index guard
    long block_index = 0;

    OrderSearch(const UniformHypergraph& graph, std::vector<Vertex> vertices)
        : h(graph), verts(std::move(vertices)), placed(graph.n, 0), edge_below(graph.edges.size(), 0), in_orbit(graph.n, 0) {}

    void set_orbit(std::vector<Vertex> o) {
        orbit = std::move(o);
        pivot = orbit.empty() ? -1 : orbit.front();
        for (Vertex v : orbit) in_orbit[v] = 1;
    }

    bool vertex_good(Vertex x) const {
        // bucket = (x in e ? 1 : r+1) + edge_below; a repeat within either group
        // means two edges share a bucket.
        int counts[2 * kMaxBinomialK + 2] = {0};
        for (std::size_t i = 0; i < h.edges.size(); ++i) {
            const auto& e = h.edges[i];
            bool contains = std::binary_search(e.begin(), e.end(), x);
            int below = edge_below[i] - (contains && placed[x] ? 1 : 0);
            int b = contains ? 1 + below : h.r + 1 + below;
            if (++counts[b] >= 2) return true;
        }
        return false;
    }

    uint64_t completions(std::size_t remaining, bool pivot_placed, std::size_t orbit_remaining) const {
        uint64_t all = factorial(static_cast<int>(remaining));
        if (pivot >= 0 && !pivot_placed && orbit_remaining > 0) return all / orbit_remaining;
        return all;
    }

    void dfs(std::size_t depth, bool pivot_placed, std::size_t orbit_remaining) {
        if (witness) return;
        if (stop_if_before && stop_if_before->load(std::memory_order_relaxed) < block_index) return;
        if (depth == verts.size()) {
            examined += 1;
            witness = placement;
            return;
        }
        for (Vertex v : verts) {
            if (placed[v]) continue;
            if (pivot >= 0 && !pivot_placed && in_orbit[v] && v != pivot) continue;  // pivot first in orbit
            placement.push_back(v);
            placed[v] = 1;
            for (std::size_t i = 0; i < h.edges.size(); ++i)
                if (std::binary_search(h.edges[i].begin(), h.edges[i].end(), v)) ++edge_below[i];
            bool v_pivot_placed = pivot_placed || v == pivot;
            std::size_t v_orbit_remaining = orbit_remaining - (in_orbit[v] ? 1 : 0);
            if (vertex_good(v)) {
                dfs(depth + 1, v_pivot_placed, v_orbit_remaining);
            } else {
                examined += completions(verts.size() - depth - 1, v_pivot_placed, v_orbit_remaining);
            }
            for (std::size_t i = 0; i < h.edges.size(); ++i)
                if (std::binary_search(h.edges[i].begin(), h.edges[i].end(), v)) --edge_below[i];
            placed[v] = 0;
            placement.pop_back();
            if (witness) return;
        }
    }
};

}  // namespace

ClassificationRecord decide_2ll(const UniformHypergraph& h, const DecideOptions& options) {
    h.validate();
    if (h.n == 0) throw std::invalid_argument("decide_2ll: graph has no vertices");

    ClassificationRecord rec;
    rec.canonical = h;  // callers classify canonical representatives; keep input as-is

    const std::size_t m = h.edges.size();
    std::vector<Vertex> iso = h.isolated_vertices();
    std::vector<Vertex> core;
    for (Vertex v = 0; v < h.n; ++v)
        if (std::find(iso.begin(), iso.end(), v) == iso.end()) core.push_back(v);

    bool pin = options.pin_isolated && m >= 2 && !iso.empty();
    std::vector<Vertex> searched = pin ? core : [&] {
        std::vector<Vertex> all(h.n);
        for (Vertex v = 0; v < h.n; ++v) all[v] = v;
        return all;
    }();
    if (pin) rec.reduction = "isolated vertices pinned to the top ranks; counts cover core orders";

    OrderSearch search(h, searched);
    if (options.use_symmetry && !searched.empty()) {
        // Largest orbit of the searched subgraph; pinning one representative
        // below its mates divides the order space by the orbit size.
        auto orbits = vertex_orbits(h);
        const std::vector<Vertex>* largest = nullptr;
        for (const auto& o : orbits) {
            bool inside = std::all_of(o.begin(), o.end(), [&](Vertex v) {
                return std::find(searched.begin(), searched.end(), v) != searched.end();
            });
            if (!inside || o.size() < 2) continue;
            if (!largest || o.size() > largest->size()) largest = &o;
        }
        if (largest) {
            search.set_orbit(*largest);
            rec.symmetry_factor = largest->size();
            if (!rec.reduction.empty()) rec.reduction += "; ";
            rec.reduction += "one automorphism-orbit representative fixed first (factor " +
                             std::to_string(largest->size()) + ")";
        }
    }

    unsigned threads = options.threads;
    if (threads <= 1) {
        search.dfs(0, search.pivot < 0, search.orbit.size());
    } else {
        // Blocks: choice of the rank-1 vertex. Lowest block with a witness wins.
        std::vector<Vertex> firsts;
        for (Vertex v : searched) {
            if (search.pivot >= 0 && search.in_orbit[v] && v != search.pivot) continue;
            firsts.push_back(v);
        }
        std::vector<OrderSearch> blocks;
        blocks.reserve(firsts.size());
        for (std::size_t b = 0; b < firsts.size(); ++b) {
            blocks.emplace_back(h, searched);
            blocks.back().set_orbit(search.orbit);
            blocks.back().block_index = static_cast<long>(b);
        }
        std::atomic<long> best_block{static_cast<long>(firsts.size())};
        run_blocks(firsts.size(), threads, [&](std::size_t b) {
            OrderSearch& s = blocks[b];
            s.stop_if_before = &best_block;
            Vertex v = firsts[b];
            s.placement.push_back(v);
            s.placed[v] = 1;
            for (std::size_t i = 0; i < h.edges.size(); ++i)
                if (std::binary_search(h.edges[i].begin(), h.edges[i].end(), v)) ++s.edge_below[i];
            bool pivot_placed = s.pivot < 0 || v == s.pivot;
            std::size_t orbit_remaining = s.orbit.size() - (s.pivot >= 0 && s.in_orbit[v] ? 1 : 0);
            if (s.vertex_good(v))
                s.dfs(1, pivot_placed, orbit_remaining);
            else
                s.examined += s.completions(searched.size() - 1, pivot_placed, orbit_remaining);
            if (s.witness) {
                long b_long = static_cast<long>(b);
                long cur = best_block.load();
                while (b_long < cur && !best_block.compare_exchange_weak(cur, b_long)) {
                }
            }
        });
        for (std::size_t b = 0; b < firsts.size(); ++b) {
            search.examined += blocks[b].examined;
            if (!search.witness && blocks[b].witness) search.witness = blocks[b].witness;
        }
    }

    rec.orders_examined = search.examined;
    if (search.witness) {
        rec.status = TwoLLStatus::two_locally_large;
        std::vector<Vertex> seq = *search.witness;
        if (pin) seq.insert(seq.end(), iso.begin(), iso.end());  // isolated on top
        std::vector<int> ranks(h.n, 0);
        for (std::size_t i = 0; i < seq.size(); ++i) ranks[seq[i]] = static_cast<int>(i) + 1;
        rec.witness = VertexOrder::from_ranks(std::move(ranks));
        if (!is_2ll_under(h, *rec.witness)) throw std::logic_error("decide_2ll: witness failed re-verification");
    } else {
        rec.status = TwoLLStatus::not_two_locally_large;
    }
    return rec;
}

std::vector<ClassificationRecord> classify_all(int r, int m, int max_n, unsigned threads) {
    if (max_n <= 0) max_n = r * m;
    auto classes = enumerate_hypergraphs(r, m, max_n);
    std::vector<ClassificationRecord> records(classes.size());
    DecideOptions opts;
    opts.threads = 1;
    run_blocks(classes.size(), threads, [&](std::size_t i) { records[i] = decide_2ll(classes[i], opts); });
    return records;
}

}  // namespace rainbow
