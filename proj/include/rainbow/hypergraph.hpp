#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rainbow {

using Vertex = int;
using Edge = std::vector<Vertex>;  // always sorted ascending

// An r-uniform hypergraph on labeled vertices 0..n-1. Edges are r-subsets,
// stored sorted, the edge list itself sorted lexicographically, no duplicates.
struct UniformHypergraph {
    int r = 0;
    int n = 0;
    std::vector<Edge> edges;

    // Sorts edges, validates, and returns the graph. Throws std::invalid_argument
    // on malformed input. With require_spanning, every vertex must lie in an edge.
    static UniformHypergraph make(int r, int n, std::vector<Edge> edges, bool require_spanning = false);

    void validate(bool require_spanning = false) const;
    bool spanning() const;
    bool has_edge(const Edge& e) const;
    std::vector<int> degrees() const;
    std::vector<Vertex> isolated_vertices() const;

    friend bool operator==(const UniformHypergraph& a, const UniformHypergraph& b) {
        return a.r == b.r && a.n == b.n && a.edges == b.edges;
    }
};

// A bijection from vertices 0..n-1 to ranks 1..n.
struct VertexOrder {
    std::vector<int> ranks;  // ranks[v] in 1..n

    int size() const { return static_cast<int>(ranks.size()); }
    bool valid() const;

    static VertexOrder identity(int n);
    static VertexOrder from_ranks(std::vector<int> ranks);
    // Builds the order whose rank-1, rank-2, ... vertices are seq[0], seq[1], ...
    static VertexOrder from_sequence(const std::vector<Vertex>& seq);
    // Maps rank t to n+1-t.
    VertexOrder reversed() const;

    friend bool operator==(const VertexOrder& a, const VertexOrder& b) { return a.ranks == b.ranks; }
};

// An injective placement of a pattern into the complete host K_host_n^(r).
struct Embedding {
    UniformHypergraph pattern;
    int host_n = 0;
    std::vector<Vertex> map;  // map[v] = host image of pattern vertex v

    bool valid() const;
    Edge image_edge(const Edge& pattern_edge) const;
    std::vector<Edge> image_edges() const;
};

struct CanonicalResult {
    UniformHypergraph canonical;
    VertexOrder relabeling;  // input vertex v gets canonical label ranks[v]-1
};

// Canonical representative: equal canonical forms iff isomorphic. Degree-profile
// refinement, then backtracking over the residual cells, keeping the
// lexicographically least sorted edge list among the explored labelings.
CanonicalResult canonical_form(const UniformHypergraph& h);

bool is_isomorphic(const UniformHypergraph& a, const UniformHypergraph& b);

// Orbit of v0 under the full automorphism group (every u reachable by some
// edge-preserving bijection with v0 -> u).
std::vector<Vertex> automorphism_orbit(const UniformHypergraph& h, Vertex v0);
// Vertex orbits, each sorted, ordered by smallest member.
std::vector<std::vector<Vertex>> vertex_orbits(const UniformHypergraph& h);

// One representative per isomorphism class of spanning r-graphs with exactly
// m edges on at most max_n vertices. The generator fixes the first edge to
// {0..r-1} and lets each later edge introduce only the next unused labels,
// then rejects duplicates by canonical form. Yields canonical representatives
// in a deterministic first-seen order.
void enumerate_hypergraphs(int r, int m, int max_n, const std::function<void(const UniformHypergraph&)>& yield);
std::vector<UniformHypergraph> enumerate_hypergraphs(int r, int m, int max_n);

// Every copy of the pattern in K_host_n^(r) exactly once. A copy is an
// embedding up to pattern automorphism: two injections coincide iff they have
// the same image edge set and the same image set of isolated vertices.
void for_each_embedding(const UniformHypergraph& pattern, int host_n,
                        const std::function<void(const Embedding&)>& yield);
std::vector<Embedding> enumerate_embeddings(const UniformHypergraph& pattern, int host_n);
uint64_t count_embeddings(const UniformHypergraph& pattern, int host_n);

// Raw injective maps V(pattern) -> [host_n] in lexicographic order; visits
// each copy once per automorphism. fn returns false to stop early.
void for_each_injection(int pattern_n, int host_n, const std::function<bool(const std::vector<Vertex>&)>& fn);

}  // namespace rainbow
