#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/hypergraph.hpp"

namespace rainbow {

struct Provenance {
    std::string tag;
    uint64_t seed = 0;
};

// One k-edge-coloring of K_n^(r) per vertex: a dense row-major table
// color[v][edge_rank], edge ranks colexicographic over sorted edges, colors
// in 1..k. Immutable once built; concurrent reads are safe.
struct ColoringFamily {
    int n = 0;
    int r = 0;
    uint32_t k = 0;
    std::vector<uint32_t> colors;  // n * C(n,r) entries
    Provenance provenance;

    uint64_t edge_count() const;
    uint32_t color(Vertex v, uint64_t edge_rank) const { return colors[uint64_t(v) * edge_count() + edge_rank]; }
    uint32_t color_of(Vertex v, const Edge& e) const;
    void validate() const;
};

// A single k-edge-coloring of K_n^(t) in which every p vertices span at least
// q distinct colors. Colors live in 1..k; a shifted copy occupies the upper
// part of a wider range so two colorings can be made value-disjoint.
struct PQColoring {
    int n = 0;
    int t = 0;
    int p = 0;
    int q = 0;
    uint32_t k = 0;                // colors are in 1..k (possibly only the top part)
    std::vector<uint32_t> colors;  // C(n,t) entries, colex-ranked
    uint64_t seed = 0;

    uint32_t color(uint64_t edge_rank) const { return colors[edge_rank]; }
    uint32_t color_of(const Edge& e) const;
    // Complete check over all C(n,p) vertex subsets.
    bool valid() const;
    PQColoring shifted(uint32_t delta) const;
};

// A single coloring of K_n^(s) with potentially huge color values (used for
// the product coloring g of K_n^(r+1)).
struct WideEdgeColoring {
    int n = 0;
    int s = 0;
    uint64_t k = 0;
    std::vector<uint64_t> colors;

    uint64_t color_of(const Edge& e) const;
};

// f_v(e) = bucket index of e at v under base_order, on the complete host;
// always uses k = 2r+1 colors.
ColoringFamily deterministic_family(int n, int r, const VertexOrder& base_order);

struct LllResult {
    ColoringFamily family;
    uint64_t resamples = 0;
    uint64_t color_count_formula = 0;  // ceil(h^(2r+r/h) * n^((h-r)/h))
};

// Constructive sampler for the clique pattern K_h^(r): draw all colors
// uniformly, then resample the cells of the first violated copy (a copy where
// every vertex sees a repeated color) until none is violated. Throws
// std::runtime_error when the resample budget is exhausted; budget <= 0
// selects 1000 * (number of copies).
LllResult lll_sample(int n, int r, int h, uint64_t seed, int64_t budget = 0);

// Exact ceil(h^(2r+r/h) * n^((h-r)/h)) via integer root extraction.
uint64_t lll_color_count(int n, int r, int h);

// f'_v(e) = (f_v(e), f_{u1}(e), ..., f_{uh}(e)) flattened by mixed radix
// (first coordinate most significant); k' = k^(h+1).
ColoringFamily product_lift(const ColoringFamily& base, const std::vector<Vertex>& anchors);

struct PQSearchResult {
    std::optional<PQColoring> coloring;
    // True when every color count below the returned (or requested) one was
    // refuted by a completed search, i.e. the k found is minimal.
    bool minimal_proven = false;
    // True when the search for the last attempted k ran to completion.
    bool complete = false;
    uint64_t nodes = 0;
};

// Searches for a (p,q)-coloring of K_n^(t) with at most k_max colors, trying
// k = q, q+1, ... . Greedy saturation first, then randomized-restart
// backtracking with first-use color symmetry; the last restart runs without a
// node cap so exhaustion proves infeasibility for that k.
PQSearchResult pq_coloring_search(int n, int t, int p, int q, uint32_t k_max, uint64_t seed,
                                  uint64_t node_budget = 2'000'000);

// f_v(e) = gamma(e) if v in e, rho(e + v) otherwise. gamma must be a valid
// (4,3)-coloring of triples, rho a valid (5,4)-coloring of quadruples, on the
// same n, with disjoint color value ranges (shift one first).
ColoringFamily tce_family(int n, const PQColoring& gamma, const PQColoring& rho);

// The (r+1)^2-tuple coloring of K_n^(r+1): edge {u1<...<u(r+1)} (by
// base_order) gets row i, column j entry f_{ui}(e \ u_{r+2-j}), flattened
// row-major into one integer; at most k^((r+1)^2) colors.
WideEdgeColoring ramsey_product_coloring(const ColoringFamily& family, const VertexOrder& base_order);

// Families assembled directly (tests, CLI): uniform random and constant.
ColoringFamily random_family(int n, int r, uint32_t k, uint64_t seed);
ColoringFamily constant_family(int n, int r, uint32_t color_value = 1);
// Every f_v assigns edge e its rank + 1: injective, hence rainbow everywhere.
ColoringFamily injective_family(int n, int r);

}  // namespace rainbow
