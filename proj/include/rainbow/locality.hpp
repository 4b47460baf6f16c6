#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/hypergraph.hpp"

namespace rainbow {

// The 2r+1 position-indexed edge buckets of one vertex under one order.
// Bucket i (1<=i<=r) holds edges containing x whose rank sits at position i in
// the increasing rank order of the edge; bucket i (r+1<=i<=2r+1) holds edges
// avoiding x where the rank of x would land at position i-r after insertion.
struct TxiPartition {
    Vertex x = 0;
    VertexOrder order;
    std::vector<std::vector<int>> buckets;  // buckets[i-1] = edge indices in T_x^i

    int bucket_count() const { return static_cast<int>(buckets.size()); }
};

TxiPartition txi_partition(const UniformHypergraph& h, const VertexOrder& order, Vertex x);

// Bucket index in 1..2r+1 of edge e at vertex x; e need not belong to a graph.
int txi_bucket(const Edge& e, const VertexOrder& order, Vertex x);

// True iff every vertex has some bucket holding at least two edges.
bool is_2ll_under(const UniformHypergraph& h, const VertexOrder& order);

enum class TwoLLStatus { two_locally_large, not_two_locally_large };

struct ClassificationRecord {
    UniformHypergraph canonical;
    TwoLLStatus status = TwoLLStatus::not_two_locally_large;
    std::optional<VertexOrder> witness;  // present iff 2LL
    // Orders the exhaustive search accounts for; orders_examined * symmetry_factor
    // covers all n! orders of the searched vertex set (the core, when isolated
    // vertices were pinned on top).
    uint64_t orders_examined = 0;
    uint64_t symmetry_factor = 1;
    std::string reduction;  // human-readable description of applied reductions

    bool is_2ll() const { return status == TwoLLStatus::two_locally_large; }
};

struct DecideOptions {
    // Restrict the search so one vertex of a largest automorphism orbit is
    // ranked below its orbit mates; symmetry_factor records the orbit size.
    bool use_symmetry = true;
    // Pin isolated vertices to the top ranks (they are satisfied by bucket
    // 2r+1 whenever the graph has >= 2 edges) and search core orders only.
    bool pin_isolated = true;
    unsigned threads = 1;
};

// Complete decision: a witness order, or an exhaustion certificate. The search
// assigns ranks bottom-up; a vertex's buckets are fixed the moment it is
// placed, so a bad placement prunes the whole subtree (its completions are
// counted, never visited).
ClassificationRecord decide_2ll(const UniformHypergraph& h, const DecideOptions& options = {});

// One record per isomorphism class from enumerate_hypergraphs(r, m, max_n);
// max_n <= 0 selects the spanning bound r*m. Deterministic order.
std::vector<ClassificationRecord> classify_all(int r, int m, int max_n = 0, unsigned threads = 1);

}  // namespace rainbow
