#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/coloring.hpp"
#include "rainbow/hypergraph.hpp"

namespace rainbow {

// Certifies that a coloring family is NOT local for a pattern: an embedded
// copy plus, for every image vertex, a pair of copy edges it colors equally.
struct ViolationWitness {
    Embedding embedding;
    struct Clash {
        Vertex vertex;  // host vertex
        Edge edge_a;    // host edges of the copy
        Edge edge_b;
        uint32_t color;
    };
    std::vector<Clash> clashes;
};

// Recomputes everything from the family: genuine copy, every clash pair equal
// under f_vertex, both edges in the copy, and every copy vertex covered.
bool witness_reverifies(const ColoringFamily& family, const ViolationWitness& witness);

struct VerifyResult {
    bool ok = false;
    std::optional<ViolationWitness> witness;
    uint64_t copies_checked = 0;
};

// ok iff every copy of the pattern has a vertex whose coloring is rainbow on
// the copy's edges. Scans copies in a fixed canonical order (lexicographic by
// host vertex set, then injection) and reports the first violating copy; the
// result is identical for any thread count.
VerifyResult verify_local(const ColoringFamily& family, const UniformHypergraph& pattern, unsigned threads = 1);

// Patterns with a constructive pigeonhole refutation procedure.
struct AttackPattern {
    enum class Kind { sp3, sp4_1, sp4_2, sunflower, clique } kind = Kind::sp3;
    int d = 0;  // sunflower core size
    int t = 0;  // sunflower petal count (>= 4)
    int p = 0;  // clique order

    static AttackPattern parse(const std::string& text);
    std::string name() const;
    UniformHypergraph pattern_graph(int r) const;
};

// Runs the corresponding pigeonhole procedure (vector bucketing for sp3/sp4,
// the core/petal bucketing for sunflowers, the balanced-partition triple count
// with 3-set peeling for cliques). A witness is returned exactly when the
// procedure closes at this host size; nullopt carries no validity claim.
std::optional<ViolationWitness> attack(const ColoringFamily& family, const AttackPattern& pattern);

// Realizes the bucket argument on a monochromatic vertex set: g must be the
// product coloring of the family under base_order, S a g-monochromatic vertex
// set, and the pattern 2-locally large. Embeds the pattern into S minus its
// top-ranked vertex, aligned with a 2LL witness order, and emits the per-vertex
// clashes. Returns nullopt when S is too small or the pattern is not 2LL;
// throws when S is not monochromatic or g disagrees with the family on S.
std::optional<ViolationWitness> extract_from_monochromatic(const WideEdgeColoring& g,
                                                           const std::vector<Vertex>& s_vertices,
                                                           const UniformHypergraph& pattern,
                                                           const ColoringFamily& family,
                                                           const VertexOrder& base_order);

}  // namespace rainbow
