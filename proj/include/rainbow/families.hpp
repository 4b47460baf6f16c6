#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rainbow/hypergraph.hpp"

namespace rainbow {

// Named small hypergraphs and parametric families. Vertex labels follow the
// standard pictures: tp3 = {abc,bcd,cde} on a..e = 0..4, and so on.
//
//   tp3, sp3, lc3, tce, lce          fixed 3-uniform graphs
//   sp1(t), sp2(t)                   alternating 3-uniform paths, t edges
//   lp(t), tp(t)                     loose / tight 3-uniform paths, t edges
//   sunflower(d,m[,r])               S_r(d,m), core size d, m petals (r defaults to 3)
//   matching(t[,r])                  t pairwise disjoint edges (= sunflower(0,t));
//   clique(p[,r])                    complete K_p^(r)
UniformHypergraph make_family(const std::string& name, const std::vector<int>& params);

// Parses "sp1(4)", "sunflower(1,4)", "clique(5,4)", ... into make_family calls.
UniformHypergraph parse_family(const std::string& text);

// m edges pairwise intersecting in exactly one common core.
struct SunflowerWitness {
    std::vector<Vertex> core;  // sorted
    std::vector<Edge> petals;

    // Checks petals are edges of h, pairwise intersections all equal the core.
    bool valid_for(const UniformHypergraph& h) const;
};

// Greedy procedure first (maximal disjoint family, then recurse into the link
// of a max-degree covered vertex); guaranteed to succeed when h has at least
// (m-1)^r * r! + 1 edges. When the greedy pass fails, an exhaustive search over
// candidate cores settles existence, so `nullopt` is a proof of absence.
std::optional<SunflowerWitness> find_sunflower(const UniformHypergraph& h, int m);

// One edge per 0/1 vector: the edge contains vertex i iff coordinate i is '1'.
// All vectors must share the same length and Hamming weight.
UniformHypergraph cube_bridge(const std::vector<std::string>& vectors);
std::string edge_to_vector(const Edge& e, int n);

}  // namespace rainbow
