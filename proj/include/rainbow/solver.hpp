#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rainbow/analysis.hpp"
#include "rainbow/coloring.hpp"
#include "rainbow/hypergraph.hpp"

namespace rainbow {

enum class Verdict { sat, unsat, inconclusive };

std::string to_string(Verdict v);

struct SolveStats {
    uint64_t nodes = 0;
    uint64_t variables = 0;
    uint64_t copies = 0;
    bool value_symmetry = true;
};

struct SolveCertificate {
    Verdict verdict = Verdict::inconclusive;
    std::optional<ColoringFamily> family;  // present iff SAT; verified before return
    SolveStats stats;
    int n = 0;
    int r = 0;
    uint32_t k = 0;
    UniformHypergraph pattern;
};

struct SolveOptions {
    uint64_t node_budget = 50'000'000;
    unsigned threads = 1;
};

// Decision form: does an (n,r,pattern)-local coloring with k colors exist?
// Complete backtracking over the (vertex, edge) pairs that occur in some copy
// of the pattern (all other cells are fixed to color 1), with colors introduced
// in first-use order. UNSAT only after exhausting the space; budget exhaustion
// yields INCONCLUSIVE, never a silent UNSAT.
SolveCertificate exists_local_coloring(int n, int r, const UniformHypergraph& pattern, uint32_t k,
                                       const SolveOptions& options = {});

struct MinColorsResult {
    std::optional<uint32_t> exact;  // set when lo == hi with complete searches
    uint32_t lo = 1;                // every k < lo is refuted
    std::optional<uint32_t> hi;     // some verified family with hi colors exists
    std::string note;
};

// Exact minimum when every decision completes, otherwise the tightest bracket.
// For patterns that are not 2-locally large the deterministic construction
// pins hi at 2r+1 even when the search gives out.
MinColorsResult min_colors(int n, int r, const UniformHypergraph& pattern, uint32_t k_max,
                           const SolveOptions& options = {});

}  // namespace rainbow
