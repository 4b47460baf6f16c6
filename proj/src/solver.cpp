#include "rainbow/solver.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>

#include "rainbow/combinatorics.hpp"
#include "rainbow/locality.hpp"
#include "rainbow/parallel.hpp"

namespace rainbow {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::sat:
            return "SAT";
        case Verdict::unsat:
            return "UNSAT";
        case Verdict::inconclusive:
            return "INCONCLUSIVE";
    }
    return "?";
}

namespace {

struct Instance {
    int n, r;
    uint32_t k;
    // variable = (vertex, edge_rank) pair occurring in some copy
    std::vector<std::pair<Vertex, uint64_t>> vars;
    std::map<std::pair<Vertex, uint64_t>, int> var_index;
    // copies: per copy, per vertex slot: variable indices of its copy edges
    struct Copy {
        std::vector<Vertex> verts;
        std::vector<std::vector<int>> slot_vars;  // aligned with verts
    };
    std::vector<Copy> copies;
    std::vector<std::vector<std::pair<int, int>>> var_slots;  // var -> (copy, slot)

    Instance(int n_, int r_, const UniformHypergraph& pattern, uint32_t k_) : n(n_), r(r_), k(k_) {
        std::vector<std::vector<std::pair<std::vector<Vertex>, std::vector<uint64_t>>>> raw;
        for_each_embedding(pattern, n, [&](const Embedding& emb) {
            std::vector<uint64_t> ranks;
            for (const auto& e : pattern.edges) ranks.push_back(colex_rank(emb.image_edge(e)));
            std::sort(ranks.begin(), ranks.end());
            std::vector<Vertex> verts = emb.map;
            std::sort(verts.begin(), verts.end());
            Copy c;
            c.verts = std::move(verts);
            for (Vertex v : c.verts) {
                for (uint64_t rank : ranks) {
                    auto key = std::make_pair(v, rank);
                    if (!var_index.count(key)) {
                        var_index[key] = static_cast<int>(vars.size());
                        vars.push_back(key);
                    }
                }
            }
            c.slot_vars.resize(c.verts.size());
            for (std::size_t s = 0; s < c.verts.size(); ++s)
                for (uint64_t rank : ranks) c.slot_vars[s].push_back(var_index[{c.verts[s], rank}]);
            copies.push_back(std::move(c));
        });
        var_slots.resize(vars.size());
        for (std::size_t ci = 0; ci < copies.size(); ++ci)
            for (std::size_t s = 0; s < copies[ci].verts.size(); ++s)
                for (int v : copies[ci].slot_vars[s]) var_slots[v].push_back({static_cast<int>(ci), static_cast<int>(s)});
        for (auto& slots : var_slots) {
            std::sort(slots.begin(), slots.end());
            slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
        }
    }
};

struct Searcher {
    const Instance& inst;
    uint64_t budget;
    std::vector<uint32_t> assignment;      // per var, 0 = unassigned
    std::vector<char> slot_dead;           // flattened (copy, slot)
    std::vector<int> copy_alive;           // live vertex slots per copy
    std::vector<int> slot_base;            // copy -> first slot id
    std::vector<int> order;                // variable order (most constrained first)
    uint64_t nodes = 0;
    bool capped = false;

    explicit Searcher(const Instance& i, uint64_t node_budget) : inst(i), budget(node_budget) {
        assignment.assign(inst.vars.size(), 0);
        slot_base.resize(inst.copies.size());
        int total = 0;
        for (std::size_t c = 0; c < inst.copies.size(); ++c) {
            slot_base[c] = total;
            total += static_cast<int>(inst.copies[c].verts.size());
        }
        slot_dead.assign(total, 0);
        copy_alive.resize(inst.copies.size());
        for (std::size_t c = 0; c < inst.copies.size(); ++c)
            copy_alive[c] = static_cast<int>(inst.copies[c].verts.size());
        order.resize(inst.vars.size());
        for (std::size_t v = 0; v < inst.vars.size(); ++v) order[v] = static_cast<int>(v);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return inst.var_slots[a].size() > inst.var_slots[b].size();
        });
    }

    bool slot_has_clash(int copy, int slot) const {
        const auto& vars = inst.copies[copy].slot_vars[slot];
        for (std::size_t i = 0; i < vars.size(); ++i) {
            uint32_t ci = assignment[vars[i]];
            if (ci == 0) continue;
            for (std::size_t j = i + 1; j < vars.size(); ++j)
                if (assignment[vars[j]] == ci) return true;
        }
        return false;
    }

    // Assigns var := c; returns false on a dead copy. Newly dead slots are
    // pushed to `undo` for rollback.
    bool assign(int var, uint32_t c, std::vector<int>& undo) {
        assignment[var] = c;
        bool ok = true;
        for (const auto& [copy, slot] : inst.var_slots[var]) {
            int sid = slot_base[copy] + slot;
            if (slot_dead[sid]) continue;
            if (slot_has_clash(copy, slot)) {
                slot_dead[sid] = 1;
                undo.push_back(sid);
                if (--copy_alive[copy] == 0) ok = false;
            }
        }
        return ok;
    }

    void rollback(int var, const std::vector<int>& undo) {
        assignment[var] = 0;
        for (int sid : undo) {
            slot_dead[sid] = 0;
        }
        // recompute copy_alive lazily: each undone slot revives one vertex
        for (int sid : undo) {
            // find copy by binary search over slot_base
            auto it = std::upper_bound(slot_base.begin(), slot_base.end(), sid);
            int copy = static_cast<int>(it - slot_base.begin()) - 1;
            ++copy_alive[copy];
        }
    }

    bool dfs(std::size_t depth, uint32_t used) {
        if (depth == order.size()) return true;
        if (++nodes > budget) {
            capped = true;
            return false;
        }
        int var = order[depth];
        uint32_t limit = std::min<uint32_t>(inst.k, used + 1);
        for (uint32_t c = 1; c <= limit; ++c) {
            std::vector<int> undo;
            bool ok = assign(var, c, undo);
            if (ok && dfs(depth + 1, std::max(used, c))) return true;
            rollback(var, undo);
            if (capped) return false;
        }
        return false;
    }
};

}  // namespace

SolveCertificate exists_local_coloring(int n, int r, const UniformHypergraph& pattern, uint32_t k,
                                       const SolveOptions& options) {
    pattern.validate();
    if (pattern.r != r) throw std::invalid_argument("exists_local_coloring: uniformity mismatch");
    if (n < pattern.n) throw std::invalid_argument("exists_local_coloring: host smaller than pattern");
    if (k < 1) throw std::invalid_argument("exists_local_coloring: need k >= 1");

    SolveCertificate cert;
    cert.n = n;
    cert.r = r;
    cert.k = k;
    cert.pattern = pattern;

    Instance inst(n, r, pattern, k);
    cert.stats.copies = inst.copies.size();
    cert.stats.variables = inst.vars.size();

    auto build_family = [&](const std::vector<uint32_t>& assignment) {
        ColoringFamily fam = constant_family(n, r, 1);
        fam.k = k;
        fam.provenance.tag = "solver";
        const uint64_t stride = fam.edge_count();
        for (std::size_t v = 0; v < inst.vars.size(); ++v)
            if (assignment[v] != 0)
                fam.colors[uint64_t(inst.vars[v].first) * stride + inst.vars[v].second] = assignment[v];
        fam.validate();
        return fam;
    };

    std::optional<std::vector<uint32_t>> solution;
    bool capped = false;

    if (options.threads <= 1 || inst.vars.empty()) {
        Searcher search(inst, options.node_budget);
        if (search.dfs(0, 0)) solution = search.assignment;
        capped = search.capped;
        cert.stats.nodes = search.nodes;
    } else {
        // Portfolio split: enumerate assignment prefixes along the variable
        // order (respecting first-use color limits), one block per prefix.
        // UNSAT requires every block complete; SAT takes the lowest block.
        struct Prefix {
            std::vector<uint32_t> colors;
            uint32_t used = 0;
        };
        std::vector<Prefix> frontier{{{}, 0}};
        const std::size_t target = std::min<std::size_t>(4096, std::size_t(options.threads) * 8);
        while (frontier.size() < target && frontier.front().colors.size() < inst.vars.size()) {
            std::vector<Prefix> next;
            for (const auto& pre : frontier) {
                uint32_t limit = std::min<uint32_t>(k, pre.used + 1);
                for (uint32_t c = 1; c <= limit; ++c) {
                    Prefix ext = pre;
                    ext.colors.push_back(c);
                    ext.used = std::max(pre.used, c);
                    next.push_back(std::move(ext));
                }
            }
            frontier = std::move(next);
        }
        const std::size_t depth = frontier.front().colors.size();
        struct BlockOut {
            std::optional<std::vector<uint32_t>> solution;
            uint64_t nodes = 0;
            bool capped = false;
        };
        std::vector<BlockOut> outs(frontier.size());
        uint64_t per_block = options.node_budget / frontier.size() + 1;
        std::atomic<long> best_block{static_cast<long>(frontier.size())};
        run_blocks(frontier.size(), options.threads, [&](std::size_t b) {
            if (static_cast<long>(b) > best_block.load(std::memory_order_relaxed)) return;
            Searcher search(inst, per_block);
            bool feasible = true;
            for (std::size_t i = 0; i < depth && feasible; ++i) {
                std::vector<int> undo;
                feasible = search.assign(search.order[i], frontier[b].colors[i], undo);
            }
            if (feasible && search.dfs(depth, frontier[b].used)) {
                outs[b].solution = search.assignment;
                long bl = static_cast<long>(b);
                long cur = best_block.load();
                while (bl < cur && !best_block.compare_exchange_weak(cur, bl)) {
                }
            }
            outs[b].nodes = search.nodes;
            outs[b].capped = search.capped;
        });
        for (auto& out : outs) {
            cert.stats.nodes += out.nodes;
            if (!solution && out.solution) solution = std::move(out.solution);
            capped = capped || out.capped;
        }
    }

    if (solution) {
        for (auto& c : *solution)
            if (c == 0) c = 1;
        cert.family = build_family(*solution);
        auto check = verify_local(*cert.family, pattern);
        if (!check.ok) throw std::logic_error("exists_local_coloring: SAT certificate failed verification");
        cert.verdict = Verdict::sat;
    } else if (capped) {
        cert.verdict = Verdict::inconclusive;
    } else {
        cert.verdict = Verdict::unsat;
    }
    return cert;
}

MinColorsResult min_colors(int n, int r, const UniformHypergraph& pattern, uint32_t k_max,
                           const SolveOptions& options) {
    MinColorsResult res;
    res.lo = 1;
    for (uint32_t k = 1; k <= k_max && !res.hi; ++k) {
        auto cert = exists_local_coloring(n, r, pattern, k, options);
        if (cert.verdict == Verdict::sat) {
            res.hi = k;
        } else if (cert.verdict == Verdict::unsat) {
            // UNSAT at k refutes every k' <= k by color-monotonicity.
            res.lo = std::max(res.lo, k + 1);
        } else {
            if (!res.note.empty()) res.note += "; ";
            res.note += "inconclusive at k=" + std::to_string(k);
        }
    }
    // Upper bound from the bucket construction when the pattern is not
    // 2-locally large (verified at this host size before being claimed).
    if (!res.hi) {
        auto decision = decide_2ll(pattern);
        if (!decision.is_2ll() && n >= pattern.n) {
            auto fam = deterministic_family(n, r, VertexOrder::identity(n));
            if (verify_local(fam, pattern).ok) {
                res.hi = 2 * r + 1;
                if (!res.note.empty()) res.note += "; ";
                res.note += "upper bound via the deterministic 2r+1 construction";
            }
        }
    }
    if (res.hi && res.lo == *res.hi) res.exact = res.lo;
    return res;
}

}  // namespace rainbow
