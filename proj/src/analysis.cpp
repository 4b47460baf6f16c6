#include "rainbow/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <stdexcept>

#include "rainbow/combinatorics.hpp"
#include "rainbow/families.hpp"
#include "rainbow/locality.hpp"
#include "rainbow/parallel.hpp"

namespace rainbow {

bool witness_reverifies(const ColoringFamily& family, const ViolationWitness& witness) {
    const Embedding& emb = witness.embedding;
    if (emb.host_n != family.n || emb.pattern.r != family.r) return false;
    if (!emb.valid()) return false;
    auto copy_edges = emb.image_edges();
    std::set<Edge> copy_edge_set(copy_edges.begin(), copy_edges.end());
    if (copy_edge_set.size() != emb.pattern.edges.size()) return false;  // degenerate image

    std::set<Vertex> covered;
    for (const auto& clash : witness.clashes) {
        if (clash.edge_a == clash.edge_b) return false;
        if (!copy_edge_set.count(clash.edge_a) || !copy_edge_set.count(clash.edge_b)) return false;
        uint32_t ca = family.color_of(clash.vertex, clash.edge_a);
        uint32_t cb = family.color_of(clash.vertex, clash.edge_b);
        if (ca != cb || ca != clash.color) return false;
        covered.insert(clash.vertex);
    }
    for (Vertex v : emb.map)
        if (!covered.count(v)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// verify_local
// ---------------------------------------------------------------------------

namespace {

struct CopyScanner {
    const ColoringFamily& family;
    const UniformHypergraph& pattern;
    std::vector<Edge> pattern_edges;

    // Checks one injection; returns true when the copy has a rainbow vertex.
    bool copy_ok(const std::vector<Vertex>& map, std::vector<uint64_t>& rank_buf) const {
        rank_buf.clear();
        for (const auto& e : pattern_edges) {
            int img[kMaxBinomialK];
            int idx = 0;
            for (Vertex v : e) img[idx++] = map[v];
            std::sort(img, img + idx);
            rank_buf.push_back(colex_rank(img, idx));
        }
        for (Vertex u : map) {
            bool repeat = false;
            for (std::size_t i = 0; i < rank_buf.size() && !repeat; ++i) {
                uint32_t ci = family.color(u, rank_buf[i]);
                for (std::size_t j = i + 1; j < rank_buf.size(); ++j)
                    if (ci == family.color(u, rank_buf[j])) {
                        repeat = true;
                        break;
                    }
            }
            if (!repeat) return true;
        }
        return false;
    }

    ViolationWitness build_witness(const std::vector<Vertex>& map) const {
        ViolationWitness w;
        w.embedding.pattern = pattern;
        w.embedding.host_n = family.n;
        w.embedding.map = map;
        auto imgs = w.embedding.image_edges();
        for (Vertex u : map) {
            bool found = false;
            for (std::size_t i = 0; i < imgs.size() && !found; ++i)
                for (std::size_t j = i + 1; j < imgs.size(); ++j) {
                    uint32_t ci = family.color_of(u, imgs[i]);
                    if (ci == family.color_of(u, imgs[j])) {
                        w.clashes.push_back({u, imgs[i], imgs[j], ci});
                        found = true;
                        break;
                    }
                }
        }
        return w;
    }
};

}  // namespace

VerifyResult verify_local(const ColoringFamily& family, const UniformHypergraph& pattern, unsigned threads) {
    family.validate();
    pattern.validate();
    if (pattern.r != family.r) throw std::invalid_argument("verify_local: uniformity mismatch");
    if (pattern.n > family.n) throw std::invalid_argument("verify_local: pattern larger than host");
    if (pattern.edges.size() < 2) {
        // A copy with at most one edge is rainbow under every coloring.
        VerifyResult res;
        res.ok = true;
        return res;
    }

    CopyScanner scanner{family, pattern, pattern.edges};
    const int h = pattern.n;

    // Blocks = h-subsets of the host, visited lexicographically; injections are
    // scanned per block. Copies appear once per pattern automorphism, which
    // only repeats checks and keeps the first-violation order well defined.
    std::vector<std::vector<int>> subsets;
    for_each_combination(family.n, h, [&](const std::vector<int>& w) { subsets.push_back(w); });

    struct BlockResult {
        std::optional<ViolationWitness> witness;
        uint64_t checked = 0;
    };
    std::vector<BlockResult> results(subsets.size());
    std::atomic<long> best_block{static_cast<long>(subsets.size())};

    run_blocks(subsets.size(), threads == 0 ? 1 : threads, [&](std::size_t b) {
        if (static_cast<long>(b) > best_block.load(std::memory_order_relaxed)) return;
        const auto& w = subsets[b];
        std::vector<Vertex> map(h);
        std::vector<int> local(h);
        for (int i = 0; i < h; ++i) local[i] = i;
        std::vector<uint64_t> rank_buf;
        do {
            for (int i = 0; i < h; ++i) map[i] = w[local[i]];
            ++results[b].checked;
            if (!scanner.copy_ok(map, rank_buf)) {
                results[b].witness = scanner.build_witness(map);
                long bl = static_cast<long>(b);
                long cur = best_block.load();
                while (bl < cur && !best_block.compare_exchange_weak(cur, bl)) {
                }
                break;
            }
        } while (std::next_permutation(local.begin(), local.end()));
    });

    VerifyResult res;
    res.ok = true;
    for (std::size_t b = 0; b < subsets.size(); ++b) {
        res.copies_checked += results[b].checked;
        if (res.ok && results[b].witness) {
            res.ok = false;
            res.witness = std::move(results[b].witness);
        }
    }
    if (res.witness && !witness_reverifies(family, *res.witness))
        throw std::logic_error("verify_local: produced witness failed re-verification");
    return res;
}

// ---------------------------------------------------------------------------
// attack
// ---------------------------------------------------------------------------

AttackPattern AttackPattern::parse(const std::string& text) {
    AttackPattern p;
    if (text == "sp3") {
        p.kind = Kind::sp3;
        return p;
    }
    if (text == "sp4_1") {
        p.kind = Kind::sp4_1;
        return p;
    }
    if (text == "sp4_2") {
        p.kind = Kind::sp4_2;
        return p;
    }
    auto open = text.find('(');
    if (open != std::string::npos && text.back() == ')') {
        std::string name = text.substr(0, open);
        std::string args = text.substr(open + 1, text.size() - open - 2);
        std::vector<int> nums;
        std::size_t pos = 0;
        while (pos < args.size()) {
            auto comma = args.find(',', pos);
            nums.push_back(std::stoi(args.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (name == "sunflower" && nums.size() == 2) {
            p.kind = Kind::sunflower;
            p.d = nums[0];
            p.t = nums[1];
            return p;
        }
        if (name == "clique" && nums.size() == 1) {
            p.kind = Kind::clique;
            p.p = nums[0];
            return p;
        }
    }
    throw std::invalid_argument("attack: unknown pattern '" + text + "'");
}

std::string AttackPattern::name() const {
    switch (kind) {
        case Kind::sp3:
            return "sp3";
        case Kind::sp4_1:
            return "sp4_1";
        case Kind::sp4_2:
            return "sp4_2";
        case Kind::sunflower:
            return "sunflower(" + std::to_string(d) + "," + std::to_string(t) + ")";
        case Kind::clique:
            return "clique(" + std::to_string(p) + ")";
    }
    return "?";
}

UniformHypergraph AttackPattern::pattern_graph(int r) const {
    switch (kind) {
        case Kind::sp3:
            return make_family("sp3", {});
        case Kind::sp4_1:
            return make_family("sp1", {4});
        case Kind::sp4_2:
            return make_family("sp2", {4});
        case Kind::sunflower:
            return make_family("sunflower", {d, t, r});
        case Kind::clique:
            return make_family("clique", {p, r});
    }
    throw std::logic_error("unreachable");
}

namespace {

Edge sorted_edge(std::initializer_list<Vertex> vs) {
    Edge e(vs);
    std::sort(e.begin(), e.end());
    return e;
}

Edge join(const std::vector<Vertex>& a, Vertex b) {
    Edge e = a;
    e.push_back(b);
    std::sort(e.begin(), e.end());
    return e;
}

Edge join(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    Edge e = a;
    e.insert(e.end(), b.begin(), b.end());
    std::sort(e.begin(), e.end());
    return e;
}

std::optional<ViolationWitness> finish_attack(const ColoringFamily& family, const UniformHypergraph& pattern,
                                              const std::vector<Vertex>& map,
                                              const std::vector<ViolationWitness::Clash>& clashes) {
    ViolationWitness w;
    w.embedding.pattern = pattern;
    w.embedding.host_n = family.n;
    w.embedding.map = map;
    w.clashes = clashes;
    if (!witness_reverifies(family, w)) throw std::logic_error("attack: constructed witness failed re-verification");
    return w;
}

// SP3 refutation: bucket disjoint 2-sets z by the color vector
// (f_y(y'z))_{y,y' in Y}; two equal-vector 2-sets z1, z2 plus two vertices of Y
// agreeing under all four colorings of z1 u z2 give the copy
// {z1y1, z1y2, z2y2}.
std::optional<ViolationWitness> attack_sp3(const ColoringFamily& fam) {
    const int n = fam.n;
    const uint64_t k = fam.k;
    uint64_t want_y = k > 255 ? uint64_t(n) : k * k * k * k + 1;  // k^4+1, capped
    int y_size = static_cast<int>(std::min<uint64_t>(want_y, n > 4 ? uint64_t(n - 4) : 0));
    if (y_size < 2) return std::nullopt;
    std::vector<Vertex> Y(y_size);
    for (int i = 0; i < y_size; ++i) Y[i] = i;
    std::vector<std::vector<Vertex>> Z;  // consecutive 2-sets of the rest
    for (int v = y_size; v + 1 < n; v += 2) Z.push_back({v, v + 1});
    if (Z.size() < 2) return std::nullopt;

    std::map<std::vector<uint32_t>, std::vector<std::size_t>> buckets;
    for (std::size_t zi = 0; zi < Z.size(); ++zi) {
        std::vector<uint32_t> vec;
        vec.reserve(uint64_t(y_size) * y_size);
        for (Vertex y : Y)
            for (Vertex y2 : Y) vec.push_back(fam.color_of(y, join(Z[zi], y2)));
        buckets[std::move(vec)].push_back(zi);
    }
    const std::vector<std::size_t>* hit = nullptr;
    for (std::size_t zi = 0; zi < Z.size() && !hit; ++zi)
        for (auto& [vec, members] : buckets)
            if (members.size() >= 2 && members.front() == zi) {
                hit = &members;
                break;
            }
    if (!hit) return std::nullopt;
    const auto& z1 = Z[(*hit)[0]];
    const auto& z2 = Z[(*hit)[1]];

    // signature of y: colors of z1y under the four colorings of z1 u z2
    std::map<std::array<uint32_t, 4>, std::vector<Vertex>> sig;
    std::vector<Vertex> x4 = {z1[0], z1[1], z2[0], z2[1]};
    for (Vertex y : Y) {
        std::array<uint32_t, 4> s{};
        for (int i = 0; i < 4; ++i) s[i] = fam.color_of(x4[i], join(z1, y));
        sig[s].push_back(y);
    }
    const std::vector<Vertex>* ys = nullptr;
    for (Vertex y : Y) {
        for (auto& [s, members] : sig)
            if (members.size() >= 2 && members.front() == y) {
                ys = &members;
                break;
            }
        if (ys) break;
    }
    if (!ys) return std::nullopt;
    Vertex y1 = (*ys)[0], y2 = (*ys)[1];

    Edge ea = join(z1, y1), eb = join(z1, y2), ec = join(z2, y2);
    // pattern sp3 = {012,123,345} on a..f: 0->y1, {1,2}->z1, 3->y2, {4,5}->z2
    std::vector<Vertex> map = {y1, z1[0], z1[1], y2, z2[0], z2[1]};
    std::vector<ViolationWitness::Clash> clashes;
    for (Vertex x : x4) clashes.push_back({x, ea, eb, fam.color_of(x, ea)});
    clashes.push_back({y1, eb, ec, fam.color_of(y1, eb)});
    clashes.push_back({y2, eb, ec, fam.color_of(y2, eb)});
    return finish_attack(fam, make_family("sp3", {}), map, clashes);
}

// SP4^1 refutation: singles a from A, disjoint 2-sets from B; find a triple
// (e1,e2,e3) monochromatic under many f_a, then two a's agreeing on a e2 under
// the six colorings of e1 u e2 u e3.
std::optional<ViolationWitness> attack_sp4_1(const ColoringFamily& fam) {
    const int n = fam.n;
    int a_size = n / 3;
    if (a_size < 2) return std::nullopt;
    std::vector<std::vector<Vertex>> B;
    for (int v = a_size; v + 1 < n; v += 2) B.push_back({v, v + 1});
    if (B.size() < 3) return std::nullopt;

    std::map<std::array<std::size_t, 3>, std::vector<Vertex>> triple_to_as;
    for (Vertex a = 0; a < a_size; ++a) {
        std::map<uint32_t, std::vector<std::size_t>> by_color;
        for (std::size_t i = 0; i < B.size(); ++i) by_color[fam.color_of(a, join(B[i], a))].push_back(i);
        for (auto& [c, es] : by_color) {
            if (es.size() < 3) continue;
            for (std::size_t i = 0; i < es.size(); ++i)
                for (std::size_t j = i + 1; j < es.size(); ++j)
                    for (std::size_t l = j + 1; l < es.size(); ++l)
                        triple_to_as[{es[i], es[j], es[l]}].push_back(a);
        }
    }
    const std::array<std::size_t, 3>* best_triple = nullptr;
    std::size_t best_count = 1;  // need at least 2 agreeing singles
    for (auto& [triple, as] : triple_to_as)
        if (as.size() > best_count) {
            best_count = as.size();
            best_triple = &triple;
        }
    if (!best_triple) return std::nullopt;
    const auto& e1 = B[(*best_triple)[0]];
    const auto& e2 = B[(*best_triple)[1]];
    const auto& e3 = B[(*best_triple)[2]];
    const auto& candidates = triple_to_as[*best_triple];

    std::vector<Vertex> six = {e1[0], e1[1], e2[0], e2[1], e3[0], e3[1]};
    std::map<std::array<uint32_t, 6>, std::vector<Vertex>> sig;
    for (Vertex a : candidates) {
        std::array<uint32_t, 6> s{};
        for (int i = 0; i < 6; ++i) s[i] = fam.color_of(six[i], join(e2, a));
        sig[s].push_back(a);
    }
    const std::vector<Vertex>* hit = nullptr;
    for (Vertex a : candidates) {
        for (auto& [s, members] : sig)
            if (members.size() >= 2 && members.front() == a) {
                hit = &members;
                break;
            }
        if (hit) break;
    }
    if (!hit) return std::nullopt;
    Vertex a1 = (*hit)[0], a2 = (*hit)[1];

    Edge A1 = join(e1, a1), A2 = join(e2, a1), A3 = join(e2, a2), A4 = join(e3, a2);
    // sp1(4) = {012},{234},{345},{567}: {0,1}->e1, 2->a1, {3,4}->e2, 5->a2, {6,7}->e3
    std::vector<Vertex> map = {e1[0], e1[1], a1, e2[0], e2[1], a2, e3[0], e3[1]};
    std::vector<ViolationWitness::Clash> clashes;
    clashes.push_back({a1, A1, A2, fam.color_of(a1, A1)});
    clashes.push_back({a2, A3, A4, fam.color_of(a2, A3)});
    for (Vertex x : six) clashes.push_back({x, A2, A3, fam.color_of(x, A2)});
    return finish_attack(fam, make_family("sp1", {4}), map, clashes);
}

// SP4^2 refutation: three singles around two 2-sets; the middle single s has
// f_s(sU)=f_s(sV), the outer singles agree with s's pair on (sU, sV), and the
// 2-set vertices agree across (a1 U, s U) resp. (s V, a3 V).
std::optional<ViolationWitness> attack_sp4_2(const ColoringFamily& fam) {
    const int n = fam.n;
    int a_size = n / 3;
    if (a_size < 3) return std::nullopt;
    std::vector<std::vector<Vertex>> B;
    for (int v = a_size; v + 1 < n; v += 2) B.push_back({v, v + 1});
    if (B.size() < 2) return std::nullopt;

    for (Vertex s = 0; s < a_size; ++s) {
        for (std::size_t ui = 0; ui < B.size(); ++ui)
            for (std::size_t vi = ui + 1; vi < B.size(); ++vi) {
                const auto& U = B[ui];
                const auto& V = B[vi];
                Edge sU = join(U, s), sV = join(V, s);
                if (fam.color_of(s, sU) != fam.color_of(s, sV)) continue;
                // a1: agrees on (sU,sV) and matches s on U's view of a1U
                std::optional<Vertex> a1, a3;
                for (Vertex a = 0; a < a_size && !a1; ++a) {
                    if (a == s) continue;
                    if (fam.color_of(a, sU) != fam.color_of(a, sV)) continue;
                    Edge aU = join(U, a);
                    if (fam.color_of(U[0], aU) == fam.color_of(U[0], sU) &&
                        fam.color_of(U[1], aU) == fam.color_of(U[1], sU))
                        a1 = a;
                }
                if (!a1) continue;
                for (Vertex a = 0; a < a_size && !a3; ++a) {
                    if (a == s || a == *a1) continue;
                    if (fam.color_of(a, sU) != fam.color_of(a, sV)) continue;
                    Edge aV = join(V, a);
                    if (fam.color_of(V[0], aV) == fam.color_of(V[0], sV) &&
                        fam.color_of(V[1], aV) == fam.color_of(V[1], sV))
                        a3 = a;
                }
                if (!a3) continue;

                Edge a1U = join(U, *a1), a3V = join(V, *a3);
                // sp2(4) = {012},{123},{345},{456}: 0->a1, {1,2}->U, 3->s, {4,5}->V, 6->a3
                std::vector<Vertex> map = {*a1, U[0], U[1], s, V[0], V[1], *a3};
                std::vector<ViolationWitness::Clash> clashes;
                clashes.push_back({*a1, sU, sV, fam.color_of(*a1, sU)});
                clashes.push_back({s, sU, sV, fam.color_of(s, sU)});
                clashes.push_back({*a3, sU, sV, fam.color_of(*a3, sU)});
                clashes.push_back({U[0], a1U, sU, fam.color_of(U[0], a1U)});
                clashes.push_back({U[1], a1U, sU, fam.color_of(U[1], a1U)});
                clashes.push_back({V[0], sV, a3V, fam.color_of(V[0], sV)});
                clashes.push_back({V[1], sV, a3V, fam.color_of(V[1], sV)});
                return finish_attack(fam, make_family("sp2", {4}), map, clashes);
            }
    }
    return std::nullopt;
}

// Sunflower refutation: petal candidates around core D bucketed by their
// D-color vector; a surviving vertex pool P yields a heavy edge pair (e,e'),
// whose agreeing vertices X supply t-2 fresh petals monochromatic under every
// vertex of (e u e') \ D.
std::optional<ViolationWitness> attack_sunflower(const ColoringFamily& fam, int d, int t) {
    if (t < 4) throw std::invalid_argument("attack: sunflower procedure needs t >= 4");
    const int r = fam.r;
    const int n = fam.n;
    if (d < 0 || d >= r) throw std::invalid_argument("attack: sunflower core size must be in [0, r)");
    std::vector<Vertex> D(d);
    for (int i = 0; i < d; ++i) D[i] = i;

    std::vector<std::vector<Vertex>> blocks;  // consecutive (r-d)-sets
    for (int v = d; v + (r - d) <= n; v += r - d) {
        std::vector<Vertex> b;
        for (int j = 0; j < r - d; ++j) b.push_back(v + j);
        blocks.push_back(std::move(b));
    }
    // Bucket by the D-color vector; d=0 puts everything in one bucket.
    std::map<std::vector<uint32_t>, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        std::vector<uint32_t> vec(d);
        Edge e = join(blocks[i], D);
        for (int j = 0; j < d; ++j) vec[j] = fam.color_of(D[j], e);
        buckets[std::move(vec)].push_back(i);
    }
    std::vector<std::size_t> pool;
    for (auto& [vec, members] : buckets)
        if (members.size() > pool.size()) pool = members;
    if (pool.size() < 2) return std::nullopt;

    // Cap the pool so P keeps room for t-2 spare blocks.
    uint64_t kd = 1;
    for (int i = 0; i < d; ++i) kd = std::min<uint64_t>(kd * fam.k, uint64_t(n));
    std::size_t cap_formula = static_cast<std::size_t>((uint64_t(n - r) + (r - d) * kd - 1) / ((r - d) * kd));
    std::size_t cap_room = 0;
    if (n - d >= (r - d) * (t - 2)) cap_room = static_cast<std::size_t>((n - d - (r - d) * (t - 2)) / (r - d));
    std::size_t cap = std::min({pool.size(), std::max<std::size_t>(2, std::min(cap_formula, cap_room))});
    if (cap < 2) return std::nullopt;
    pool.resize(cap);

    std::vector<char> used(n, 0);
    for (Vertex v : D) used[v] = 1;
    for (std::size_t i : pool)
        for (Vertex v : blocks[i]) used[v] = 1;
    std::vector<Vertex> P;
    for (Vertex v = 0; v < n; ++v)
        if (!used[v]) P.push_back(v);

    // Heaviest agreeing pair (e, e') over P.
    std::vector<Edge> pool_edges;
    for (std::size_t i : pool) pool_edges.push_back(join(blocks[i], D));
    std::size_t bi = 0, bj = 0;
    std::vector<Vertex> X;
    for (std::size_t i = 0; i < pool_edges.size(); ++i)
        for (std::size_t j = i + 1; j < pool_edges.size(); ++j) {
            std::vector<Vertex> agree;
            for (Vertex pv : P)
                if (fam.color_of(pv, pool_edges[i]) == fam.color_of(pv, pool_edges[j])) agree.push_back(pv);
            if (agree.size() > X.size()) {
                X = std::move(agree);
                bi = i;
                bj = j;
            }
        }
    if (X.size() < static_cast<std::size_t>((r - d) * (t - 2))) return std::nullopt;
    const Edge& e1 = pool_edges[bi];
    const Edge& e2 = pool_edges[bj];

    // Fresh petals from X, bucketed by the colors every vertex of
    // (e1 u e2) \ D assigns them.
    std::vector<Vertex> rim;
    for (Vertex v : e1)
        if (!std::binary_search(D.begin(), D.end(), v)) rim.push_back(v);
    for (Vertex v : e2)
        if (!std::binary_search(D.begin(), D.end(), v)) rim.push_back(v);
    std::vector<std::vector<Vertex>> q_blocks;
    for (std::size_t i = 0; i + (r - d) <= X.size(); i += r - d)
        q_blocks.push_back(std::vector<Vertex>(X.begin() + i, X.begin() + i + (r - d)));
    std::map<std::vector<uint32_t>, std::vector<std::size_t>> q_buckets;
    for (std::size_t i = 0; i < q_blocks.size(); ++i) {
        Edge petal = join(q_blocks[i], D);
        std::vector<uint32_t> vec;
        for (Vertex z : rim) vec.push_back(fam.color_of(z, petal));
        q_buckets[std::move(vec)].push_back(i);
    }
    const std::vector<std::size_t>* q_hit = nullptr;
    for (auto& [vec, members] : q_buckets)
        if (members.size() >= static_cast<std::size_t>(t - 2) && (!q_hit || members < *q_hit)) q_hit = &members;
    if (!q_hit) return std::nullopt;

    std::vector<Edge> petals = {e1, e2};
    for (int i = 0; i < t - 2; ++i) petals.push_back(join(q_blocks[(*q_hit)[i]], D));

    // pattern sunflower(d,t): core -> D, petal i blocks in order
    UniformHypergraph pattern = make_family("sunflower", {d, t, r});
    std::vector<Vertex> map(pattern.n);
    for (int i = 0; i < d; ++i) map[i] = D[i];
    for (int pi = 0; pi < t; ++pi) {
        std::vector<Vertex> rest;
        for (Vertex v : petals[pi])
            if (!std::binary_search(D.begin(), D.end(), v)) rest.push_back(v);
        for (int j = 0; j < r - d; ++j) map[d + pi * (r - d) + j] = rest[j];
    }
    // Core vertices clash on (e1,e2); the rim of e1/e2 clashes on two fresh
    // petals; fresh-petal vertices clash on (e1,e2).
    std::vector<ViolationWitness::Clash> clashes;
    for (Vertex v : D) clashes.push_back({v, std::min(e1, e2), std::max(e1, e2), fam.color_of(v, e1)});
    Edge p3 = petals[2], p4 = petals[3];
    for (Vertex z : rim) clashes.push_back({z, std::min(p3, p4), std::max(p3, p4), fam.color_of(z, p3)});
    for (int pi = 2; pi < t; ++pi)
        for (Vertex v : petals[pi])
            if (!std::binary_search(D.begin(), D.end(), v))
                clashes.push_back({v, std::min(e1, e2), std::max(e1, e2), fam.color_of(v, e1)});
    return finish_attack(fam, pattern, map, clashes);
}

// Clique refutation: balanced partition A u B, pair of (r-1)-sets of B with a
// large agreeing set A', then per-vertex 3-set peeling of E(K[A']).
std::optional<ViolationWitness> attack_clique(const ColoringFamily& fam, int p) {
    const int r = fam.r;
    const int n = fam.n;
    if (p < r) throw std::invalid_argument("attack: clique order must be at least r");
    if (p > n) return std::nullopt;
    const int half = n / 2;
    std::vector<Vertex> A(half);
    for (int i = 0; i < half; ++i) A[i] = i;
    std::vector<std::vector<Vertex>> bhat;  // (r-1)-subsets of B
    {
        std::vector<Vertex> B(n - half);
        for (int i = 0; i < n - half; ++i) B[i] = half + i;
        if (static_cast<int>(B.size()) < r - 1) return std::nullopt;
        for_each_combination(static_cast<int>(B.size()), r - 1, [&](const std::vector<int>& idx) {
            std::vector<Vertex> s;
            for (int i : idx) s.push_back(B[i]);
            bhat.push_back(std::move(s));
        });
    }

    // Pair of (r-1)-sets agreeing for the most vertices of A.
    std::size_t pi = 0, pj = 0;
    std::vector<Vertex> agreeing;
    for (std::size_t i = 0; i < bhat.size(); ++i)
        for (std::size_t j = i + 1; j < bhat.size(); ++j) {
            std::vector<Vertex> agree;
            for (Vertex a : A)
                if (fam.color_of(a, join(bhat[i], a)) == fam.color_of(a, join(bhat[j], a))) agree.push_back(a);
            if (agree.size() > agreeing.size()) {
                agreeing = std::move(agree);
                pi = i;
                pj = j;
            }
        }
    if (static_cast<int>(agreeing.size()) < r) return std::nullopt;
    const auto& b1 = bhat[pi];
    const auto& b2 = bhat[pj];
    std::vector<Vertex> rim = b1;
    for (Vertex v : b2)
        if (std::find(rim.begin(), rim.end(), v) == rim.end()) rim.push_back(v);
    std::sort(rim.begin(), rim.end());

    // E(K[A']) and the per-rim-vertex peeling into monochromatic 3-sets.
    std::vector<Edge> inner;
    for_each_combination(static_cast<int>(agreeing.size()), r, [&](const std::vector<int>& idx) {
        Edge e;
        for (int i : idx) e.push_back(agreeing[i]);
        inner.push_back(std::move(e));
    });
    const std::size_t keep = 2 * static_cast<std::size_t>(fam.k) + 1;
    std::map<Vertex, std::vector<std::vector<std::size_t>>> triples;  // rim vertex -> peeled 3-sets
    std::map<Vertex, std::vector<int>> triple_of;                     // edge idx -> triple idx (-1 = residue)
    for (Vertex b : rim) {
        std::vector<std::size_t> remaining(inner.size());
        for (std::size_t i = 0; i < inner.size(); ++i) remaining[i] = i;
        std::vector<int> assign(inner.size(), -1);
        std::vector<std::vector<std::size_t>> peeled;
        while (remaining.size() >= keep) {
            std::map<uint32_t, std::vector<std::size_t>> by_color;
            std::vector<std::size_t> pick;
            for (std::size_t e : remaining) {
                auto& lst = by_color[fam.color_of(b, inner[e])];
                lst.push_back(e);
                if (lst.size() == 3) {
                    pick = lst;
                    break;
                }
            }
            if (pick.empty()) break;  // cannot occur while remaining >= 2k+1
            for (std::size_t e : pick) assign[e] = static_cast<int>(peeled.size());
            peeled.push_back(pick);
            std::vector<std::size_t> next;
            for (std::size_t e : remaining)
                if (assign[e] < 0) next.push_back(e);
            remaining = std::move(next);
        }
        triples[b] = std::move(peeled);
        triple_of[b] = std::move(assign);
    }

    // e0: first inner edge peeled under every rim vertex.
    std::size_t e0 = inner.size();
    for (std::size_t e = 0; e < inner.size() && e0 == inner.size(); ++e) {
        bool everywhere = true;
        for (Vertex b : rim)
            if (triple_of[b][e] < 0) {
                everywhere = false;
                break;
            }
        if (everywhere) e0 = e;
    }
    if (e0 == inner.size()) return std::nullopt;

    std::set<Vertex> xset(rim.begin(), rim.end());
    for (Vertex v : inner[e0]) xset.insert(v);
    std::vector<std::pair<Vertex, std::size_t>> partner;  // rim vertex -> partner edge
    for (Vertex b : rim) {
        const auto& tri = triples[b][triple_of[b][e0]];
        std::size_t eb = tri[0] == e0 ? tri[1] : tri[0];
        partner.push_back({b, eb});
        for (Vertex v : inner[eb]) xset.insert(v);
    }
    if (static_cast<int>(xset.size()) > p) return std::nullopt;
    for (Vertex a : agreeing) {
        if (static_cast<int>(xset.size()) == p) break;
        xset.insert(a);
    }
    if (static_cast<int>(xset.size()) != p) return std::nullopt;

    std::vector<Vertex> map(xset.begin(), xset.end());
    std::vector<ViolationWitness::Clash> clashes;
    std::set<Vertex> agree_set(agreeing.begin(), agreeing.end());
    for (Vertex x : map) {
        if (agree_set.count(x)) {
            Edge xa = join(b1, x), xb = join(b2, x);
            clashes.push_back({x, std::min(xa, xb), std::max(xa, xb), fam.color_of(x, xa)});
        }
    }
    for (auto& [b, eb] : partner) {
        Edge ea = inner[e0], ex = inner[eb];
        clashes.push_back({b, std::min(ea, ex), std::max(ea, ex), fam.color_of(b, ea)});
    }
    return finish_attack(fam, make_family("clique", {p, r}), map, clashes);
}

}  // namespace

std::optional<ViolationWitness> attack(const ColoringFamily& family, const AttackPattern& pattern) {
    family.validate();
    switch (pattern.kind) {
        case AttackPattern::Kind::sp3:
            if (family.r != 3) throw std::invalid_argument("attack: sp3 needs a 3-uniform host");
            return attack_sp3(family);
        case AttackPattern::Kind::sp4_1:
            if (family.r != 3) throw std::invalid_argument("attack: sp4_1 needs a 3-uniform host");
            return attack_sp4_1(family);
        case AttackPattern::Kind::sp4_2:
            if (family.r != 3) throw std::invalid_argument("attack: sp4_2 needs a 3-uniform host");
            return attack_sp4_2(family);
        case AttackPattern::Kind::sunflower:
            return attack_sunflower(family, pattern.d, pattern.t);
        case AttackPattern::Kind::clique:
            return attack_clique(family, pattern.p);
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// extract_from_monochromatic
// ---------------------------------------------------------------------------

std::optional<ViolationWitness> extract_from_monochromatic(const WideEdgeColoring& g,
                                                           const std::vector<Vertex>& s_vertices,
                                                           const UniformHypergraph& pattern,
                                                           const ColoringFamily& family,
                                                           const VertexOrder& base_order) {
    family.validate();
    pattern.validate();
    if (g.n != family.n || g.s != family.r + 1) throw std::invalid_argument("extract: g is not an (r+1)-coloring of the host");
    {
        std::vector<char> seen(family.n, 0);
        for (Vertex v : s_vertices) {
            if (v < 0 || v >= family.n) throw std::invalid_argument("extract: vertex outside host");
            if (seen[v]) throw std::invalid_argument("extract: duplicate vertex in S");
            seen[v] = 1;
        }
    }

    // Monochromaticity of S and agreement of g with the family on S.
    {
        WideEdgeColoring fresh = ramsey_product_coloring(family, base_order);
        std::vector<Vertex> s_sorted = s_vertices;
        std::sort(s_sorted.begin(), s_sorted.end());
        std::optional<uint64_t> color;
        bool mono = true, agrees = true;
        for_each_combination(static_cast<int>(s_sorted.size()), g.s, [&](const std::vector<int>& idx) {
            Edge e;
            for (int i : idx) e.push_back(s_sorted[i]);
            std::sort(e.begin(), e.end());
            uint64_t c = g.color_of(e);
            if (fresh.color_of(e) != c) agrees = false;
            if (!color) color = c;
            if (*color != c) mono = false;
        });
        if (!agrees) throw std::invalid_argument("extract: g disagrees with the family's product coloring on S");
        if (!mono) throw std::invalid_argument("extract: S is not monochromatic under g");
    }

    if (static_cast<int>(s_vertices.size()) < pattern.n + 1) return std::nullopt;
    auto decision = decide_2ll(pattern);
    if (!decision.is_2ll()) return std::nullopt;
    const VertexOrder& sigma = *decision.witness;

    // y = top-ranked vertex of S; embed rank-monotonically into S \ {y}.
    std::vector<Vertex> by_rank = s_vertices;
    std::sort(by_rank.begin(), by_rank.end(),
              [&](Vertex a, Vertex b) { return base_order.ranks[a] < base_order.ranks[b]; });
    by_rank.pop_back();  // drop y

    std::vector<Vertex> map(pattern.n);
    std::vector<std::pair<int, Vertex>> by_sigma;
    for (Vertex v = 0; v < pattern.n; ++v) by_sigma.push_back({sigma.ranks[v], v});
    std::sort(by_sigma.begin(), by_sigma.end());
    for (int i = 0; i < pattern.n; ++i) map[by_sigma[i].second] = by_rank[i];

    ViolationWitness w;
    w.embedding.pattern = pattern;
    w.embedding.host_n = family.n;
    w.embedding.map = map;
    for (Vertex x = 0; x < pattern.n; ++x) {
        auto part = txi_partition(pattern, sigma, x);
        std::optional<std::pair<int, int>> pair;
        for (const auto& bucket : part.buckets)
            if (bucket.size() >= 2) {
                pair = {bucket[0], bucket[1]};
                break;
            }
        if (!pair) return std::nullopt;  // cannot happen for a verified witness order
        Edge ea = w.embedding.image_edge(pattern.edges[pair->first]);
        Edge eb = w.embedding.image_edge(pattern.edges[pair->second]);
        uint32_t ca = family.color_of(map[x], ea);
        uint32_t cb = family.color_of(map[x], eb);
        if (ca != cb) throw std::logic_error("extract: bucket pair disagrees; S was not truly monochromatic");
        w.clashes.push_back({map[x], std::min(ea, eb), std::max(ea, eb), ca});
    }
    if (!witness_reverifies(family, w)) throw std::logic_error("extract: constructed witness failed re-verification");
    return w;
}

}  // namespace rainbow
