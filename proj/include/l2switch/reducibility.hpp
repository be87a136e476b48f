#pragma once

#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "l2switch/equivalence.hpp"

namespace l2switch {

// ---- factor candidates ------------------------------------------------------

enum class BlockKind { gm4, circulant, fano };

// A catalog block placed on an ordered vertex tuple.
struct FactorBlock {
    BlockKind kind = BlockKind::gm4;
    int k = 2;                  // pair count for circulant blocks
    std::vector<uint8_t> verts; // placement tuple

    std::string describe() const {
        std::string s;
        switch (kind) {
            case BlockKind::gm4: s = "gm4"; break;
            case BlockKind::circulant: s = "r" + std::to_string(2 * k); break;
            case BlockKind::fano: s = "fano"; break;
        }
        s += "[";
        for (size_t i = 0; i < verts.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(verts[i]);
        }
        s += "]";
        return s;
    }
};

// A decomposable regular orthogonal factor: disjoint blocks, identity elsewhere.
struct Factor {
    std::vector<FactorBlock> blocks;
    SmallMatrix m2; // 2F

    std::string describe() const {
        std::string s;
        for (size_t i = 0; i < blocks.size(); ++i) {
            if (i) s += " ";
            s += blocks[i].describe();
        }
        return s;
    }
};

namespace detail {

inline SmallMatrix factor_matrix(int n, const std::vector<FactorBlock>& blocks) {
    std::vector<BlockPlacement> placements;
    for (const auto& b : blocks) {
        SmallMatrix block2(1, 1);
        switch (b.kind) {
            case BlockKind::gm4: block2 = build_scaled(SwitchingFamily::gm4()); break;
            case BlockKind::circulant: block2 = build_scaled(SwitchingFamily::circulant(b.k)); break;
            case BlockKind::fano: block2 = build_scaled(SwitchingFamily::fano()); break;
        }
        BlockPlacement p;
        p.block2 = block2;
        p.at.assign(b.verts.begin(), b.verts.end());
        placements.push_back(std::move(p));
    }
    return compose_block_diagonal(n, placements);
}

// factors of a circulant host: permutations of the pair indices with at least
// one moved pair and no full-length cycle; each cycle of length 2 is a gm4
// block, longer cycles carry R_{2k} in cycle order.
inline std::vector<Factor> circulant_factors(int m) {
    std::vector<Factor> out;
    std::vector<uint8_t> perm(static_cast<size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<char> seen(static_cast<size_t>(m), 0);
        std::vector<std::vector<uint8_t>> cycles;
        bool ok = true;
        for (int i = 0; i < m && ok; ++i) {
            if (seen[static_cast<size_t>(i)]) continue;
            std::vector<uint8_t> cyc;
            int x = i;
            while (!seen[static_cast<size_t>(x)]) {
                seen[static_cast<size_t>(x)] = 1;
                cyc.push_back(static_cast<uint8_t>(x));
                x = perm[static_cast<size_t>(x)];
            }
            if (cyc.size() == static_cast<size_t>(m)) ok = false; // indecomposable of full size
            if (cyc.size() >= 2) cycles.push_back(std::move(cyc));
        }
        if (!ok || cycles.empty()) continue;
        Factor f;
        for (auto& cyc : cycles) {
            FactorBlock b;
            if (cyc.size() == 2) {
                b.kind = BlockKind::gm4;
                b.k = 2;
            } else {
                b.kind = BlockKind::circulant;
                b.k = static_cast<int>(cyc.size());
            }
            for (uint8_t c : cyc) {
                b.verts.push_back(static_cast<uint8_t>(2 * c));
                b.verts.push_back(static_cast<uint8_t>(2 * c + 1));
            }
            f.blocks.push_back(std::move(b));
        }
        f.m2 = factor_matrix(2 * m, f.blocks);
        out.push_back(std::move(f));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// all placements of one catalog block on ordered tuples from `universe`,
// deduplicated by the concrete matrix (the block's own symmetries collapse).
inline void placed_variants(int n, BlockKind kind, int k, int block_size,
                            std::vector<Factor>& out,
                            std::unordered_set<std::string>& dedup) {
    std::vector<uint8_t> subset;
    std::function<void(int, int)> choose = [&](int start, int need) {
        if (need == 0) {
            std::vector<uint8_t> tup = subset;
            std::sort(tup.begin(), tup.end());
            do {
                FactorBlock b;
                b.kind = kind;
                b.k = k;
                b.verts = tup;
                Factor f;
                f.blocks = {b};
                f.m2 = factor_matrix(n, f.blocks);
                std::string key(reinterpret_cast<const char*>(&f.m2(0, 0)), 0);
                std::string bytes;
                bytes.reserve(static_cast<size_t>(n) * n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) bytes.push_back(static_cast<char>(f.m2(i, j) + 4));
                if (dedup.insert(bytes).second) out.push_back(std::move(f));
            } while (std::next_permutation(tup.begin(), tup.end()));
            return;
        }
        for (int v = start; v <= n - need; ++v) {
            subset.push_back(static_cast<uint8_t>(v));
            choose(v + 1, need - 1);
            subset.pop_back();
        }
    };
    choose(0, block_size);
}

inline std::vector<Factor> fano_factors() {
    std::vector<Factor> out;
    std::unordered_set<std::string> dedup;
    // gm4 on every 4-subset (order within is immaterial: R_4 is conjugation invariant)
    std::vector<uint8_t> s;
    std::function<void(int, int)> choose4 = [&](int start, int need) {
        if (need == 0) {
            Factor f;
            f.blocks = {{BlockKind::gm4, 2, s}};
            f.m2 = factor_matrix(7, f.blocks);
            out.push_back(std::move(f));
            return;
        }
        for (int v = start; v <= 7 - need; ++v) {
            s.push_back(static_cast<uint8_t>(v));
            choose4(v + 1, need - 1);
            s.pop_back();
        }
    };
    choose4(0, 4);
    // R_6 on six of seven points with every pair structure and orientation
    placed_variants(7, BlockKind::circulant, 3, 6, out, dedup);
    return out;
}

inline std::vector<Factor> cube_factors() {
    std::vector<Factor> out;
    std::unordered_set<std::string> dedup;
    std::vector<uint8_t> s;
    std::vector<std::vector<uint8_t>> foursets;
    std::function<void(int, int)> choose4 = [&](int start, int need) {
        if (need == 0) {
            foursets.push_back(s);
            return;
        }
        for (int v = start; v <= 8 - need; ++v) {
            s.push_back(static_cast<uint8_t>(v));
            choose4(v + 1, need - 1);
            s.pop_back();
        }
    };
    choose4(0, 4);
    for (const auto& fs : foursets) {
        Factor f;
        f.blocks = {{BlockKind::gm4, 2, fs}};
        f.m2 = factor_matrix(8, f.blocks);
        out.push_back(std::move(f));
    }
    // gm4 + gm4 on complementary four-sets
    for (const auto& fs : foursets) {
        if (fs[0] != 0) continue; // one of each complementary pair
        std::vector<uint8_t> rest;
        for (uint8_t v = 0; v < 8; ++v)
            if (std::find(fs.begin(), fs.end(), v) == fs.end()) rest.push_back(v);
        Factor f;
        f.blocks = {{BlockKind::gm4, 2, fs}, {BlockKind::gm4, 2, rest}};
        f.m2 = factor_matrix(8, f.blocks);
        out.push_back(std::move(f));
    }
    placed_variants(8, BlockKind::circulant, 3, 6, out, dedup);
    placed_variants(8, BlockKind::fano, 0, 7, out, dedup);
    return out;
}

} // namespace detail

// Candidate factors for reductions of one family. Circulant hosts stay within
// pair-respecting block-diagonal arrangements; Fano and Cube hosts run over
// all placements, with inadmissible ones pruned against V_R during the search.
inline std::vector<Factor> factor_candidates(const SwitchingFamily& f) {
    switch (f.tag) {
        case FamilyTag::gm4: return {};
        case FamilyTag::circulant: return detail::circulant_factors(f.m);
        case FamilyTag::fano: return detail::fano_factors();
        case FamilyTag::cube: return detail::cube_factors();
    }
    return {};
}

// ---- certificates -----------------------------------------------------------

struct Certificate {
    SwitchingFamily family;
    SmallGraph b;
    std::vector<Factor> factors;
    std::vector<uint8_t> col_perm;         // R * P(col_perm) = product of factors
    std::vector<SmallGraph> intermediates; // conjugated b after each proper prefix
};



// ---- the search engine -------------------------------------------------------

class ReductionEngine {
public:
    explicit ReductionEngine(const SwitchingFamily& fam, int workers = 1)
        : family_(fam), r2_(build_scaled(fam)), v_(enumerate_V(r2_)), candidates_(factor_candidates(fam)) {
        (void)workers;
        // state 0: identity
        State id;
        id.s2 = SmallMatrix::identity(fam.size(), 2);
        id.v_ok = true;
        states_.push_back(std::move(id));
        key_to_state_.emplace(key_of(states_[0].s2), 0);
    }

    const SwitchingFamily& family() const { return family_; }
    const SmallMatrix& r2() const { return r2_; }
    const VSet& v() const { return v_; }
    const std::vector<Factor>& candidates() const { return candidates_; }

    // Shortest factor sequence within depth_bound, or nothing. B-independent
    // admissibility work is memoized across calls.
    std::optional<Certificate> is_reducible(const SmallGraph& b, int depth_bound) {
        if (depth_bound < 1) throw domain_error("depth_bound must be >= 1");
        if (!in_B(b)) throw admissibility_error("b is not in B_R for this family");
        struct Visit {
            SmallGraph conj_b;
            int parent = -1;
            int via = -1; // candidate index
            int depth = 0;
        };
        std::unordered_map<size_t, Visit> visited; // state id -> visit info
        std::deque<size_t> queue;
        visited.emplace(0, Visit{b, -1, -1, 0});
        queue.push_back(0);
        while (!queue.empty()) {
            size_t sid = queue.front();
            queue.pop_front();
            Visit cur = visited[sid];
            if (cur.depth >= 1) {
                if (auto perm = detail::quotient_permutation(r2_, states_[sid].s2)) {
                    // reconstruct path
                    Certificate cert;
                    cert.family = family_;
                    cert.b = b;
                    cert.col_perm = *perm;
                    std::vector<std::pair<int, SmallGraph>> path; // (candidate, conj_b after)
                    size_t id = sid;
                    while (visited[id].parent >= 0) {
                        path.emplace_back(visited[id].via, visited[id].conj_b);
                        id = static_cast<size_t>(visited[id].parent);
                    }
                    std::reverse(path.begin(), path.end());
                    for (size_t t = 0; t < path.size(); ++t) {
                        cert.factors.push_back(candidates_[static_cast<size_t>(path[t].first)]);
                        if (t + 1 < path.size()) cert.intermediates.push_back(path[t].second);
                    }
                    return cert;
                }
            }
            if (cur.depth == depth_bound) continue;
            expand(sid);
            for (const auto& [cand, nxt] : states_[sid].succ) {
                if (visited.count(nxt)) continue;
                SmallGraph nb;
                if (!detail::conjugate_adjacency(candidates_[static_cast<size_t>(cand)].m2, cur.conj_b, nb)) continue;
                visited.emplace(nxt, Visit{nb, static_cast<int>(sid), cand, cur.depth + 1});
                queue.push_back(nxt);
            }
        }
        return std::nullopt;
    }

    bool in_B(const SmallGraph& b) const {
        if (b.n != family_.size()) return false;
        SmallGraph img;
        return detail::conjugate_adjacency(r2_, b, img);
    }

private:
    struct State {
        SmallMatrix s2;
        bool v_ok = false;
        bool expanded = false;
        std::vector<std::pair<int, size_t>> succ; // (candidate index, state id)
    };

    static std::string key_of(const SmallMatrix& m) {
        std::string s;
        s.reserve(static_cast<size_t>(m.rows()) * m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) s.push_back(static_cast<char>(m(i, j) + 8));
        return s;
    }

    void expand(size_t sid) {
        if (states_[sid].expanded) return;
        states_[sid].expanded = true;
        SmallMatrix base = states_[sid].s2;
        for (size_t c = 0; c < candidates_.size(); ++c) {
            SmallMatrix next2(1, 1);
            if (!detail::scaled_product(base, candidates_[c].m2, next2)) continue;
            std::string key = key_of(next2);
            auto it = key_to_state_.find(key);
            size_t nid;
            if (it == key_to_state_.end()) {
                State st;
                st.s2 = next2;
                st.v_ok = detail::maps_V_to_01(next2, v_);
                states_.push_back(std::move(st));
                nid = states_.size() - 1;
                key_to_state_.emplace(std::move(key), nid);
            } else {
                nid = it->second;
            }
            if (states_[nid].v_ok) states_[sid].succ.emplace_back(static_cast<int>(c), nid);
        }
    }

    SwitchingFamily family_;
    SmallMatrix r2_;
    VSet v_;
    std::vector<Factor> candidates_;
    std::vector<State> states_;
    std::unordered_map<std::string, size_t> key_to_state_;
};

// ---- verification ------------------------------------------------------------

// Re-derives everything in a certificate from scratch; throws on any failure.
inline void verify_certificate(const Certificate& cert, const SmallMatrix& r2, const VSet& vs) {
    const SwitchingFamily& fam = cert.family;
    const int n = fam.size();

    SmallGraph bimg;
    if (!detail::conjugate_adjacency(r2, cert.b, bimg))
        throw admissibility_error("certificate: b is not in B_R");
    if (cert.factors.empty()) throw admissibility_error("certificate: empty factor list");

    SmallMatrix s2 = SmallMatrix::identity(n, 2);
    SmallGraph conj_b = cert.b;
    for (size_t i = 0; i < cert.factors.size(); ++i) {
        SmallMatrix f2 = detail::factor_matrix(n, cert.factors[i].blocks);
        if (!is_level2_regular_orthogonal(f2))
            throw admissibility_error("certificate: factor is not level-2 regular orthogonal");
        if (largest_block_size(f2) >= n)
            throw admissibility_error("certificate: factor has a full-size indecomposable block");
        if (!detail::scaled_product(s2, f2, s2)) throw exactness_error("certificate: prefix product not half-integral");
        if (!detail::conjugate_adjacency(f2, conj_b, conj_b))
            throw admissibility_error("certificate: prefix conjugate of b is not an adjacency matrix at step " +
                                      std::to_string(i + 1));
        bool last = (i + 1 == cert.factors.size());
        if (!last) {
            if (!detail::maps_V_to_01(s2, vs))
                throw admissibility_error("certificate: prefix product leaves V_R at step " + std::to_string(i + 1));
            if (i < cert.intermediates.size() && !(cert.intermediates[i] == conj_b))
                throw admissibility_error("certificate: recorded intermediate mismatch at step " + std::to_string(i + 1));
        }
    }
    auto perm = detail::quotient_permutation(r2, s2);
    if (!perm) throw admissibility_error("certificate: factor product is not R up to a column permutation");
    if (*perm != cert.col_perm) throw admissibility_error("certificate: column permutation mismatch");
}

inline void verify_certificate(const Certificate& cert) {
    SmallMatrix r2 = build_scaled(cert.family);
    VSet vs = enumerate_V(r2);
    verify_certificate(cert, r2, vs);
}

// The member-dependent clause of a certificate on its own: every prefix
// conjugate of b stays an adjacency matrix. The member-independent clauses
// (factor structure, prefix products, V_R images, final permutation) are
// shared by all B's certified with the same factor sequence.
inline bool certificate_chain_ok(const std::vector<Factor>& factors, const SmallGraph& b) {
    SmallGraph conj_b = b;
    for (const auto& f : factors)
        if (!detail::conjugate_adjacency(f.m2, conj_b, conj_b)) return false;
    return true;
}

// Builds (and fully verifies) a certificate for b from a factor sequence.
inline Certificate make_certificate(const SwitchingFamily& fam, const SmallGraph& b, std::vector<Factor> factors) {
    Certificate cert;
    cert.family = fam;
    cert.b = b;
    const int n = fam.size();
    SmallMatrix s2 = SmallMatrix::identity(n, 2);
    SmallGraph conj_b = b;
    for (size_t i = 0; i < factors.size(); ++i) {
        factors[i].m2 = detail::factor_matrix(n, factors[i].blocks);
        if (!detail::scaled_product(s2, factors[i].m2, s2))
            throw exactness_error("factor product not half-integral");
        if (!detail::conjugate_adjacency(factors[i].m2, conj_b, conj_b))
            throw admissibility_error("prefix conjugate not an adjacency matrix");
        if (i + 1 < factors.size()) cert.intermediates.push_back(conj_b);
    }
    auto perm = detail::quotient_permutation(build_scaled(fam), s2);
    if (!perm) throw admissibility_error("factor product is not R up to a column permutation");
    cert.col_perm = *perm;
    cert.factors = std::move(factors);
    verify_certificate(cert);
    return cert;
}

// Transport a certificate along a conjugation: factors move to the permuted
// vertices, everything else is recomputed.
inline Certificate conjugate_certificate(const Certificate& cert, const std::vector<uint8_t>& p,
                                         const SmallGraph& new_b) {
    std::vector<Factor> factors = cert.factors;
    for (auto& f : factors)
        for (auto& blk : f.blocks)
            for (auto& v : blk.verts) v = p[v];
    return make_certificate(cert.family, new_b, std::move(factors));
}

// The same factor sequence certifies complements and block-complement
// variants; only the intermediates change.
inline Certificate reuse_certificate(const Certificate& cert, const SmallGraph& new_b) {
    return make_certificate(cert.family, new_b, cert.factors);
}

// ---- the six-vertex reducibility criterion -----------------------------------

// B in B_{R_6} is reducible iff some pair-union induced subgraph is regular
// and the remaining two vertices each have an even number of neighbours in it.
inline bool lemma_ah6_criterion(const SmallGraph& b) {
    if (b.n != 6) throw dimension_error("lemma_ah6_criterion needs a 6-vertex graph");
    ReductionEngine probe(SwitchingFamily::circulant(3));
    if (!probe.in_B(b)) throw admissibility_error("b is not in B_{R_6}");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            int vs[4] = {2 * i, 2 * i + 1, 2 * j, 2 * j + 1};
            int deg[4];
            for (int a = 0; a < 4; ++a) {
                deg[a] = 0;
                for (int bidx = 0; bidx < 4; ++bidx)
                    if (a != bidx && b.has_edge(vs[a], vs[bidx])) ++deg[a];
            }
            if (deg[0] != deg[1] || deg[0] != deg[2] || deg[0] != deg[3]) continue;
            int other = 3 - i - j;
            bool even_ok = true;
            for (int w : {2 * other, 2 * other + 1}) {
                int cnt = 0;
                for (int a = 0; a < 4; ++a)
                    if (b.has_edge(w, vs[a])) ++cnt;
                if (cnt % 2) even_ok = false;
            }
            if (even_ok) return true;
        }
    return false;
}

} // namespace l2switch
