#pragma once

#include <functional>
#include <limits>
#include <random>

#include "l2switch/admissible.hpp"
#include "l2switch/charpoly.hpp"
#include "l2switch/equivalence.hpp"
#include "l2switch/graph.hpp"
#include "l2switch/isomorphism.hpp"

namespace l2switch {

// ---- cospectrality -------------------------------------------------------

// R-cospectral = cospectral with cospectral complements.
inline bool verify_R_cospectral(const Graph& g, const Graph& h) {
    if (g.n != h.n) throw dimension_error("graphs must have the same order");
    if (char_poly(g.to_matrix()) != char_poly(h.to_matrix())) return false;
    return char_poly(g.complement().to_matrix()) == char_poly(h.complement().to_matrix());
}

// ---- per-family admissibility data, shared --------------------------------

struct FamilyData {
    SwitchingFamily family;
    SmallMatrix r2;
    VSet v;
    PatchedSet patched;                          // circulant-type families
    std::unordered_set<u128, U128Hash> b_index;  // fano/cube (brute-forced)
    std::vector<SymmetryPair> sym;
    std::vector<std::unordered_set<u128, U128Hash>> b_prefixes; // small families only
    std::vector<std::unordered_set<uint32_t>> v_prefixes;       // partial columns per depth

    static const FamilyData& get(const SwitchingFamily& f) {
        static std::map<std::string, FamilyData> cache;
        auto it = cache.find(f.name());
        if (it != cache.end()) return it->second;
        FamilyData d;
        d.family = f;
        d.r2 = build_scaled(f);
        d.v = enumerate_V(d.r2);
        d.sym = symmetry_pairs(d.r2);
        const int k = f.size();
        if (f.paired()) {
            d.patched = enumerate_B_patched(f.pairs());
        } else {
            for (const auto& b : enumerate_B_bruteforce(d.r2)) d.b_index.insert(b.pack());
            d.b_prefixes.assign(static_cast<size_t>(k) + 1, {});
            for (u128 packed : d.b_index) {
                SmallGraph b = SmallGraph::unpack(k, packed);
                for (int depth = 0; depth <= k; ++depth) {
                    u128 key = 0;
                    for (int i = 0; i < depth; ++i)
                        for (int j = i + 1; j < depth; ++j) key = (key << 1) | (b.has_edge(i, j) ? 1 : 0);
                    d.b_prefixes[static_cast<size_t>(depth)].insert(key);
                }
            }
        }
        d.v_prefixes.assign(static_cast<size_t>(k) + 1, {});
        for (uint32_t v : d.v.members)
            for (int depth = 0; depth <= k; ++depth)
                d.v_prefixes[static_cast<size_t>(depth)].insert(v & ((depth == 32 ? 0 : (1u << depth)) - 1));
        return cache.emplace(f.name(), std::move(d)).first->second;
    }

    bool in_B(const SmallGraph& b) const {
        if (family.paired()) return patched.contains(b);
        return b_index.count(b.pack()) != 0;
    }

    // is the partial induced adjacency extendable to a member
    bool prefix_ok(const SmallGraph& host_induced_prefix, int depth) const {
        if (!family.paired()) {
            u128 key = 0;
            for (int i = 0; i < depth; ++i)
                for (int j = i + 1; j < depth; ++j)
                    key = (key << 1) | (host_induced_prefix.has_edge(i, j) ? 1 : 0);
            return b_prefixes[static_cast<size_t>(depth)].count(key) != 0;
        }
        // circulant: every complete 2x2 block has an even number of ones and
        // the diagonal blocks all match the first one
        int pairs_done = depth / 2;
        if (pairs_done < 1) return true;
        bool first_diag = host_induced_prefix.has_edge(0, 1);
        for (int p = 0; p < pairs_done; ++p) {
            if (host_induced_prefix.has_edge(2 * p, 2 * p + 1) != first_diag) return false;
            for (int q = p + 1; q < pairs_done; ++q) {
                int ones = host_induced_prefix.has_edge(2 * p, 2 * q) + host_induced_prefix.has_edge(2 * p, 2 * q + 1) +
                           host_induced_prefix.has_edge(2 * p + 1, 2 * q) +
                           host_induced_prefix.has_edge(2 * p + 1, 2 * q + 1);
                if (ones % 2) return false;
            }
        }
        return true;
    }
};

// ---- switching instances ----------------------------------------------------

// A host graph with an ordered switching set; set_vertices[t] plays index t of
// the family matrix, pairs C_i sitting at positions 2i, 2i+1.
struct SwitchingInstance {
    Graph host;
    SwitchingFamily family;
    std::vector<int> set_vertices;
    SmallGraph b;

    static SwitchingInstance make(const Graph& host, const SwitchingFamily& fam, std::vector<int> verts) {
        SwitchingInstance inst;
        inst.host = host;
        inst.family = fam;
        inst.set_vertices = std::move(verts);
        inst.b = host.induced(inst.set_vertices).to_small();
        inst.validate();
        return inst;
    }

    uint64_t set_mask() const {
        uint64_t m = 0;
        for (int v : set_vertices) m |= uint64_t(1) << v;
        return m;
    }

    uint32_t column_of(int w) const {
        uint32_t c = 0;
        for (size_t t = 0; t < set_vertices.size(); ++t)
            if (host.has_edge(w, set_vertices[t])) c |= 1u << t;
        return c;
    }

    void validate() const {
        const FamilyData& fd = FamilyData::get(family);
        if (static_cast<int>(set_vertices.size()) != family.size())
            throw admissibility_error("switching set has wrong size for " + family.name());
        std::vector<char> used(static_cast<size_t>(host.n), 0);
        for (int v : set_vertices) {
            if (v < 0 || v >= host.n) throw admissibility_error("switching set vertex out of range");
            if (used[static_cast<size_t>(v)]++) throw admissibility_error("switching set repeats a vertex");
        }
        if (!fd.in_B(b))
            throw admissibility_error("induced switching-set adjacency is not in B_R for " + family.name());
        uint64_t sm = set_mask();
        for (int w = 0; w < host.n; ++w) {
            if (sm >> w & 1) continue;
            if (!fd.v.contains(column_of(w)))
                throw admissibility_error("outside vertex " + std::to_string(w) + " has a column outside V_R");
        }
    }
};

// ---- applying a switching ------------------------------------------------------

// A' = Q^T A Q computed exactly as (2Q)^T A (2Q) / 4.
inline Graph apply(const SwitchingInstance& inst) {
    const FamilyData& fd = FamilyData::get(inst.family);
    const int n = inst.host.n;
    const int k = inst.family.size();
    SmallMatrix q2 = SmallMatrix::identity(n, 2);
    for (int a = 0; a < k; ++a)
        for (int c = 0; c < k; ++c)
            q2(inst.set_vertices[static_cast<size_t>(a)], inst.set_vertices[static_cast<size_t>(c)]) = fd.r2(a, c);
    SmallMatrix conj = q2.transpose() * inst.host.to_matrix() * q2;
    SmallMatrix res(n, n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (conj(i, j) % 4 != 0) throw exactness_error("conjugation not divisible by 4: invalid instance");
            res(i, j) = conj(i, j) / 4;
        }
    return Graph::from_matrix(res);
}

namespace detail {

inline void write_set_block(Graph& out, const std::vector<int>& verts, const SmallGraph& bimg) {
    for (size_t a = 0; a < verts.size(); ++a)
        for (size_t c = a + 1; c < verts.size(); ++c) {
            bool want = bimg.has_edge(static_cast<int>(a), static_cast<int>(c));
            if (out.has_edge(verts[a], verts[c]) != want) out.toggle_edge(verts[a], verts[c]);
        }
}

inline void write_column(Graph& out, const std::vector<int>& verts, int w, uint32_t img) {
    for (size_t t = 0; t < verts.size(); ++t) {
        bool want = img >> t & 1;
        if (out.has_edge(w, verts[t]) != want) out.toggle_edge(w, verts[t]);
    }
}

} // namespace detail

// The same switching done through the closed-form column map of V_R and the
// block image of B; must agree with apply() on every valid instance.
inline Graph apply_combinatorial(const SwitchingInstance& inst) {
    const FamilyData& fd = FamilyData::get(inst.family);
    Graph out = inst.host;
    uint64_t sm = inst.set_mask();
    for (int w = 0; w < inst.host.n; ++w) {
        if (sm >> w & 1) continue;
        detail::write_column(out, inst.set_vertices, w, fd.v.image(inst.column_of(w)));
    }
    SmallGraph bimg;
    if (!detail::conjugate_adjacency(fd.r2, inst.b, bimg))
        throw admissibility_error("switching-set block is not admissible");
    detail::write_set_block(out, inst.set_vertices, bimg);
    return out;
}

// ---- classic host operations ------------------------------------------------------

// Godsil-McKay switching on a cell partition; everything outside the cells is D.
inline Graph apply_gm(const Graph& g, const std::vector<std::vector<int>>& cells) {
    std::vector<char> in_cell(static_cast<size_t>(g.n), 0);
    for (const auto& c : cells) {
        if (c.empty() || c.size() % 2) throw admissibility_error("GM cells must be nonempty of even size");
        for (int v : c)
            if (in_cell[static_cast<size_t>(v)]++) throw admissibility_error("GM cells overlap");
    }
    for (size_t i = 0; i < cells.size(); ++i)
        for (size_t j = 0; j < cells.size(); ++j) {
            int expect = -1;
            for (int v : cells[i]) {
                int cnt = 0;
                for (int u : cells[j])
                    if (u != v && g.has_edge(v, u)) ++cnt;
                if (expect < 0) expect = cnt;
                if (cnt != expect)
                    throw admissibility_error("GM condition (i) fails: unequal neighbour counts from C_" +
                                              std::to_string(i + 1) + " into C_" + std::to_string(j + 1));
            }
        }
    Graph out = g;
    for (int w = 0; w < g.n; ++w) {
        if (in_cell[static_cast<size_t>(w)]) continue;
        for (size_t i = 0; i < cells.size(); ++i) {
            int cnt = 0;
            for (int u : cells[i])
                if (g.has_edge(w, u)) ++cnt;
            int size = static_cast<int>(cells[i].size());
            if (cnt == 0 || cnt == size) continue;
            if (2 * cnt != size)
                throw admissibility_error("vertex " + std::to_string(w) + " has " + std::to_string(cnt) +
                                          " neighbours in C_" + std::to_string(i + 1) + ", expected 0, half, or all");
            for (int u : cells[i]) out.toggle_edge(w, u);
        }
    }
    return out;
}

// Wang-Qiu-Hu switching; each cell is two sides of equal size.
inline Graph apply_wqh(const Graph& g, const std::vector<std::pair<std::vector<int>, std::vector<int>>>& cells) {
    std::vector<char> in_cell(static_cast<size_t>(g.n), 0);
    for (const auto& [a, b] : cells) {
        if (a.size() != b.size() || a.empty())
            throw admissibility_error("WQH condition (i) fails: sides must be nonempty of equal size");
        for (int v : a)
            if (in_cell[static_cast<size_t>(v)]++) throw admissibility_error("WQH cells overlap");
        for (int v : b)
            if (in_cell[static_cast<size_t>(v)]++) throw admissibility_error("WQH cells overlap");
    }
    auto count_in = [&](int v, const std::vector<int>& s) {
        int c = 0;
        for (int u : s)
            if (g.has_edge(v, u)) ++c;
        return c;
    };
    for (size_t i = 0; i < cells.size(); ++i)
        for (size_t j = 0; j < cells.size(); ++j) {
            int expect = std::numeric_limits<int>::min();
            auto check = [&](int v, bool first_side) {
                int d = count_in(v, cells[j].first) - count_in(v, cells[j].second);
                if (!first_side) d = -d;
                if (expect == std::numeric_limits<int>::min()) expect = d;
                if (d != expect)
                    throw admissibility_error("WQH condition (ii) fails between C_" + std::to_string(i + 1) +
                                              " and C_" + std::to_string(j + 1));
            };
            for (int v : cells[i].first) check(v, true);
            for (int v : cells[i].second) check(v, false);
        }
    Graph out = g;
    for (int w = 0; w < g.n; ++w) {
        if (in_cell[static_cast<size_t>(w)]) continue;
        for (size_t i = 0; i < cells.size(); ++i) {
            const auto& [a, b] = cells[i];
            int ca = count_in(w, a), cb = count_in(w, b);
            int k = static_cast<int>(a.size());
            bool swap_all = (ca == k && cb == 0) || (ca == 0 && cb == k);
            if (!swap_all && ca != cb)
                throw admissibility_error("WQH condition (iii) fails at vertex " + std::to_string(w) +
                                          " against C_" + std::to_string(i + 1));
            if (swap_all) {
                for (int u : a) out.toggle_edge(w, u);
                for (int u : b) out.toggle_edge(w, u);
            }
        }
    }
    return out;
}

// ---- named switching-set matrices ---------------------------------------------------

enum class NamedB { sun, infinite1, infinite2, six_vertex };

// Base switching-set adjacency for the named circulant methods; callers may
// complement off-diagonal block pairs afterwards.
inline SmallGraph build_named_B(NamedB which, int m) {
    auto circul = [&](const std::vector<uint8_t>& off) {
        BlockGrid g;
        g.m = m;
        for (int i = 0; i < m; ++i)
            for (int o = 0; o < m; ++o) g.set(i, (i + o) % m, off[static_cast<size_t>(o)]);
        return g.to_graph();
    };
    const uint8_t O = 0, I = 9, N = 12, NT = 10;
    switch (which) {
        case NamedB::six_vertex:
            if (m != 3) throw domain_error("six-vertex switching needs m = 3");
            return circul({O, N, NT});
        case NamedB::sun: {
            if (m < 3 || m % 2 == 0) throw domain_error("sun switching needs odd m >= 3");
            std::vector<uint8_t> off(static_cast<size_t>(m), O);
            off[static_cast<size_t>((m - 1) / 2)] = N;
            off[static_cast<size_t>((m + 1) / 2)] = NT;
            return circul(off);
        }
        case NamedB::infinite1: {
            if (m < 3 || m % 2 == 0) throw domain_error("this family needs odd m >= 3");
            std::vector<uint8_t> off(static_cast<size_t>(m), I);
            off[0] = O;
            off[static_cast<size_t>((m - 1) / 2)] = N;
            off[static_cast<size_t>((m + 1) / 2)] = NT;
            return circul(off);
        }
        case NamedB::infinite2: {
            if (m < 5) throw domain_error("this family needs m >= 5");
            std::vector<uint8_t> off(static_cast<size_t>(m), O);
            off[1] = N;
            off[2] = NT;
            off[static_cast<size_t>(m - 2)] = N;
            off[static_cast<size_t>(m - 1)] = NT;
            return circul(off);
        }
    }
    throw domain_error("unknown named B");
}

// toggle the off-diagonal block pair (i, j) of a paired switching set
inline SmallGraph with_block_complement(const SmallGraph& b, int i, int j) {
    SmallGraph g = b;
    g.toggle_edge(2 * i, 2 * j);
    g.toggle_edge(2 * i, 2 * j + 1);
    g.toggle_edge(2 * i + 1, 2 * j);
    g.toggle_edge(2 * i + 1, 2 * j + 1);
    return g;
}

// ---- combinatorial rewrites per named theorem -----------------------------------------

enum class CirculantRewrite { sun, infinite1, infinite2, conjugate };

// The block moves each circulant theorem states, with the pair-shift rule for
// the outside vertices. `conjugate` uses the Eq.(1) window transform for the
// block part (as the twelve-vertex statement does).
inline Graph apply_prose_circulant(const SwitchingInstance& inst, CirculantRewrite rule) {
    const FamilyData& fd = FamilyData::get(inst.family);
    const int m = inst.family.pairs();
    Graph out = inst.host;
    uint64_t sm = inst.set_mask();
    for (int w = 0; w < inst.host.n; ++w) {
        if (sm >> w & 1) continue;
        uint32_t col = inst.column_of(w);
        if (!fd.v.contains(col)) throw admissibility_error("outside column not admissible");
        int odd_pairs = 0;
        for (int p = 0; p < m; ++p) {
            int ones = (col >> (2 * p) & 1) + (col >> (2 * p + 1) & 1);
            if (ones % 2) ++odd_pairs;
        }
        if (odd_pairs != m) continue; // even columns stay put
        uint32_t img = (col >> 2) | ((col & 3u) << (2 * m - 2));
        detail::write_column(out, inst.set_vertices, w, img);
    }
    BlockGrid cur = BlockGrid::from_graph(inst.b);
    BlockGrid nxt = cur;
    auto at = [&](int i, int j) { return cur.at(((i % m) + m) % m, ((j % m) + m) % m); };
    auto put = [&](int i, int j, uint8_t c) {
        int a = ((i % m) + m) % m, b2 = ((j % m) + m) % m;
        nxt.set(a, b2, c);
        nxt.set(b2, a, transpose_code(c));
    };
    switch (rule) {
        case CirculantRewrite::sun: {
            int h = (m - 1) / 2;
            for (int i = 0; i < m; ++i) put(i, i + h, at(i, i + h + 1));
            break;
        }
        case CirculantRewrite::infinite1: {
            int h = (m - 1) / 2;
            for (int i = 0; i < m; ++i) {
                for (int o = 1; o < h; ++o) put(i, i + o, at(i + 1, i + o + 1));
                put(i, i + h, at(i, i + h + 1));
            }
            break;
        }
        case CirculantRewrite::infinite2: {
            for (int i = 0; i < m; ++i) {
                put(i, i + 1, at(i, i + 2));
                put(i, i + 2, at(i + 1, i + 2));
            }
            break;
        }
        case CirculantRewrite::conjugate: {
            auto t = block_transform(cur);
            if (!t) throw admissibility_error("block transform failed");
            nxt = *t;
            break;
        }
    }
    detail::write_set_block(out, inst.set_vertices, nxt.to_graph());
    return out;
}

// Fano switching: a vertex (non)adjacent to exactly the line l_i becomes
// (non)adjacent to the oval O_i; the set itself takes B' = R^T B R.
inline Graph apply_prose_fano(const SwitchingInstance& inst) {
    const FamilyData& fd = FamilyData::get(inst.family);
    auto geo = fano_geometry();
    Graph out = inst.host;
    uint64_t sm = inst.set_mask();
    uint32_t full = (1u << 7) - 1;
    for (int w = 0; w < inst.host.n; ++w) {
        if (sm >> w & 1) continue;
        uint32_t col = inst.column_of(w);
        uint32_t img = col;
        if (col != 0 && col != full) {
            bool done = false;
            for (int i = 0; i < 7 && !done; ++i) {
                if (col == geo.line_mask(i)) {
                    img = geo.oval_mask(i);
                    done = true;
                } else if (col == (full & ~geo.line_mask(i))) {
                    img = full & ~geo.oval_mask(i);
                    done = true;
                }
            }
            if (!done) throw admissibility_error("outside column is neither a line nor a co-line");
        }
        detail::write_column(out, inst.set_vertices, w, img);
    }
    SmallGraph bimg;
    if (!detail::conjugate_adjacency(fd.r2, inst.b, bimg)) throw admissibility_error("B not admissible");
    detail::write_set_block(out, inst.set_vertices, bimg);
    return out;
}

// Cube switching on AG(3,2): faces rotate by pi = (12)(385476), opposite-edge
// planes complement, tetrahedra stay.
inline Graph apply_prose_cube(const SwitchingInstance& inst) {
    const FamilyData& fd = FamilyData::get(inst.family);
    auto geo = cube_geometry();
    Graph out = inst.host;
    uint64_t sm = inst.set_mask();
    for (int w = 0; w < inst.host.n; ++w) {
        if (sm >> w & 1) continue;
        uint32_t col = inst.column_of(w);
        uint32_t img;
        if (col == 0 || col == 0xffu) {
            img = col;
        } else {
            if (!geo.is_plane(col)) throw admissibility_error("outside column is not an affine plane");
            bool is_face = false;
            for (int c = 0; c < 3; ++c) {
                int cnt[2] = {0, 0};
                for (int i = 0; i < 8; ++i)
                    if (col >> i & 1) ++cnt[geo.coords[i] >> c & 1];
                if (cnt[0] == 4 || cnt[1] == 4) is_face = true;
            }
            bool is_tetra = true;
            for (int i = 0; i < 8 && is_tetra; ++i)
                for (int j = i + 1; j < 8; ++j)
                    if ((col >> i & 1) && (col >> j & 1) &&
                        __builtin_popcount(geo.coords[i] ^ geo.coords[j]) == 1) {
                        is_tetra = false;
                        break;
                    }
            if (is_face) {
                img = 0;
                for (int i = 0; i < 8; ++i)
                    if (col >> i & 1) img |= 1u << geo.rotation[i];
            } else if (is_tetra) {
                img = col;
            } else {
                img = (~col) & 0xffu;
            }
        }
        detail::write_column(out, inst.set_vertices, w, img);
    }
    SmallGraph bimg;
    if (!detail::conjugate_adjacency(fd.r2, inst.b, bimg)) throw admissibility_error("B not admissible");
    detail::write_set_block(out, inst.set_vertices, bimg);
    return out;
}

// ---- planted instances ------------------------------------------------------------------

// Host with a valid planted switching set. The outside profile assigns each
// outside vertex a column from V_R; outside-outside edges come from the seed,
// and the whole host is relabelled by a seeded permutation.
inline SwitchingInstance gen_planted(const SwitchingFamily& fam, const SmallGraph& b,
                                     const std::vector<uint32_t>& outside_profile, uint64_t seed) {
    const FamilyData& fd = FamilyData::get(fam);
    if (!fd.in_B(b)) throw admissibility_error("planted B is not in B_R");
    const int k = fam.size();
    const int n = k + static_cast<int>(outside_profile.size());
    if (n > 64) throw capacity_error("host too large");
    for (uint32_t col : outside_profile)
        if (!fd.v.contains(col)) throw admissibility_error("outside profile column not in V_R");
    std::mt19937_64 rng(seed);
    Graph g = Graph::empty(n);
    for (int a = 0; a < k; ++a)
        for (int c = a + 1; c < k; ++c)
            if (b.has_edge(a, c)) g.set_edge(a, c);
    for (int w = k; w < n; ++w) {
        uint32_t col = outside_profile[static_cast<size_t>(w - k)];
        for (int t = 0; t < k; ++t)
            if (col >> t & 1) g.set_edge(w, t);
    }
    for (int w = k; w < n; ++w)
        for (int u = w + 1; u < n; ++u)
            if (rng() & 1) g.set_edge(w, u);
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<size_t>(i)], perm[rng() % (static_cast<size_t>(i) + 1)]);
    Graph shuffled = g.permuted(perm);
    std::vector<int> moved(static_cast<size_t>(k));
    for (int t = 0; t < k; ++t) moved[static_cast<size_t>(t)] = perm[static_cast<size_t>(t)];
    return SwitchingInstance::make(shuffled, fam, std::move(moved));
}

// convenience: random admissible columns outside
inline SwitchingInstance gen_planted(const SwitchingFamily& fam, const SmallGraph& b, int outside, uint64_t seed) {
    const FamilyData& fd = FamilyData::get(fam);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<uint32_t> profile;
    for (int i = 0; i < outside; ++i) profile.push_back(fd.v.members[rng() % fd.v.members.size()]);
    return gen_planted(fam, b, profile, seed);
}

// ---- detection ----------------------------------------------------------------------------

struct FindLimits {
    uint64_t max_instances = 1000;
    uint64_t max_nodes = 50'000'000;
};

// All switching instances of one family in a host, one per orbit of the
// family symmetry group. The set grows vertex by vertex under a membership
// prefix check, and vertices whose partial column already left every V_R
// prefix must join the set later or the branch dies.
inline std::vector<SwitchingInstance> find_switching_sets(const Graph& g, const SwitchingFamily& fam,
                                                          const FindLimits& limits = {}) {
    const FamilyData& fd = FamilyData::get(fam);
    const int k = fam.size();
    std::vector<SwitchingInstance> out;
    if (g.n < k) return out;

    std::unordered_set<u128, U128Hash> emitted;
    std::vector<int> chosen;
    uint64_t nodes = 0;
    bool stop = false;

    std::function<void()> rec = [&]() {
        if (stop) return;
        if (++nodes > limits.max_nodes) {
            stop = true;
            return;
        }
        int d = static_cast<int>(chosen.size());
        if (d == k) {
            uint64_t sm = 0;
            for (int v : chosen) sm |= uint64_t(1) << v;
            for (int w = 0; w < g.n; ++w) {
                if (sm >> w & 1) continue;
                uint32_t col = 0;
                for (int t = 0; t < k; ++t)
                    if (g.has_edge(w, chosen[static_cast<size_t>(t)])) col |= 1u << t;
                if (!fd.v.contains(col)) return;
            }
            SmallGraph b = g.induced(chosen).to_small();
            if (!fd.in_B(b)) return;
            std::vector<int> best = chosen;
            for (const auto& sp : fd.sym) {
                std::vector<int> cand(static_cast<size_t>(k));
                for (int t = 0; t < k; ++t) cand[sp.p[static_cast<size_t>(t)]] = chosen[static_cast<size_t>(t)];
                if (cand < best) best = cand;
            }
            u128 key = 0;
            for (int v : best) key = key * 131 + static_cast<unsigned>(v + 1);
            if (!emitted.insert(key).second) return;
            out.push_back(SwitchingInstance::make(g, fam, best));
            if (out.size() >= limits.max_instances) stop = true;
            return;
        }
        for (int v = 0; v < g.n && !stop; ++v) {
            bool used = false;
            for (int u : chosen)
                if (u == v) used = true;
            if (used) continue;
            chosen.push_back(v);
            int depth = d + 1;
            SmallGraph prefix = g.induced(chosen).to_small();
            bool ok = fd.prefix_ok(prefix, depth);
            if (ok) {
                // vertices already incompatible with every V_R prefix must
                // join the set later; too many of them kill the branch
                int forced = 0;
                for (int w = 0; w < g.n && ok; ++w) {
                    bool inside = false;
                    for (int u : chosen)
                        if (u == w) inside = true;
                    if (inside) continue;
                    uint32_t col = 0;
                    for (int t = 0; t < depth; ++t)
                        if (g.has_edge(w, chosen[static_cast<size_t>(t)])) col |= 1u << t;
                    if (!fd.v_prefixes[static_cast<size_t>(depth)].count(col)) ++forced;
                }
                if (forced > k - depth) ok = false;
            }
            if (ok) rec();
            chosen.pop_back();
        }
    };
    rec();
    std::sort(out.begin(), out.end(), [](const SwitchingInstance& a, const SwitchingInstance& b) {
        return a.set_vertices < b.set_vertices;
    });
    return out;
}

} // namespace l2switch
