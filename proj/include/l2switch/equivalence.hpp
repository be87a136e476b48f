#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "l2switch/admissible.hpp"
#include "l2switch/catalog.hpp"

namespace l2switch {

// P^T R P' = R with P, P' permutation matrices; p maps row index i to p[i].
struct SymmetryPair {
    std::vector<uint8_t> p;
    std::vector<uint8_t> p_prime;
};

// All permutations P for which some P' satisfies P^T R P' = R, i.e.
// R[p(i), p'(j)] = R[i, j]. Backtracking over rows with column-candidate
// masks. The matching P' is unique because columns of R are distinct.
inline std::vector<SymmetryPair> symmetry_pairs(const SmallMatrix& m2) {
    const int n = m2.rows();
    if (n > 16) throw capacity_error("symmetry_pairs supports n <= 16");
    std::vector<SymmetryPair> out;
    std::vector<uint8_t> p(n, 0);
    std::vector<uint32_t> colmask(n, 0); // colmask[j]: candidate c for p'(j)
    for (int j = 0; j < n; ++j) colmask[j] = (1u << n) - 1;
    std::vector<char> row_used(n, 0);

    std::function<void(int, const std::vector<uint32_t>&)> rec = [&](int i, const std::vector<uint32_t>& mask) {
        if (i == n) {
            SymmetryPair sp;
            sp.p = p;
            sp.p_prime.assign(n, 0);
            uint32_t used = 0;
            for (int j = 0; j < n; ++j) {
                uint32_t m = mask[j] & ~used;
                if (__builtin_popcount(mask[j]) != 1) return; // columns of R are distinct; should not happen
                (void)m;
                sp.p_prime[j] = static_cast<uint8_t>(__builtin_ctz(mask[j]));
                if (used & (1u << sp.p_prime[j])) return;
                used |= 1u << sp.p_prime[j];
            }
            out.push_back(std::move(sp));
            return;
        }
        for (int r = 0; r < n; ++r) {
            if (row_used[r]) continue;
            // refine column masks with constraint R[r, c] == R[i, j]
            std::vector<uint32_t> next = mask;
            bool ok = true;
            for (int j = 0; j < n && ok; ++j) {
                uint32_t m = next[j];
                for (int c = 0; c < n; ++c)
                    if ((m >> c & 1) && m2(r, c) != m2(i, j)) m &= ~(1u << c);
                next[j] = m;
                if (!m) ok = false;
            }
            if (!ok) continue;
            row_used[r] = 1;
            p[i] = static_cast<uint8_t>(r);
            rec(i + 1, next);
            row_used[r] = 0;
        }
    };
    rec(0, colmask);
    std::sort(out.begin(), out.end(), [](const SymmetryPair& a, const SymmetryPair& b) { return a.p < b.p; });
    return out;
}

struct EquivalenceClass {
    SmallGraph canonical;
    uint64_t members = 0;
    std::optional<bool> irreducible;
};

// The quotient group of one family: conjugations (a), full complementation
// (b), and for pair-structured families blockwise complementation (c).
struct EquivalenceContext {
    SwitchingFamily family;
    SmallMatrix m2;
    std::vector<SymmetryPair> sym;
    bool block_complements = false;

    static EquivalenceContext make(const SwitchingFamily& f) {
        EquivalenceContext ctx;
        ctx.family = f;
        ctx.m2 = build_scaled(f);
        ctx.sym = symmetry_pairs(ctx.m2);
        ctx.block_complements = f.paired();
        return ctx;
    }
};

namespace detail {

inline SmallGraph conj(const SmallGraph& b, const std::vector<uint8_t>& p) { return b.permuted(p); }

// expand the orbit of b under the context group, materialized
inline std::vector<SmallGraph> orbit_expand(const SmallGraph& b, const EquivalenceContext& ctx) {
    std::unordered_set<u128, U128Hash> seen;
    std::vector<SmallGraph> frontier = {b}, all = {b};
    seen.insert(b.pack());
    const int m = ctx.family.pairs();
    while (!frontier.empty()) {
        std::vector<SmallGraph> next;
        for (const auto& g : frontier) {
            auto push = [&](const SmallGraph& h) {
                if (seen.insert(h.pack()).second) {
                    next.push_back(h);
                    all.push_back(h);
                }
            };
            for (const auto& sp : ctx.sym) push(conj(g, sp.p));
            push(g.complement());
            if (ctx.block_complements)
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j) {
                        SmallGraph h = g;
                        h.toggle_edge(2 * i, 2 * j);
                        h.toggle_edge(2 * i, 2 * j + 1);
                        h.toggle_edge(2 * i + 1, 2 * j);
                        h.toggle_edge(2 * i + 1, 2 * j + 1);
                        push(h);
                    }
        }
        frontier = std::move(next);
    }
    return all;
}

// lexicographic minimum over all off-diagonal block complement choices of a
// diagonal-zero member; blocks occupy disjoint bit positions, so the global
// minimum is the per-block minimum.
inline SmallGraph block_min(const SmallGraph& g, int m) {
    BlockGrid grid = BlockGrid::from_graph(g);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            uint8_t c = grid.at(i, j);
            uint8_t cc = complement_code(c);
            // bit significance within the pack: (2i,2j) > (2i,2j+1) > (2i+1,2j) > (2i+1,2j+1)
            auto key = [](uint8_t code) {
                return (static_cast<unsigned>(code & 1) << 3) | (static_cast<unsigned>(code >> 1 & 1) << 2) |
                       (static_cast<unsigned>(code >> 2 & 1) << 1) | static_cast<unsigned>(code >> 3 & 1);
            };
            if (key(cc) < key(c)) {
                grid.set(i, j, cc);
                grid.set(j, i, transpose_code(cc));
            }
        }
    return grid.to_graph();
}

} // namespace detail

// Lexicographic minimum of the orbit of b.
inline SmallGraph orbit_canonical(const SmallGraph& b, const EquivalenceContext& ctx) {
    auto orbit = detail::orbit_expand(b, ctx);
    return *std::min_element(orbit.begin(), orbit.end());
}

// Partition a set into equivalence classes: members are grouped by the
// canonical form of their full orbit, so a subset of B_R is classified by
// which classes its members belong to and sizes sum to the input size.
// Deterministic order by canonical representative.
inline std::vector<EquivalenceClass> classes(const std::vector<SmallGraph>& b_set, const EquivalenceContext& ctx) {
    std::unordered_map<u128, u128, U128Hash> canon_of; // member -> canonical pack
    std::map<u128, uint64_t> counts;
    std::map<u128, uint8_t> order_of;
    for (const auto& b : b_set) {
        auto it = canon_of.find(b.pack());
        u128 canon;
        if (it != canon_of.end()) {
            canon = it->second;
        } else {
            auto orbit = detail::orbit_expand(b, ctx);
            canon = std::min_element(orbit.begin(), orbit.end())->pack();
            for (const auto& g : orbit) canon_of.emplace(g.pack(), canon);
        }
        ++counts[canon];
        order_of[canon] = b.n;
    }
    std::vector<EquivalenceClass> out;
    for (const auto& [canon, count] : counts) {
        EquivalenceClass cls;
        cls.canonical = SmallGraph::unpack(order_of[canon], canon);
        cls.members = count;
        out.push_back(std::move(cls));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b2) { return a.canonical < b2.canonical; });
    return out;
}

inline bool pair_respecting(const std::vector<uint8_t>& p, int m) {
    for (int i = 0; i < m; ++i) {
        int a = p[2 * i], b = p[2 * i + 1];
        if (a / 2 != b / 2) return false;
    }
    return true;
}

// Orbit partition of the patched representatives under the induced
// conjugation action; canon_of[i] is the class canonical of representative i.
// Sound when every symmetry maps pairs to pairs (m >= 3), since conjugation
// then acts on block-complement orbits.
struct ReducedOrbits {
    std::vector<uint64_t> orbit_sizes;  // representatives per class, class order
    std::vector<SmallGraph> canonicals; // one per class, sorted
    std::vector<u128> canon_of;         // per representative index
};

inline ReducedOrbits reduced_orbits(const PatchedSet& ps, const EquivalenceContext& ctx) {
    const int m = ps.m;
    for (const auto& sp : ctx.sym)
        if (!pair_respecting(sp.p, m))
            throw admissibility_error("reduced orbits need pair-respecting symmetries (m >= 3)");
    std::unordered_map<u128, size_t, U128Hash> rep_index;
    for (size_t i = 0; i < ps.reduced.size(); ++i) rep_index.emplace(ps.reduced[i].pack(), i);
    std::vector<char> seen(ps.reduced.size(), 0);
    ReducedOrbits out;
    out.canon_of.assign(ps.reduced.size(), 0);
    std::vector<std::pair<SmallGraph, std::vector<size_t>>> orbits;
    for (size_t start = 0; start < ps.reduced.size(); ++start) {
        if (seen[start]) continue;
        std::vector<size_t> orbit = {start};
        seen[start] = 1;
        SmallGraph canon = detail::block_min(ps.reduced[start], m);
        for (size_t qi = 0; qi < orbit.size(); ++qi) {
            const SmallGraph& g = ps.reduced[orbit[qi]];
            for (const auto& sp : ctx.sym) {
                auto norm = ps.normalize(detail::conj(g, sp.p));
                if (!norm) throw admissibility_error("conjugate left the patched set");
                auto it = rep_index.find(norm->pack());
                if (it == rep_index.end()) throw admissibility_error("conjugate not among representatives");
                if (!seen[it->second]) {
                    seen[it->second] = 1;
                    orbit.push_back(it->second);
                    SmallGraph c = detail::block_min(ps.reduced[it->second], m);
                    if (c < canon) canon = c;
                }
            }
        }
        orbits.emplace_back(canon, std::move(orbit));
    }
    std::sort(orbits.begin(), orbits.end(),
              [](const auto& a, const auto& b2) { return a.first < b2.first; });
    for (const auto& [canon, orbit] : orbits) {
        out.canonicals.push_back(canon);
        out.orbit_sizes.push_back(orbit.size());
        for (size_t idx : orbit) out.canon_of[idx] = canon.pack();
    }
    return out;
}

// Classes of B_{R_2m} from the patched representatives without materializing
// the raw set: each class is (orbit of representatives) x (2^offdiag block
// choices) x (complement). R_4 has non-pair symmetries, so that case falls
// back to the raw set.
inline std::vector<EquivalenceClass> classes(const PatchedSet& ps, const EquivalenceContext& ctx) {
    for (const auto& sp : ctx.sym)
        if (!pair_respecting(sp.p, ps.m)) return classes(ps.materialize(), ctx);
    auto orbits = reduced_orbits(ps, ctx);
    std::vector<EquivalenceClass> out;
    for (size_t i = 0; i < orbits.canonicals.size(); ++i) {
        EquivalenceClass cls;
        cls.canonical = orbits.canonicals[i];
        cls.members = orbits.orbit_sizes[i] << (ps.offdiag() + 1);
        out.push_back(std::move(cls));
    }
    return out;
}

} // namespace l2switch
