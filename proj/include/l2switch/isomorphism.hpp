#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "l2switch/graph.hpp"

namespace l2switch {

// Iterated colour refinement; colours are ranks of (colour, sorted multiset of
// neighbour colours) signatures, so equal graphs get equal colourings.
inline std::vector<int> colour_refinement(const Graph& g, std::vector<int> col = {}) {
    if (col.empty()) col.assign(static_cast<size_t>(g.n), 0);
    for (int round = 0; round < g.n; ++round) {
        std::vector<std::pair<std::vector<int>, int>> sig(static_cast<size_t>(g.n));
        for (int v = 0; v < g.n; ++v) {
            std::vector<int> s;
            s.push_back(col[static_cast<size_t>(v)]);
            uint64_t m = g.rows[static_cast<size_t>(v)];
            while (m) {
                int u = __builtin_ctzll(m);
                m &= m - 1;
                s.push_back(col[static_cast<size_t>(u)]);
            }
            std::sort(s.begin() + 1, s.end());
            sig[static_cast<size_t>(v)] = {std::move(s), v};
        }
        std::map<std::vector<int>, int> rank;
        for (const auto& [s, v] : sig) rank.emplace(s, 0);
        int r = 0;
        for (auto& [s, rk] : rank) rk = r++;
        std::vector<int> next(static_cast<size_t>(g.n));
        for (const auto& [s, v] : sig) next[static_cast<size_t>(v)] = rank[s];
        if (next == col) break;
        col = std::move(next);
    }
    return col;
}

namespace detail {

struct IsoSearch {
    const Graph& g;
    const Graph& h;
    std::vector<int> colg, colh;
    std::vector<int> order;        // g vertices in mapping order
    std::vector<int> gmap;         // g vertex -> h vertex or -1
    uint64_t used_h = 0;
    uint64_t mapped_g_mask = 0;
    long long budget = -1;         // node budget, -1 unlimited

    IsoSearch(const Graph& g_, const Graph& h_) : g(g_), h(h_) {
        colg = colour_refinement(g);
        colh = colour_refinement(h);
        gmap.assign(static_cast<size_t>(g.n), -1);
        // mapping order: most-constrained colour class first, then by connectivity
        order.resize(static_cast<size_t>(g.n));
        std::iota(order.begin(), order.end(), 0);
        std::vector<int> colsize(static_cast<size_t>(g.n), 0);
        for (int v = 0; v < g.n; ++v) ++colsize[static_cast<size_t>(colg[static_cast<size_t>(v)])];
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            int ca = colsize[static_cast<size_t>(colg[static_cast<size_t>(a)])];
            int cb = colsize[static_cast<size_t>(colg[static_cast<size_t>(b)])];
            if (ca != cb) return ca < cb;
            return a < b;
        });
        // reorder greedily for connectivity with the already-ordered prefix
        for (size_t i = 1; i < order.size(); ++i) {
            uint64_t placed = 0;
            for (size_t k = 0; k < i; ++k) placed |= uint64_t(1) << order[k];
            if (g.rows[static_cast<size_t>(order[i])] & placed) continue;
            for (size_t j = i + 1; j < order.size(); ++j)
                if (g.rows[static_cast<size_t>(order[j])] & placed) {
                    std::swap(order[i], order[j]);
                    break;
                }
        }
    }

    bool feasible(int v, int w) const {
        if (colg[static_cast<size_t>(v)] != colh[static_cast<size_t>(w)]) return false;
        if (used_h >> w & 1) return false;
        // adjacency with every mapped vertex must agree
        uint64_t m = g.rows[static_cast<size_t>(v)] & mapped_g_mask;
        uint64_t expect = 0;
        while (m) {
            int u = __builtin_ctzll(m);
            m &= m - 1;
            expect |= uint64_t(1) << gmap[static_cast<size_t>(u)];
        }
        if ((h.rows[static_cast<size_t>(w)] & used_h) != expect) return false;
        return true;
    }

    std::vector<int> found; // complete mapping captured on success

    bool rec(size_t depth, std::optional<std::pair<int, int>> forced) {
        if (budget == 0) return false;
        if (budget > 0) --budget;
        if (depth == order.size()) {
            found = gmap;
            return true;
        }
        int v = order[depth];
        if (forced && forced->first == v) {
            int w = forced->second;
            if (!feasible(v, w)) return false;
            gmap[static_cast<size_t>(v)] = w;
            used_h |= uint64_t(1) << w;
            mapped_g_mask |= uint64_t(1) << v;
            bool ok = rec(depth + 1, forced);
            used_h &= ~(uint64_t(1) << w);
            mapped_g_mask &= ~(uint64_t(1) << v);
            gmap[static_cast<size_t>(v)] = -1;
            return ok;
        }
        for (int w = 0; w < h.n; ++w) {
            if (!feasible(v, w)) continue;
            gmap[static_cast<size_t>(v)] = w;
            used_h |= uint64_t(1) << w;
            mapped_g_mask |= uint64_t(1) << v;
            bool ok = rec(depth + 1, forced);
            used_h &= ~(uint64_t(1) << w);
            mapped_g_mask &= ~(uint64_t(1) << v);
            gmap[static_cast<size_t>(v)] = -1;
            if (ok) return true;
        }
        return false;
    }
};

} // namespace detail

// Exact isomorphism test: colour refinement invariants, then backtracking.
// Candidate images of the first branching vertex are pruned to automorphism
// orbit representatives of h, discovered by bounded automorphism searches.
inline bool is_isomorphic(const Graph& g, const Graph& h) {
    if (g.n != h.n || g.edge_count() != h.edge_count()) return false;
    if (g.n == 0) return true;
    auto cg = colour_refinement(g);
    auto ch = colour_refinement(h);
    {
        std::vector<int> a = cg, b = ch;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    detail::IsoSearch search(g, h);
    int v0 = search.order[0];
    // orbit-prune candidates for v0 under Aut(h)
    std::vector<int> cands;
    for (int w = 0; w < h.n; ++w)
        if (ch[static_cast<size_t>(w)] == cg[static_cast<size_t>(v0)]) cands.push_back(w);
    std::vector<int> orbit(static_cast<size_t>(h.n));
    std::iota(orbit.begin(), orbit.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (orbit[static_cast<size_t>(x)] != x) x = orbit[static_cast<size_t>(x)] = orbit[static_cast<size_t>(orbit[static_cast<size_t>(x)])];
        return x;
    };
    if (cands.size() > 2) {
        int base = detail::IsoSearch(h, h).order[0];
        for (int w : cands) {
            if (w == base || find(base) == find(w)) continue;
            detail::IsoSearch probe(h, h);
            probe.budget = 20000;
            if (probe.rec(0, std::make_pair(base, w))) {
                for (int x = 0; x < h.n; ++x) {
                    int y = probe.found[static_cast<size_t>(x)];
                    if (y >= 0 && find(x) != find(y)) orbit[static_cast<size_t>(find(x))] = find(y);
                }
            }
        }
    }
    std::vector<char> orbit_seen(static_cast<size_t>(h.n), 0);
    for (int w : cands) {
        int r = find(w);
        if (orbit_seen[static_cast<size_t>(r)]) continue;
        orbit_seen[static_cast<size_t>(r)] = 1;
        detail::IsoSearch s(g, h);
        if (s.rec(0, std::make_pair(v0, w))) return true;
    }
    return false;
}

} // namespace l2switch
