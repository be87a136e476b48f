#pragma once

#include <algorithm>
#include <cstring>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

#include "l2switch/catalog.hpp"
#include "l2switch/parallel.hpp"
#include "l2switch/smallgraph.hpp"

namespace l2switch {

// ---- V_R: admissible outside columns -------------------------------------

struct VSet {
    int n = 0;
    std::vector<uint32_t> members; // sorted bitmasks
    std::vector<uint32_t> images;  // images[k] = bitmask of R^T members[k]
    std::vector<char> is_member;   // 2^n lookup

    bool contains(uint32_t v) const { return v < is_member.size() && is_member[v]; }
    uint32_t image(uint32_t v) const {
        auto it = std::lower_bound(members.begin(), members.end(), v);
        if (it == members.end() || *it != v) throw admissibility_error("column not in V_R");
        return images[static_cast<size_t>(it - members.begin())];
    }
};

// All 01-vectors v with (2R)^T v = 2w for a 01-vector w, by brute force.
inline VSet enumerate_V(const SmallMatrix& m2) {
    const int n = m2.rows();
    if (n > 16) throw capacity_error("enumerate_V supports n <= 16");
    VSet out;
    out.n = n;
    out.is_member.assign(size_t(1) << n, 0);
    for (uint32_t v = 0; v < (1u << n); ++v) {
        uint32_t img = 0;
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            int64_t s = 0;
            for (int i = 0; i < n; ++i)
                if (v >> i & 1) s += m2(i, j);
            if (s == 2) img |= 1u << j;
            else if (s != 0) ok = false;
        }
        if (ok) {
            out.members.push_back(v);
            out.images.push_back(img);
            out.is_member[v] = 1;
        }
    }
    return out;
}

inline uint32_t image_of_column(const VSet& vs, uint32_t v) { return vs.image(v); }

// ---- B_R by brute force (n <= 8) ------------------------------------------

// Gray-code walk over all symmetric 01 matrices; per edge delta matrices
// u_i u_j^T + u_j u_i^T with u_i = row i of 2R, target entries 4*{0,1} with
// zero diagonal.
inline std::vector<SmallGraph> enumerate_B_bruteforce(const SmallMatrix& m2, int workers = 1) {
    const int n = m2.rows();
    if (n > 8) throw capacity_error("enumerate_B_bruteforce supports n <= 8");
    const int E = n * (n - 1) / 2;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    // delta[e][i*n+j]
    std::vector<std::array<int8_t, 64>> delta(E);
    for (int e = 0; e < E; ++e) {
        auto [pi, pj] = pairs[e];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                delta[e][i * n + j] = static_cast<int8_t>(m2(pi, i) * m2(pj, j) + m2(pj, i) * m2(pi, j));
    }

    const int prefix_bits = std::min(6, E);
    const int low = E - prefix_bits;
    const uint32_t nchunks = 1u << prefix_bits;

    auto run_chunk = [&](uint32_t prefix) {
        std::vector<uint32_t> found;
        std::array<int16_t, 64> sum{};
        uint32_t cur = prefix << low;
        for (int e = 0; e < E; ++e)
            if (cur >> e & 1)
                for (int k = 0; k < n * n; ++k) sum[k] += delta[e][k];
        auto check = [&]() {
            for (int i = 0; i < n; ++i) {
                if (sum[i * n + i] != 0) return false;
                for (int j = i + 1; j < n; ++j) {
                    int16_t v = sum[i * n + j];
                    if (v != 0 && v != 4) return false;
                }
            }
            return true;
        };
        if (check()) found.push_back(cur);
        for (uint64_t k = 1; k < (uint64_t(1) << low); ++k) {
            int t = __builtin_ctzll(k);
            bool on = !(cur >> t & 1);
            cur ^= 1u << t;
            const auto& d = delta[t];
            if (on)
                for (int q = 0; q < n * n; ++q) sum[q] += d[q];
            else
                for (int q = 0; q < n * n; ++q) sum[q] -= d[q];
            if (check()) found.push_back(cur);
        }
        return found;
    };

    std::vector<std::vector<uint32_t>> per_chunk =
        parallel_map<std::vector<uint32_t>>(nchunks, workers, [&](size_t c) { return run_chunk(static_cast<uint32_t>(c)); });

    std::vector<SmallGraph> out;
    for (auto& v : per_chunk)
        for (uint32_t mask : v) {
            SmallGraph g = SmallGraph::empty(n);
            for (int e = 0; e < E; ++e)
                if (mask >> e & 1) g.set_edge(pairs[e].first, pairs[e].second);
            out.push_back(g);
        }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- 2x2 block codes and the Eq.(1) window --------------------------------

// bit0=(0,0) bit1=(0,1) bit2=(1,0) bit3=(1,1)
inline uint8_t transpose_code(uint8_t c) {
    return static_cast<uint8_t>((c & 1) | ((c >> 2 & 1) << 1) | ((c >> 1 & 1) << 2) | (c & 8));
}
inline uint8_t complement_code(uint8_t c) { return static_cast<uint8_t>(c ^ 0xf); }

// window_table()[q0 | q1<<4 | q2<<8 | q3<<12] = code of (J q0 J + J q1 Y + Y q2 J + Y q3 Y)/4,
// or -1 when that is not a 01 matrix.
inline const std::array<int8_t, 65536>& window_table() {
    static const std::array<int8_t, 65536> table = [] {
        std::array<int8_t, 65536> t{};
        t.fill(-1);
        auto ent = [](uint8_t c, int r, int col) { return (c >> (2 * r + col)) & 1; };
        static const int Jm[2][2] = {{1, 1}, {1, 1}};
        static const int Ym[2][2] = {{1, -1}, {-1, 1}};
        for (int q0 = 0; q0 < 16; ++q0)
            for (int q1 = 0; q1 < 16; ++q1)
                for (int q2 = 0; q2 < 16; ++q2)
                    for (int q3 = 0; q3 < 16; ++q3) {
                        int res[2][2] = {{0, 0}, {0, 0}};
                        for (int r = 0; r < 2; ++r)
                            for (int c = 0; c < 2; ++c)
                                for (int a = 0; a < 2; ++a)
                                    for (int b = 0; b < 2; ++b) {
                                        res[r][c] += Jm[r][a] * ent(static_cast<uint8_t>(q0), a, b) * Jm[b][c];
                                        res[r][c] += Jm[r][a] * ent(static_cast<uint8_t>(q1), a, b) * Ym[b][c];
                                        res[r][c] += Ym[r][a] * ent(static_cast<uint8_t>(q2), a, b) * Jm[b][c];
                                        res[r][c] += Ym[r][a] * ent(static_cast<uint8_t>(q3), a, b) * Ym[b][c];
                                    }
                        bool good = true;
                        int code = 0;
                        for (int r = 0; r < 2 && good; ++r)
                            for (int c = 0; c < 2 && good; ++c) {
                                if (res[r][c] == 4) code |= 1 << (2 * r + c);
                                else if (res[r][c] != 0) good = false;
                            }
                        if (good) t[static_cast<size_t>(q0) | (q1 << 4) | (q2 << 8) | (q3 << 12)] = static_cast<int8_t>(code);
                    }
        return t;
    }();
    return table;
}

// Switching-set adjacency in m x m blocks of 2x2 codes.
struct BlockGrid {
    int m = 0;
    std::array<uint8_t, 64> code{}; // code[i*m+j]

    uint8_t at(int i, int j) const { return code[static_cast<size_t>(i) * m + j]; }
    void set(int i, int j, uint8_t c) { code[static_cast<size_t>(i) * m + j] = c; }

    static BlockGrid from_graph(const SmallGraph& g) {
        if (g.n % 2) throw dimension_error("BlockGrid needs an even order graph");
        BlockGrid b;
        b.m = g.n / 2;
        for (int i = 0; i < b.m; ++i)
            for (int j = 0; j < b.m; ++j) {
                uint8_t c = 0;
                for (int r = 0; r < 2; ++r)
                    for (int col = 0; col < 2; ++col)
                        if (g.has_edge(2 * i + r, 2 * j + col)) c |= uint8_t(1 << (2 * r + col));
                b.set(i, j, c);
            }
        return b;
    }
    SmallGraph to_graph() const {
        SmallGraph g = SmallGraph::empty(2 * m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int r = 0; r < 2; ++r)
                    for (int col = 0; col < 2; ++col)
                        if (at(i, j) >> (2 * r + col) & 1) g.set_edge(2 * i + r, 2 * j + col);
        return g;
    }

    bool even_blocks() const {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (__builtin_popcount(at(i, j)) % 2) return false;
        return true;
    }
};

// B' = R_{2m}^T B R_{2m} blockwise; empty when some block is not 01.
inline std::optional<BlockGrid> block_transform(const BlockGrid& b) {
    const auto& wt = window_table();
    BlockGrid r;
    r.m = b.m;
    const int m = b.m;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            size_t key = static_cast<size_t>(b.at(i, j)) | (b.at(i, (j + 1) % m) << 4) |
                         (b.at((i + 1) % m, j) << 8) | (b.at((i + 1) % m, (j + 1) % m) << 12);
            int8_t c = wt[key];
            if (c < 0) return std::nullopt;
            if (i == j && ((c & 1) || (c & 8))) return std::nullopt; // diagonal entries
            r.set(i, j, static_cast<uint8_t>(c));
        }
    return r;
}

// Eq.(2): B from B', same window form with shifted indices.
inline std::optional<BlockGrid> block_transform_inverse(const BlockGrid& bp) {
    const auto& wt = window_table();
    BlockGrid r;
    r.m = bp.m;
    const int m = bp.m;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            size_t key = static_cast<size_t>(bp.at(i, j)) | (bp.at(i, (j + m - 1) % m) << 4) |
                         (bp.at((i + m - 1) % m, j) << 8) |
                         (bp.at((i + m - 1) % m, (j + m - 1) % m) << 12);
            int8_t c = wt[key];
            if (c < 0) return std::nullopt;
            if (i == j && ((c & 1) || (c & 8))) return std::nullopt;
            r.set(i, j, static_cast<uint8_t>(c));
        }
    return r;
}

// ---- B_{R_2m} by patching (Eq. (1) window DFS) -----------------------------

namespace detail {

// Enumerate diagonal-zero members with off-diagonal blocks from `alphabet`,
// assigned column of blocks by column of blocks, windows checked as soon as a
// quadruple of blocks is complete.
inline std::vector<std::vector<uint8_t>> patched_dfs(int m, const std::vector<uint8_t>& alphabet) {
    std::vector<std::pair<int, int>> vars; // (i,j) i<j, column-major
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < j; ++i) vars.emplace_back(i, j);
    const int nv = static_cast<int>(vars.size());
    std::vector<std::vector<int>> var_at(m, std::vector<int>(m, -1));
    for (int k = 0; k < nv; ++k) {
        var_at[vars[k].first][vars[k].second] = k;
        var_at[vars[k].second][vars[k].first] = k;
    }
    struct CompiledWindow {
        bool diag;
        // slot: var index or -1 for constant O; transposed flag
        std::array<int, 4> var;
        std::array<bool, 4> tr;
    };
    std::vector<std::vector<CompiledWindow>> trig(nv);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            std::array<std::pair<int, int>, 4> cells = {
                std::make_pair(a, b), {a, (b + 1) % m}, {(a + 1) % m, b}, {(a + 1) % m, (b + 1) % m}};
            CompiledWindow w;
            w.diag = (a == b);
            int last = -1;
            for (int t = 0; t < 4; ++t) {
                auto [p, q] = cells[t];
                if (p == q) {
                    w.var[t] = -1;
                    w.tr[t] = false;
                } else {
                    w.var[t] = var_at[p][q];
                    w.tr[t] = p > q;
                    last = std::max(last, w.var[t]);
                }
            }
            trig[last].push_back(w);
        }
    std::vector<std::vector<uint8_t>> out;
    std::vector<uint8_t> assign(nv, 0);
    std::function<void(int)> dfs = [&](int k) {
        if (k == nv) {
            out.push_back(assign);
            return;
        }
        for (uint8_t c : alphabet) {
            assign[static_cast<size_t>(k)] = c;
            bool ok = true;
            for (const auto& w : trig[k]) {
                size_t key = 0;
                for (int t = 0; t < 4; ++t) {
                    uint8_t v = 0;
                    if (w.var[t] >= 0) {
                        v = assign[static_cast<size_t>(w.var[t])];
                        if (w.tr[t]) v = transpose_code(v);
                    }
                    key |= static_cast<size_t>(v) << (4 * t);
                }
                int8_t r = window_table()[key];
                if (r < 0 || (w.diag && r != 0)) {
                    ok = false;
                    break;
                }
            }
            if (ok) dfs(k + 1);
        }
    };
    dfs(0);
    return out;
}

inline SmallGraph grid_from_assignment(int m, const std::vector<uint8_t>& assign) {
    BlockGrid b;
    b.m = m;
    int k = 0;
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < j; ++i, ++k) {
            b.set(i, j, assign[static_cast<size_t>(k)]);
            b.set(j, i, transpose_code(assign[static_cast<size_t>(k)]));
        }
    return b.to_graph();
}

} // namespace detail

// B_{R_2m} via Eq.(1) patching. Stores one representative per block-complement
// orbit (all off-diagonal blocks normalized to the lesser of code/complement,
// diagonal blocks zero); the raw set is the closure of the representatives
// under off-diagonal block complementation and full complementation.
struct PatchedSet {
    int m = 0;
    std::vector<SmallGraph> reduced; // sorted representatives, diag-zero
    std::unordered_set<u128, U128Hash> reduced_index;

    int offdiag() const { return m * (m - 1) / 2; }
    uint64_t raw_count() const { return static_cast<uint64_t>(reduced.size()) << (offdiag() + 1); }

    // Normalize a raw member to its representative; empty if b cannot be one
    // (wrong order / diagonal structure).
    std::optional<SmallGraph> normalize(const SmallGraph& b) const {
        if (b.n != 2 * m) return std::nullopt;
        SmallGraph g = b;
        if (g.has_edge(0, 1)) g = g.complement();
        BlockGrid grid = BlockGrid::from_graph(g);
        for (int i = 0; i < m; ++i)
            if (grid.at(i, i) != 0) return std::nullopt;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                uint8_t c = grid.at(i, j);
                uint8_t cc = complement_code(c);
                if (cc < c) {
                    grid.set(i, j, cc);
                    grid.set(j, i, transpose_code(cc));
                }
            }
        return grid.to_graph();
    }

    bool contains(const SmallGraph& b) const {
        auto rep = normalize(b);
        return rep && reduced_index.count(rep->pack());
    }

    std::vector<SmallGraph> materialize(uint64_t cap = 2'000'000) const {
        if (raw_count() > cap)
            throw capacity_error("patched set too large to materialize: " + std::to_string(raw_count()));
        std::vector<SmallGraph> out;
        out.reserve(raw_count());
        std::vector<std::pair<int, int>> off;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) off.emplace_back(i, j);
        for (const auto& rep : reduced) {
            const uint64_t combos = uint64_t(1) << off.size();
            for (uint64_t mask = 0; mask < combos; ++mask) {
                BlockGrid grid = BlockGrid::from_graph(rep);
                for (size_t t = 0; t < off.size(); ++t)
                    if (mask >> t & 1) {
                        auto [i, j] = off[t];
                        grid.set(i, j, complement_code(grid.at(i, j)));
                        grid.set(j, i, transpose_code(grid.at(i, j)));
                    }
                SmallGraph g = grid.to_graph();
                out.push_back(g);
                out.push_back(g.complement());
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

inline PatchedSet enumerate_B_patched(int m) {
    if (m < 2 || m > 8) throw capacity_error("enumerate_B_patched supports 2 <= m <= 8");
    static const std::vector<uint8_t> reduced_alphabet = {0, 3, 5, 6};
    PatchedSet out;
    out.m = m;
    for (const auto& assign : detail::patched_dfs(m, reduced_alphabet))
        out.reduced.push_back(detail::grid_from_assignment(m, assign));
    std::sort(out.reduced.begin(), out.reduced.end());
    for (const auto& g : out.reduced) out.reduced_index.insert(g.pack());
    return out;
}

// Direct diagonal-zero enumeration over the full even-ones alphabet plus full
// complement closure; cross-check oracle for the reduced route (m <= 4).
inline std::vector<SmallGraph> enumerate_B_patched_direct(int m) {
    if (m < 2 || m > 5) throw capacity_error("direct patched enumeration kept to m <= 5");
    static const std::vector<uint8_t> even_alphabet = {0, 3, 5, 6, 9, 10, 12, 15};
    std::vector<SmallGraph> out;
    for (const auto& assign : detail::patched_dfs(m, even_alphabet)) {
        SmallGraph g = detail::grid_from_assignment(m, assign);
        out.push_back(g);
        out.push_back(g.complement());
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Full admissible data for one family.
struct AdmissibleCatalog {
    SwitchingFamily family;
    VSet v;
    std::vector<SmallGraph> b_set; // sorted; materialized families only
    std::string method;            // "brute" or "patched"
};

// ---- exact conjugation helpers shared by the engines -----------------------

namespace detail {

// out2 = a2 * b2 / 2 when exact
inline bool scaled_product(const SmallMatrix& a2, const SmallMatrix& b2, SmallMatrix& out2) {
    SmallMatrix p = a2 * b2;
    for (int i = 0; i < p.rows(); ++i)
        for (int j = 0; j < p.cols(); ++j) {
            if (p(i, j) % 2) return false;
            p(i, j) /= 2;
        }
    out2 = std::move(p);
    return true;
}

// out = f2^T b f2 / 4 when that is an adjacency matrix
inline bool conjugate_adjacency(const SmallMatrix& f2, const SmallGraph& b, SmallGraph& out) {
    const int n = f2.rows();
    SmallMatrix bm = b.to_matrix();
    SmallMatrix c = f2.transpose() * bm * f2;
    SmallGraph g = SmallGraph::empty(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int64_t v = c(i, j);
            if (v % 4) return false;
            v /= 4;
            if (i == j) {
                if (v != 0) return false;
            } else if (v == 1) {
                if (j > i) g.set_edge(i, j);
            } else if (v != 0) {
                return false;
            }
        }
    out = g;
    return true;
}

// does s2/2 map every member of vs to a 01 vector
inline bool maps_V_to_01(const SmallMatrix& s2, const VSet& vs) {
    const int n = s2.rows();
    for (uint32_t v : vs.members) {
        for (int j = 0; j < n; ++j) {
            int64_t dot = 0;
            for (int i = 0; i < n; ++i)
                if (v >> i & 1) dot += s2(i, j);
            if (dot != 0 && dot != 2) return false;
        }
    }
    return true;
}

// T = R^T S as a permutation, if it is one
inline std::optional<std::vector<uint8_t>> quotient_permutation(const SmallMatrix& r2, const SmallMatrix& s2) {
    SmallMatrix t = r2.transpose() * s2;
    const int n = t.rows();
    std::vector<uint8_t> perm(static_cast<size_t>(n), 255);
    std::vector<char> used(static_cast<size_t>(n), 0);
    for (int j = 0; j < n; ++j) {
        int row = -1;
        for (int i = 0; i < n; ++i) {
            if (t(i, j) == 4) {
                if (row >= 0) return std::nullopt;
                row = i;
            } else if (t(i, j) != 0)
                return std::nullopt;
        }
        if (row < 0 || used[static_cast<size_t>(row)]) return std::nullopt;
        used[static_cast<size_t>(row)] = 1;
        perm[static_cast<size_t>(j)] = static_cast<uint8_t>(row);
    }
    return perm;
}

} // namespace detail

} // namespace l2switch
