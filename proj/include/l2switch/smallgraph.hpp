#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "l2switch/matrix.hpp"

namespace l2switch {

using u128 = unsigned __int128;

// Compact simple graph on up to 16 vertices; bit j of adj[i] is the edge {i,j}.
// The upper-triangle bitstring reads pairs (0,1),(0,2),...,(0,n-1),(1,2),...
// with the first pair most significant, so numeric order on pack() is
// lexicographic order on the bitstring.
struct SmallGraph {
    uint8_t n = 0;
    std::array<uint16_t, 16> adj{};

    static SmallGraph empty(int n) {
        SmallGraph g;
        g.n = static_cast<uint8_t>(n);
        return g;
    }

    bool has_edge(int i, int j) const { return adj[i] >> j & 1; }
    void set_edge(int i, int j, bool v = true) {
        if (v) {
            adj[i] |= uint16_t(1u << j);
            adj[j] |= uint16_t(1u << i);
        } else {
            adj[i] &= uint16_t(~(1u << j));
            adj[j] &= uint16_t(~(1u << i));
        }
    }
    void toggle_edge(int i, int j) {
        adj[i] ^= uint16_t(1u << j);
        adj[j] ^= uint16_t(1u << i);
    }
    int degree(int i) const { return __builtin_popcount(adj[i]); }
    int edge_count() const {
        int s = 0;
        for (int i = 0; i < n; ++i) s += degree(i);
        return s / 2;
    }

    int pair_count() const { return n * (n - 1) / 2; }

    u128 pack() const {
        u128 x = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) x = (x << 1) | (has_edge(i, j) ? 1 : 0);
        return x;
    }
    static SmallGraph unpack(int n, u128 x) {
        SmallGraph g = empty(n);
        int bits = n * (n - 1) / 2;
        int k = bits - 1;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, --k)
                if (x >> k & 1) g.set_edge(i, j);
        return g;
    }

    bool operator==(const SmallGraph& o) const { return n == o.n && pack() == o.pack(); }
    bool operator<(const SmallGraph& o) const { return pack() < o.pack(); }

    SmallGraph complement() const {
        SmallGraph g = empty(n);
        uint16_t all = static_cast<uint16_t>((1u << n) - 1);
        for (int i = 0; i < n; ++i) g.adj[i] = static_cast<uint16_t>((~adj[i] & all) & ~(1u << i));
        return g;
    }

    // relabelled graph: vertex i becomes p[i]
    template <typename Perm>
    SmallGraph permuted(const Perm& p) const {
        SmallGraph g = empty(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (has_edge(i, j)) g.set_edge(p[i], p[j]);
        return g;
    }

    SmallMatrix to_matrix() const {
        SmallMatrix m(n, n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = has_edge(i, j) ? 1 : 0;
        return m;
    }
    static SmallGraph from_matrix(const SmallMatrix& m) {
        if (!m.square() || m.rows() > 16) throw dimension_error("SmallGraph needs square matrix, n <= 16");
        SmallGraph g = empty(m.rows());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = i + 1; j < m.cols(); ++j) {
                if (m(i, j) != m(j, i) || (m(i, j) != 0 && m(i, j) != 1))
                    throw domain_error("matrix is not a 01 adjacency matrix");
                if (m(i, j) == 1) g.set_edge(i, j);
            }
        for (int i = 0; i < m.rows(); ++i)
            if (m(i, i) != 0) throw domain_error("adjacency matrix has nonzero diagonal");
        return g;
    }

    // hex string of the upper-triangle bitstring, high nibble first
    std::string to_hex() const {
        int bits = pair_count();
        int nibbles = (bits + 3) / 4;
        u128 x = pack() << (nibbles * 4 - bits);
        std::string s(nibbles, '0');
        for (int k = nibbles - 1; k >= 0; --k) {
            s[k] = "0123456789abcdef"[static_cast<unsigned>(x & 0xf)];
            x >>= 4;
        }
        return s;
    }
    static SmallGraph from_hex(int n, const std::string& hex) {
        int bits = n * (n - 1) / 2;
        int nibbles = (bits + 3) / 4;
        if (static_cast<int>(hex.size()) != nibbles) throw parse_error("hex bitstring length mismatch");
        u128 x = 0;
        for (char c : hex) {
            int v;
            if (c >= '0' && c <= '9') v = c - '0';
            else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
            else throw parse_error("bad hex digit");
            x = (x << 4) | static_cast<unsigned>(v);
        }
        return unpack(n, x >> (nibbles * 4 - bits));
    }
};

struct U128Hash {
    size_t operator()(u128 x) const {
        uint64_t lo = static_cast<uint64_t>(x), hi = static_cast<uint64_t>(x >> 64);
        uint64_t h = lo * 0x9e3779b97f4a7c15ULL ^ (hi + 0x9e3779b97f4a7c15ULL + (lo << 6));
        h ^= h >> 29;
        h *= 0xbf58476d1ce4e5b9ULL;
        h ^= h >> 32;
        return static_cast<size_t>(h);
    }
};

} // namespace l2switch
