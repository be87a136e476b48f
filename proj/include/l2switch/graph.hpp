#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "l2switch/smallgraph.hpp"

namespace l2switch {

// Simple loopless graph on up to 64 vertices, one uint64 adjacency row per
// vertex.
struct Graph {
    int n = 0;
    std::vector<uint64_t> rows;

    static Graph empty(int n) {
        if (n < 0 || n > 64) throw capacity_error("host graphs support up to 64 vertices");
        Graph g;
        g.n = n;
        g.rows.assign(static_cast<size_t>(n), 0);
        return g;
    }

    bool has_edge(int i, int j) const { return rows[static_cast<size_t>(i)] >> j & 1; }
    void set_edge(int i, int j, bool v = true) {
        if (i == j) throw domain_error("loops are not allowed");
        if (v) {
            rows[static_cast<size_t>(i)] |= uint64_t(1) << j;
            rows[static_cast<size_t>(j)] |= uint64_t(1) << i;
        } else {
            rows[static_cast<size_t>(i)] &= ~(uint64_t(1) << j);
            rows[static_cast<size_t>(j)] &= ~(uint64_t(1) << i);
        }
    }
    void toggle_edge(int i, int j) {
        rows[static_cast<size_t>(i)] ^= uint64_t(1) << j;
        rows[static_cast<size_t>(j)] ^= uint64_t(1) << i;
    }
    int degree(int i) const { return __builtin_popcountll(rows[static_cast<size_t>(i)]); }
    int edge_count() const {
        int s = 0;
        for (int i = 0; i < n; ++i) s += degree(i);
        return s / 2;
    }
    uint64_t vertex_mask() const { return n == 64 ? ~uint64_t(0) : (uint64_t(1) << n) - 1; }

    bool operator==(const Graph& o) const { return n == o.n && rows == o.rows; }

    Graph complement() const {
        Graph g = empty(n);
        for (int i = 0; i < n; ++i)
            g.rows[static_cast<size_t>(i)] = (~rows[static_cast<size_t>(i)] & vertex_mask()) & ~(uint64_t(1) << i);
        return g;
    }

    template <typename Perm>
    Graph permuted(const Perm& p) const {
        Graph g = empty(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (has_edge(i, j)) g.set_edge(static_cast<int>(p[static_cast<size_t>(i)]), static_cast<int>(p[static_cast<size_t>(j)]));
        return g;
    }

    Graph induced(const std::vector<int>& verts) const {
        Graph g = empty(static_cast<int>(verts.size()));
        for (size_t a = 0; a < verts.size(); ++a)
            for (size_t b = a + 1; b < verts.size(); ++b)
                if (has_edge(verts[a], verts[b])) g.set_edge(static_cast<int>(a), static_cast<int>(b));
        return g;
    }

    SmallMatrix to_matrix() const {
        SmallMatrix m(n, n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = has_edge(i, j) ? 1 : 0;
        return m;
    }
    static Graph from_matrix(const SmallMatrix& m) {
        if (!m.square()) throw dimension_error("adjacency matrix must be square");
        Graph g = empty(m.rows());
        for (int i = 0; i < m.rows(); ++i) {
            if (m(i, i) != 0) throw domain_error("adjacency matrix has a loop");
            for (int j = i + 1; j < m.cols(); ++j) {
                if (m(i, j) != m(j, i) || (m(i, j) != 0 && m(i, j) != 1))
                    throw domain_error("matrix is not a 01 adjacency matrix");
                if (m(i, j) == 1) g.set_edge(i, j);
            }
        }
        return g;
    }

    SmallGraph to_small() const {
        if (n > 16) throw capacity_error("graph too large for SmallGraph");
        SmallGraph g = SmallGraph::empty(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (has_edge(i, j)) g.set_edge(i, j);
        return g;
    }
    static Graph from_small(const SmallGraph& s) {
        Graph g = empty(s.n);
        for (int i = 0; i < s.n; ++i)
            for (int j = i + 1; j < s.n; ++j)
                if (s.has_edge(i, j)) g.set_edge(i, j);
        return g;
    }
};

// ---- graph6 ------------------------------------------------------------------

// Standard graph6: N(n) then the upper triangle column by column,
// x(0,1) x(0,2) x(1,2) x(0,3) ..., packed six bits per byte, high bit first,
// each byte offset by 63.
inline std::string to_graph6(const Graph& g) {
    std::string s;
    if (g.n <= 62) {
        s.push_back(static_cast<char>(g.n + 63));
    } else {
        s.push_back(126);
        s.push_back(static_cast<char>(((g.n >> 12) & 0x3f) + 63));
        s.push_back(static_cast<char>(((g.n >> 6) & 0x3f) + 63));
        s.push_back(static_cast<char>((g.n & 0x3f) + 63));
    }
    int bit = 5;
    int acc = 0;
    for (int j = 1; j < g.n; ++j)
        for (int i = 0; i < j; ++i) {
            if (g.has_edge(i, j)) acc |= 1 << bit;
            if (--bit < 0) {
                s.push_back(static_cast<char>(acc + 63));
                acc = 0;
                bit = 5;
            }
        }
    if (g.n >= 2 && bit != 5) s.push_back(static_cast<char>(acc + 63));
    return s;
}

inline Graph from_graph6(const std::string& line_in) {
    std::string line = line_in;
    if (line.rfind(">>graph6<<", 0) == 0) line = line.substr(10);
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    if (line.empty()) throw parse_error("empty graph6 line");
    if (line[0] == ':' || line[0] == '&') throw parse_error("sparse6/digraph6 not supported");
    size_t pos = 0;
    auto next = [&]() -> int {
        if (pos >= line.size()) throw parse_error("graph6 line truncated");
        int c = static_cast<unsigned char>(line[pos++]);
        if (c < 63 || c > 126) throw parse_error("graph6 byte out of range");
        return c - 63;
    };
    int n;
    int c0 = next();
    if (c0 < 63) {
        n = c0;
    } else {
        int a = next(), b = next(), c = next();
        n = (a << 12) | (b << 6) | c;
    }
    if (n > 64) throw capacity_error("graph6 order " + std::to_string(n) + " beyond the 64-vertex limit");
    Graph g = Graph::empty(n);
    int bit = -1;
    int acc = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            if (bit < 0) {
                acc = next();
                bit = 5;
            }
            if (acc >> bit & 1) g.set_edge(i, j);
            --bit;
        }
    return g;
}

// ---- edge list text ------------------------------------------------------------

// "n <order>" then one "u v" pair per line; blank lines and '#' comments skipped.
inline std::string to_edge_list(const Graph& g) {
    std::string s = "n " + std::to_string(g.n) + "\n";
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.has_edge(i, j)) s += std::to_string(i) + " " + std::to_string(j) + "\n";
    return s;
}

inline Graph from_edge_list(std::istream& in) {
    std::string tok;
    if (!(in >> tok) || tok != "n") throw parse_error("edge list must start with 'n <order>'");
    int n;
    if (!(in >> n)) throw parse_error("bad order in edge list");
    Graph g = Graph::empty(n);
    int u, v;
    while (in >> u >> v) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw parse_error("edge endpoint out of range");
        if (u == v) throw parse_error("loops are not allowed");
        g.set_edge(u, v);
    }
    return g;
}

} // namespace l2switch
