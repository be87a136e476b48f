#pragma once

#include <numeric>
#include <vector>

#include "l2switch/matrix.hpp"

namespace l2switch {

// M = 2R with R regular orthogonal of level exactly 2:
//   M*M^T = 4I, every row sums to 2, at least one odd entry.
inline bool is_level2_regular_orthogonal(const SmallMatrix& m) {
    if (!m.square()) return false;
    const int n = m.rows();
    for (int i = 0; i < n; ++i)
        if (m.row_sum(i) != 2) return false;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            int64_t dot = 0;
            for (int k = 0; k < n; ++k) dot += m(i, k) * m(j, k);
            if (dot != (i == j ? 4 : 0)) return false;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m(i, j) % 2 != 0) return true;
    return false; // integral halves: level 1
}

// Holds 2R as an exact integer matrix.
struct ScaledOrthogonal {
    SmallMatrix m; // 2R

    int size() const { return m.rows(); }

    static ScaledOrthogonal from_matrix(SmallMatrix mat) {
        if (!is_level2_regular_orthogonal(mat))
            throw domain_error("matrix is not 2R for a level-2 regular orthogonal R");
        return ScaledOrthogonal{std::move(mat)};
    }
};

// Connected components of the nonzero pattern of m + m^T, as a partition of
// the row/column indices. Singleton components are trivial identity or
// permutation parts.
inline std::vector<std::vector<int>> indecomposable_blocks(const SmallMatrix& m) {
    if (!m.square()) throw dimension_error("indecomposable_blocks of non-square matrix");
    const int n = m.rows();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && (m(i, j) != 0 || m(j, i) != 0)) parent[find(i)] = find(j);
    std::vector<std::vector<int>> comp(n);
    for (int i = 0; i < n; ++i) comp[find(i)].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& c : comp)
        if (!c.empty()) out.push_back(std::move(c));
    return out;
}

inline int largest_block_size(const SmallMatrix& m) {
    int best = 0;
    for (const auto& c : indecomposable_blocks(m)) best = std::max<int>(best, static_cast<int>(c.size()));
    return best;
}

} // namespace l2switch
