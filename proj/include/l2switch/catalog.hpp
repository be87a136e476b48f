#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "l2switch/orthogonal.hpp"

namespace l2switch {

enum class FamilyTag { gm4, circulant, fano, cube };

// One of the indecomposable level-2 families: GM4, Circulant(m>=2) of order
// 2m, Fano (order 7), Cube (order 8).
struct SwitchingFamily {
    FamilyTag tag = FamilyTag::gm4;
    int m = 0; // pair count, circulant only

    static SwitchingFamily gm4() { return {FamilyTag::gm4, 2}; }
    static SwitchingFamily circulant(int m) {
        if (m < 2) throw domain_error("circulant family needs m >= 2");
        return {FamilyTag::circulant, m};
    }
    static SwitchingFamily fano() { return {FamilyTag::fano, 0}; }
    static SwitchingFamily cube() { return {FamilyTag::cube, 0}; }

    int size() const {
        switch (tag) {
            case FamilyTag::gm4: return 4;
            case FamilyTag::circulant: return 2 * m;
            case FamilyTag::fano: return 7;
            case FamilyTag::cube: return 8;
        }
        return 0;
    }

    // Pair structure for circulant-type families; gm4 is treated as two pairs
    // where the pair structure is immaterial (R_4 is permutation invariant).
    bool paired() const { return tag == FamilyTag::gm4 || tag == FamilyTag::circulant; }
    int pairs() const { return paired() ? size() / 2 : 0; }

    std::string name() const {
        switch (tag) {
            case FamilyTag::gm4: return "gm4";
            case FamilyTag::circulant: return "circulant:" + std::to_string(m);
            case FamilyTag::fano: return "fano";
            case FamilyTag::cube: return "cube";
        }
        return "?";
    }

    bool operator==(const SwitchingFamily& o) const { return tag == o.tag && (tag != FamilyTag::circulant || m == o.m); }

    static std::optional<SwitchingFamily> parse(const std::string& s) {
        if (s == "gm4") return gm4();
        if (s == "fano") return fano();
        if (s == "cube") return cube();
        if (s.rfind("circulant:", 0) == 0) {
            try {
                int m = std::stoi(s.substr(10));
                if (m < 2) return std::nullopt;
                return circulant(m);
            } catch (...) { return std::nullopt; }
        }
        return std::nullopt;
    }
};

namespace detail {
inline void put_block(SmallMatrix& M, int bi, int bj, int64_t a, int64_t b, int64_t c, int64_t d) {
    M(2 * bi, 2 * bj) = a;
    M(2 * bi, 2 * bj + 1) = b;
    M(2 * bi + 1, 2 * bj) = c;
    M(2 * bi + 1, 2 * bj + 1) = d;
}
} // namespace detail

// 2R for the family. GM4: J - 2I. Circulant(m): blockcirculant(J,O,...,O,Y)
// with 2x2 blocks, Y = 2I - J. Fano: circulant(-1,1,1,0,1,0,0).
// Cube: the sporadic 8x8 matrix in 2x2 blocks of I and Z = J - I.
inline SmallMatrix build_scaled(const SwitchingFamily& f) {
    switch (f.tag) {
        case FamilyTag::gm4: {
            SmallMatrix M(4, 4, 1);
            for (int i = 0; i < 4; ++i) M(i, i) = -1;
            return M;
        }
        case FamilyTag::circulant: {
            const int m = f.m;
            SmallMatrix M(2 * m, 2 * m, 0);
            for (int i = 0; i < m; ++i) {
                detail::put_block(M, i, i, 1, 1, 1, 1);                   // J
                detail::put_block(M, i, (i + m - 1) % m, 1, -1, -1, 1);   // Y
            }
            return M;
        }
        case FamilyTag::fano: {
            static const int row[7] = {-1, 1, 1, 0, 1, 0, 0};
            SmallMatrix M(7, 7);
            for (int i = 0; i < 7; ++i)
                for (int j = 0; j < 7; ++j) M(i, j) = row[(j - i + 7) % 7];
            return M;
        }
        case FamilyTag::cube: {
            // block grid over {I, Z, -I, -Z}
            static const int g[4][4] = {// 0:I 1:Z 2:-I 3:-Z
                                        {2, 0, 0, 0},
                                        {0, 3, 0, 1},
                                        {0, 1, 3, 0},
                                        {0, 0, 1, 3}};
            SmallMatrix M(8, 8, 0);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    switch (g[i][j]) {
                        case 0: detail::put_block(M, i, j, 1, 0, 0, 1); break;
                        case 1: detail::put_block(M, i, j, 0, 1, 1, 0); break;
                        case 2: detail::put_block(M, i, j, -1, 0, 0, -1); break;
                        case 3: detail::put_block(M, i, j, 0, -1, -1, 0); break;
                    }
                }
            return M;
        }
    }
    throw domain_error("unknown family");
}

inline ScaledOrthogonal build(const SwitchingFamily& f) {
    return ScaledOrthogonal::from_matrix(build_scaled(f));
}

// A scaled (by 2) block placed on an ordered index tuple; identity elsewhere.
struct BlockPlacement {
    SmallMatrix block2;      // 2R_block, or 2I for explicit identity parts
    std::vector<int> at;     // ordered indices, size == block2.rows()
};

// Permuted block-diagonal matrix, scaled by 2. Unplaced indices get 2I.
inline SmallMatrix compose_block_diagonal(int n, const std::vector<BlockPlacement>& blocks) {
    SmallMatrix M(n, n, 0);
    std::vector<char> used(n, 0);
    for (const auto& b : blocks) {
        if (!b.block2.square() || static_cast<int>(b.at.size()) != b.block2.rows())
            throw placement_error("block size does not match placement tuple");
        for (int idx : b.at) {
            if (idx < 0 || idx >= n) throw placement_error("placement index out of range");
            if (used[idx]) throw placement_error("overlapping placements");
            used[idx] = 1;
        }
        for (size_t a = 0; a < b.at.size(); ++a)
            for (size_t c = 0; c < b.at.size(); ++c) M(b.at[a], b.at[c]) = b.block2(static_cast<int>(a), static_cast<int>(c));
    }
    for (int i = 0; i < n; ++i)
        if (!used[i]) M(i, i) = 2;
    return M;
}

// ---- finite geometries behind the Fano and Cube methods ----

// Points 0..6 (paper labels v1..v7); lines l_i = {i, i+1, i+3}, ovals
// O_i = {i+2, i+4, i+5}, indices mod 7.
struct FanoGeometry {
    std::array<std::array<int, 3>, 7> lines;
    std::array<std::array<int, 3>, 7> ovals;

    uint32_t line_mask(int i) const { return mask(lines[i]); }
    uint32_t oval_mask(int i) const { return mask(ovals[i]); }
    static uint32_t mask(const std::array<int, 3>& s) {
        return (1u << s[0]) | (1u << s[1]) | (1u << s[2]);
    }
};

inline FanoGeometry fano_geometry() {
    FanoGeometry g;
    for (int i = 0; i < 7; ++i) {
        g.lines[i] = {i % 7, (i + 1) % 7, (i + 3) % 7};
        g.ovals[i] = {(i + 2) % 7, (i + 4) % 7, (i + 5) % 7};
    }
    return g;
}

// Vertices 0..7 (paper labels v1..v8) on AG(3,2) with the labelled-cube
// coordinates; 14 affine planes = the 4-subsets with zero coordinate sum.
struct CubeGeometry {
    std::array<uint8_t, 8> coords;             // 3-bit coordinate per vertex
    std::vector<uint32_t> planes;              // 14 masks over vertices
    std::array<int, 8> rotation;               // pi = (12)(385476), 0-indexed

    bool is_plane(uint32_t mask) const {
        for (uint32_t p : planes)
            if (p == mask) return true;
        return false;
    }
};

inline CubeGeometry cube_geometry() {
    CubeGeometry g;
    // labels 1..8 at coords 000,111,101,010,110,001,011,100
    static const uint8_t co[8] = {0b000, 0b111, 0b101, 0b010, 0b110, 0b001, 0b011, 0b100};
    for (int i = 0; i < 8; ++i) g.coords[i] = co[i];
    for (uint32_t mask = 0; mask < 256; ++mask) {
        if (__builtin_popcount(mask) != 4) continue;
        int x = 0;
        bool plane = true;
        std::vector<int> vs;
        for (int i = 0; i < 8; ++i)
            if (mask >> i & 1) { x ^= co[i]; vs.push_back(i); }
        if (x != 0) continue;
        // 4 distinct vectors with zero sum in F_2^3 always form an affine plane
        (void)plane;
        g.planes.push_back(mask);
    }
    // (12)(385476) on labels 1..8
    static const int pi1[9] = {0, 2, 1, 8, 7, 4, 3, 6, 5};
    for (int l = 1; l <= 8; ++l) g.rotation[l - 1] = pi1[l] - 1;
    return g;
}

} // namespace l2switch
