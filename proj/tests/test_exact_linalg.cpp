#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "l2switch/catalog.hpp"
#include "l2switch/charpoly.hpp"
#include "l2switch/orthogonal.hpp"

using namespace l2switch;

namespace {

// Division-free Berkowitz characteristic polynomial; independent of the
// Bareiss + interpolation path under test.
IntPolynomial char_poly_berkowitz(const IntMatrix& a) {
    const int n = a.rows();
    std::vector<mpz_class> c = {1, -a(0, 0)}; // descending, monic
    for (int i = 1; i < n; ++i) {
        std::vector<mpz_class> s(static_cast<size_t>(i));
        std::vector<mpz_class> v(static_cast<size_t>(i));
        for (int k = 0; k < i; ++k) v[static_cast<size_t>(k)] = a(k, i);
        for (int k = 0; k < i; ++k) {
            mpz_class dot(0);
            for (int t = 0; t < i; ++t) dot += a(i, t) * v[static_cast<size_t>(t)];
            s[static_cast<size_t>(k)] = dot;
            if (k + 1 < i) {
                std::vector<mpz_class> w(static_cast<size_t>(i), 0);
                for (int r = 0; r < i; ++r)
                    for (int t = 0; t < i; ++t) w[static_cast<size_t>(r)] += a(r, t) * v[static_cast<size_t>(t)];
                v = w;
            }
        }
        // first column of the Toeplitz matrix: 1, -a(i,i), -s0, -s1, ...
        std::vector<mpz_class> d(static_cast<size_t>(i) + 2);
        d[0] = 1;
        d[1] = -a(i, i);
        for (int k = 0; k < i; ++k) d[static_cast<size_t>(k) + 2] = -s[static_cast<size_t>(k)];
        std::vector<mpz_class> nc(c.size() + 1, 0);
        for (size_t j = 0; j < nc.size(); ++j)
            for (size_t k = 0; k < c.size(); ++k)
                if (j >= k && j - k < d.size()) nc[j] += d[j - k] * c[k];
        c = std::move(nc);
    }
    std::vector<mpz_class> ascending(c.rbegin(), c.rend());
    return IntPolynomial(ascending);
}

IntMatrix random01(int n, std::mt19937_64& rng, bool symmetric_zero_diag) {
    IntMatrix a(n, n);
    if (symmetric_zero_diag) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                long b = static_cast<long>(rng() & 1);
                a(i, j) = b;
                a(j, i) = b;
            }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = static_cast<long>(rng() & 1);
    }
    return a;
}

} // namespace

TEST_CASE("char_poly on fixed matrices") {
    IntMatrix zero(2, 2);
    CHECK(char_poly(zero) == IntPolynomial({0, 0, 1})); // x^2

    // J_3 - I: spectrum {2, -1, -1}, x^3 - 3x - 2
    IntMatrix k3(3, 3, 1);
    for (int i = 0; i < 3; ++i) k3(i, i) = 0;
    CHECK(char_poly(k3) == IntPolynomial({-2, -3, 0, 1}));

    // 4-cycle: x^4 - 4x^2
    IntMatrix c4(4, 4);
    for (int i = 0; i < 4; ++i) {
        c4(i, (i + 1) % 4) = 1;
        c4((i + 1) % 4, i) = 1;
    }
    CHECK(char_poly(c4) == IntPolynomial({0, 0, -4, 0, 1}));
    CHECK(char_poly(c4).to_string() == "x^4 - 4*x^2");

    IntMatrix rect(2, 3);
    CHECK_THROWS_AS(char_poly(rect), dimension_error);
}

TEST_CASE("char_poly is monic of full degree") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + static_cast<int>(rng() % 9);
        IntPolynomial p = char_poly(random01(n, rng, false));
        REQUIRE(p.degree() == n);
        CHECK(p.coefficient(n) == 1);
    }
}

TEST_CASE("char_poly invariant under conjugation by permutations") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng() % 11); // n <= 12
        IntMatrix a = random01(n, rng, true);
        std::vector<int> p(static_cast<size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        for (int i = n - 1; i > 0; --i) std::swap(p[static_cast<size_t>(i)], p[rng() % (static_cast<size_t>(i) + 1)]);
        IntMatrix b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b(p[static_cast<size_t>(i)], p[static_cast<size_t>(j)]) = a(i, j);
        REQUIRE(char_poly(a) == char_poly(b));
    }
}

TEST_CASE("char_poly agrees with division-free Berkowitz route") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(rng() % 10); // n <= 10
        IntMatrix a = random01(n, rng, false);
        REQUIRE(char_poly(a) == char_poly_berkowitz(a));
    }
}

TEST_CASE("det_bareiss basics") {
    IntMatrix m(2, 2);
    m(0, 0) = 3;
    m(0, 1) = 7;
    m(1, 0) = 1;
    m(1, 1) = 5;
    CHECK(det_bareiss(m) == 8);
    IntMatrix sing(3, 3, 1);
    CHECK(det_bareiss(sing) == 0);
}

TEST_CASE("is_level2_regular_orthogonal") {
    CHECK(is_level2_regular_orthogonal(build_scaled(SwitchingFamily::gm4())));
    CHECK(is_level2_regular_orthogonal(build_scaled(SwitchingFamily::fano())));
    CHECK(is_level2_regular_orthogonal(build_scaled(SwitchingFamily::cube())));
    CHECK_FALSE(is_level2_regular_orthogonal(SmallMatrix::identity(4, 2))); // level 1
    SmallMatrix bad(3, 3, 1);
    CHECK_FALSE(is_level2_regular_orthogonal(bad));
    SmallMatrix rect(2, 3, 1);
    CHECK_FALSE(is_level2_regular_orthogonal(rect));
}

TEST_CASE("indecomposable_blocks") {
    // circulant R_8: one block of size 8
    auto r8 = build_scaled(SwitchingFamily::circulant(4));
    auto blocks = indecomposable_blocks(r8);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].size() == 8);

    // diag(2R_4, 2I_2): block of size 4 plus two singletons
    auto composed = compose_block_diagonal(6, {{build_scaled(SwitchingFamily::gm4()), {0, 1, 2, 3}}});
    auto b2 = indecomposable_blocks(composed);
    std::vector<size_t> sizes;
    for (auto& c : b2) sizes.push_back(c.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<size_t>{1, 1, 4});

    // first factor of the R_8 example: two blocks of size 4
    auto r4 = build_scaled(SwitchingFamily::circulant(2));
    auto f = compose_block_diagonal(8, {{r4, {0, 1, 2, 3}}, {r4, {4, 5, 6, 7}}});
    auto b3 = indecomposable_blocks(f);
    REQUIRE(b3.size() == 2);
    CHECK(b3[0].size() == 4);
    CHECK(b3[1].size() == 4);
    CHECK(largest_block_size(f) == 4);
}

TEST_CASE("catalog matrices satisfy M M^T = M^T M = 4I") {
    std::vector<SwitchingFamily> fams = {SwitchingFamily::gm4(), SwitchingFamily::fano(), SwitchingFamily::cube()};
    for (int m = 2; m <= 8; ++m) fams.push_back(SwitchingFamily::circulant(m));
    for (const auto& f : fams) {
        auto M = build_scaled(f);
        auto Mt = M.transpose();
        CHECK(M * Mt == SmallMatrix::identity(f.size(), 4));
        CHECK(Mt * M == SmallMatrix::identity(f.size(), 4));
    }
}
