#include <catch2/catch_amalgamated.hpp>

#include "l2switch/kneser.hpp"

using namespace l2switch;

TEST_CASE("subspace enumeration") {
    CHECK(all_subspaces(4, 2).size() == 35);
    CHECK(all_subspaces(3, 2).size() == 7);
    CHECK(all_subspaces(4, 1).size() == 15);
    CHECK(all_subspaces(4, 0).size() == 1);
    for (const auto& s : all_subspaces(4, 2)) {
        CHECK(s.dim() == 2);
        CHECK(__builtin_popcountll(s.members) == 4);
        CHECK(s.contains(0));
    }
}

TEST_CASE("K_2(4,2): 35 vertices, 16-regular (disjoint line pairs oracle)") {
    // oracle: count disjoint pairs of 2-subspaces directly
    auto subs = all_subspaces(4, 2);
    size_t pairs = 0;
    std::vector<int> per_vertex(subs.size(), 0);
    for (size_t a = 0; a < subs.size(); ++a)
        for (size_t b = a + 1; b < subs.size(); ++b)
            if ((subs[a].members & subs[b].members) == 1) {
                ++pairs;
                ++per_vertex[a];
                ++per_vertex[b];
            }
    Graph g = gen_kneser2(4, 2);
    REQUIRE(g.n == 35);
    CHECK(static_cast<size_t>(g.edge_count()) == pairs);
    for (int v = 0; v < g.n; ++v) CHECK(g.degree(v) == per_vertex[static_cast<size_t>(v)]);
    // regular; degree: 2-subspaces have 2^{2*2} = 16 complements
    for (int v = 0; v < g.n; ++v) CHECK(g.degree(v) == 16);
}

TEST_CASE("K_2(3,2) is empty") {
    Graph g = gen_kneser2(3, 2);
    CHECK(g.n == 7);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("parameter domain errors") {
    CHECK_THROWS_AS(gen_kneser2(4, 1), domain_error);
    CHECK_THROWS_AS(gen_kneser2(7, 2), capacity_error);
    CHECK_THROWS_AS(find_kneser_fano_instance(3, 2), domain_error);
}

TEST_CASE("Fano switching inside K_2(4,2) yields a cospectral non-isomorphic mate") {
    auto inst = find_kneser_fano_instance(4, 2);
    REQUIRE(inst.host.n == 35);
    // the switching set is a coclique of lines inside one 3-space
    CHECK(inst.b == SmallGraph::empty(7));
    Graph mate = apply(inst);
    CHECK(verify_R_cospectral(inst.host, mate));
    CHECK_FALSE(is_isomorphic(inst.host, mate));
}
