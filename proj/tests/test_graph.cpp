#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "l2switch/graph.hpp"

using namespace l2switch;

TEST_CASE("graph6 round trip on random graphs") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 200; ++t) {
        int n = 1 + static_cast<int>(rng() % 40);
        Graph g = Graph::empty(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() & 1) g.set_edge(i, j);
        Graph h = from_graph6(to_graph6(g));
        REQUIRE(g == h);
    }
}

TEST_CASE("graph6 reference encodings") {
    // reference values cross-checked against nauty-compatible encoders
    Graph k3 = Graph::empty(3);
    k3.set_edge(0, 1);
    k3.set_edge(0, 2);
    k3.set_edge(1, 2);
    CHECK(to_graph6(k3) == "Bw");
    Graph c5 = Graph::empty(5);
    for (int i = 0; i < 5; ++i) c5.set_edge(i, (i + 1) % 5);
    CHECK(to_graph6(c5) == "Dhc");
    // the formats.txt example: 5 vertices, edges 0-2, 0-4, 1-3, 3-4
    Graph ex = Graph::empty(5);
    ex.set_edge(0, 2);
    ex.set_edge(0, 4);
    ex.set_edge(1, 3);
    ex.set_edge(3, 4);
    CHECK(to_graph6(ex) == "DQc");
    // empty graph on one vertex
    CHECK(to_graph6(Graph::empty(1)) == "@");
    // header and newline tolerated on input
    CHECK(from_graph6(">>graph6<<Bw\n") == k3);
    CHECK_THROWS_AS(from_graph6(":Bw"), parse_error);
    CHECK_THROWS_AS(from_graph6("B"), parse_error);
}

TEST_CASE("edge list round trip") {
    Graph g = Graph::empty(6);
    g.set_edge(0, 3);
    g.set_edge(2, 5);
    g.set_edge(4, 5);
    std::istringstream in(to_edge_list(g));
    CHECK(from_edge_list(in) == g);
    std::istringstream bad("n 3\n0 3\n");
    CHECK_THROWS_AS(from_edge_list(bad), parse_error);
}

TEST_CASE("graph basics") {
    Graph g = Graph::empty(4);
    g.set_edge(0, 1);
    CHECK(g.degree(0) == 1);
    CHECK(g.complement().degree(0) == 2);
    CHECK(g.complement().complement() == g);
    CHECK_THROWS_AS(g.set_edge(1, 1), domain_error);
    CHECK_THROWS_AS(Graph::empty(65), capacity_error);
    std::vector<int> perm = {3, 2, 1, 0};
    Graph h = g.permuted(perm);
    CHECK(h.has_edge(3, 2));
    CHECK(h.edge_count() == 1);
}
