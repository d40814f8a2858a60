#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "qcbound/errors.hpp"
#include "qcbound/graph.hpp"

using namespace qcb;

TEST_CASE("basic construction and adjacency") {
    Graph g(5);
    CHECK(g.vertex_count() == 5);
    CHECK(g.edge_count() == 0);
    g.add_edge(0, 1);
    g.add_edge(4, 0);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 0));
    CHECK(g.adjacent(0, 4));
    CHECK_FALSE(g.adjacent(1, 2));
    CHECK(g.degree(0) == 2);
    CHECK(g.degree(2) == 0);
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {0, 4}});
    CHECK(g.neighbors(0) == std::vector<int>{1, 4});
}

TEST_CASE("insertion rejects loops, duplicates and out-of-range") {
    Graph g(3);
    g.add_edge(0, 1);
    CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(-1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Graph(-1), std::invalid_argument);
}

TEST_CASE("complement and permutation") {
    const Graph c5 = named_graph("pentagon");
    const Graph comp = c5.complement();
    CHECK(comp.edge_count() == 5);
    CHECK(comp.is_regular());
    // The five-cycle is self-complementary under the relabeling v -> 2v mod 5.
    const Graph relabeled = comp.permuted({0, 2, 4, 1, 3});
    CHECK(relabeled == c5);
    // Double complement restores the graph.
    CHECK(comp.complement() == c5);
}

TEST_CASE("degree statistics") {
    const Graph petersen = named_graph("petersen");
    CHECK(petersen.min_degree() == 3);
    CHECK(petersen.max_degree() == 3);
    CHECK(petersen.is_regular());
    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK(path.min_degree() == 1);
    CHECK(path.max_degree() == 2);
    CHECK_FALSE(path.is_regular());
}

TEST_CASE("file format round trip") {
    const Graph g = named_graph("petersen");
    std::stringstream s;
    save_graph(g, s);
    const Graph back = load_graph(s);
    CHECK(back == g);
}

TEST_CASE("parser reports malformed input with line numbers") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return load_graph(in);
    };
    CHECK_THROWS_AS(parse("2 3\n"), ParseError);            // missing n= header
    CHECK_THROWS_AS(parse("n=2\n0 5\n"), ParseError);       // vertex out of range
    CHECK_THROWS_AS(parse("n=3\n0 1\n0 1\n"), ParseError);  // duplicate edge
    CHECK_THROWS_AS(parse("n=3\n0\n"), ParseError);         // missing endpoint
    CHECK_THROWS_AS(parse("n=-1\n"), ParseError);           // bad order
    // comments and blank lines are fine
    const Graph ok = parse("# triangle\nn=3\n\n0 1\n1 2\n0 2\n");
    CHECK(ok.edge_count() == 3);
}

TEST_CASE("named fixtures have the expected shapes") {
    CHECK(named_graph("pentagon").vertex_count() == 5);
    CHECK(named_graph("petersen").edge_count() == 15);
    CHECK(named_graph("petersen-complement").edge_count() == 30);
    CHECK(named_graph("clebsch").edge_count() == 40);
    CHECK(named_graph("shrikhande").edge_count() == 48);
    CHECK(named_graph("shrikhande-complement").edge_count() == 72);
    CHECK(named_graph("perkel").edge_count() == 171);
    CHECK(named_graph("perkel-complement").edge_count() == 1425);
    CHECK(named_graph("complete-6").edge_count() == 15);
    CHECK(named_graph("empty-4").edge_count() == 0);
    CHECK(named_graph("cycle-7").edge_count() == 7);
    CHECK(named_graph("shrikhande_complement").edge_count() == 72); // underscores accepted
    CHECK_THROWS_AS(named_graph("no-such-graph"), std::invalid_argument);
    CHECK(named_graph("complete-0").vertex_count() == 0);
    CHECK_THROWS_AS(named_graph("cycle-2"), std::invalid_argument);
    CHECK(named_graph_list().size() >= 8);
}

TEST_CASE("the 57-vertex host passes its structural validation") {
    const PerkelCheck check = validate_perkel(named_graph("perkel"));
    CHECK(check.ok);
    CHECK(check.failures.empty());
}

TEST_CASE("structural validation catches a tampered graph") {
    Graph wrong(57);
    // 6-regular circulant on 57 vertices: right order and degree, wrong graph.
    for (int v = 0; v < 57; ++v)
        for (int d : {1, 2, 3}) wrong.add_edge(std::min(v, (v + d) % 57) == v ? v : (v + d) % 57,
                                               std::max(v, (v + d) % 57) == v ? v : (v + d) % 57);
    const PerkelCheck check = validate_perkel(wrong);
    CHECK_FALSE(check.ok);
    CHECK_FALSE(check.failures.empty());
}
