#include <doctest.h>

#include <sstream>

#include "mwis/errors.hpp"
#include "mwis/generators.hpp"
#include "mwis/graph.hpp"
#include "mwis/graph_io.hpp"
#include "mwis/oracles.hpp"

using namespace mwis;

namespace {

Graph triangle() {
    Graph g(3);
    g.set_weight(0, Rational(1));
    g.set_weight(1, Rational(1));
    g.set_weight(2, Rational(1));
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    return g;
}

} // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(rational_str(parse_rational("3/4")) == "3/4");
    CHECK(rational_str(parse_rational("6/4")) == "3/2"); // canonicalized
    CHECK(rational_str(parse_rational("7")) == "7");
    CHECK(parse_rational("1/3") + parse_rational("2/3") == Rational(1));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK(ceil_kth_root(Rational(5), 2) == 3);
    CHECK(ceil_kth_root(Rational(4), 2) == 2);
    CHECK(ceil_kth_root(Rational(16), 4) == 2);
    CHECK(ceil_kth_root(Rational(0), 3) == 0);
    CHECK(rational_floor_ll(parse_rational("7/2")) == 3);
    CHECK(rational_ceil_ll(parse_rational("7/2")) == 4);
    CHECK(rational_floor_ll(parse_rational("-7/2")) == -4);
}

TEST_CASE("graph invariants") {
    Graph g(3);
    g.add_edge(0, 1);
    CHECK_THROWS_AS(g.add_edge(1, 1), InputError);
    CHECK_THROWS_AS(g.add_edge(1, 0), InputError); // duplicate, either direction
    CHECK_THROWS_AS(g.add_edge(0, 5), InputError);
    CHECK_THROWS_AS(g.set_weight(0, Rational(-1)), InputError);
    CHECK(g.degree(0) == 1);
    CHECK(g.has_edge(1, 0));
}

TEST_CASE("induced subgraph: triangle restricted to a pair keeps one edge") {
    const Graph g = triangle();
    const std::vector<NodeId> pair{0, 1};
    const auto sub = induced_subgraph(g, pair);
    CHECK(sub.graph.node_count() == 2);
    CHECK(sub.graph.edge_count() == 1);
    CHECK(sub.to_parent == std::vector<NodeId>{0, 1});
}

TEST_CASE("induced subgraph: empty set and non-adjacent pair") {
    const Graph g = triangle();
    CHECK(induced_subgraph(g, std::vector<NodeId>{}).graph.node_count() == 0);

    Graph path(3); // 0-1-2
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    const std::vector<NodeId> ends{0, 2};
    const auto sub = induced_subgraph(path, ends);
    CHECK(sub.graph.node_count() == 2);
    CHECK(sub.graph.edge_count() == 0);

    const std::vector<NodeId> bogus{0, 7};
    CHECK_THROWS_AS(induced_subgraph(path, bogus), InputError);
}

TEST_CASE("induced subgraph is monotone in the node set") {
    const Graph g = gen_forest_union(12, 2, 99);
    const std::vector<NodeId> small{1, 3, 5, 7};
    const std::vector<NodeId> large{1, 2, 3, 5, 7, 9};
    const auto gs = induced_subgraph(g, small);
    const auto gl = induced_subgraph(g, large);
    for (const auto& e : gs.graph.edges()) {
        const NodeId a = gs.to_parent[static_cast<std::size_t>(e.a)];
        const NodeId b = gs.to_parent[static_cast<std::size_t>(e.b)];
        bool found = false;
        for (const auto& f : gl.graph.edges()) {
            if ((gl.to_parent[static_cast<std::size_t>(f.a)] == a &&
                 gl.to_parent[static_cast<std::size_t>(f.b)] == b) ||
                (gl.to_parent[static_cast<std::size_t>(f.a)] == b &&
                 gl.to_parent[static_cast<std::size_t>(f.b)] == a)) {
                found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("forest union generator") {
    SUBCASE("a single forest is acyclic") {
        const Graph g = gen_forest_union(5, 1, 7);
        CHECK(g.edge_count() <= 4);
        CHECK(exact_arboricity(g) <= 1);
    }
    SUBCASE("arboricity stays within the declared bound") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const Graph g = gen_forest_union(10, 3, seed);
            CHECK(exact_arboricity(g) <= 3);
            CHECK(g.declared_arboricity() == 3);
        }
    }
    SUBCASE("degenerate single node") {
        const Graph g = gen_forest_union(1, 2, 1);
        CHECK(g.node_count() == 1);
        CHECK(g.edge_count() == 0);
    }
    SUBCASE("deterministic per seed") {
        CHECK(gen_forest_union(20, 2, 5) == gen_forest_union(20, 2, 5));
        CHECK_FALSE(gen_forest_union(20, 2, 5) == gen_forest_union(20, 2, 6));
    }
    CHECK_THROWS_AS(gen_forest_union(0, 1, 1), InputError);
    CHECK_THROWS_AS(gen_forest_union(5, 0, 1), InputError);
}

TEST_CASE("random out-degree-bounded digraphs") {
    SUBCASE("d=0 gives an edgeless digraph") {
        const Graph g = gen_random_dout(8, 0, 3);
        CHECK(g.edge_count() == 0);
    }
    SUBCASE("out-degrees respect the bound") {
        const Graph g = gen_random_dout(8, 3, 11);
        for (NodeId v = 0; v < g.node_count(); ++v) {
            CHECK(g.out_degree(v) <= 3);
        }
        CHECK(g.stats().max_out_degree <= 3);
    }
    CHECK_THROWS_AS(gen_random_dout(4, 4, 1), InputError);
}

TEST_CASE("oriented ring") {
    const Graph g = gen_oriented_ring(6);
    CHECK(g.edge_count() == 6);
    for (NodeId v = 0; v < 6; ++v) {
        CHECK(g.out_degree(v) == 1);
        CHECK(g.weight(v) == Rational(1));
    }
    CHECK_THROWS_AS(gen_oriented_ring(2), InputError);
}

TEST_CASE("edge-list round trip") {
    SUBCASE("undirected with rational weights") {
        Graph g = triangle();
        g.set_weight(1, parse_rational("7/3"));
        std::ostringstream os;
        save_graph(g, os);
        std::istringstream is(os.str());
        const LoadedGraph loaded = load_graph(is);
        CHECK(loaded.graph == g);
    }
    SUBCASE("directed keeps orientations") {
        const Graph g = gen_random_dout(9, 2, 17);
        std::ostringstream os;
        save_graph(g, os);
        std::istringstream is(os.str());
        const LoadedGraph loaded = load_graph(is);
        CHECK(loaded.graph == g);
        CHECK(loaded.graph.directed());
        for (NodeId v = 0; v < g.node_count(); ++v) {
            CHECK(loaded.graph.out_degree(v) == g.out_degree(v));
        }
    }
    SUBCASE("round trip on a batch of generated graphs") {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const Graph g = gen_forest_union(15, 2, seed);
            std::ostringstream os;
            save_graph(g, os);
            std::istringstream is(os.str());
            CHECK(load_graph(is).graph == g);
        }
    }
}

TEST_CASE("loader errors carry line numbers") {
    auto load_text = [](const std::string& text) {
        std::istringstream is(text);
        return load_graph(is, "test");
    };
    SUBCASE("self-loop") {
        CHECK_THROWS_WITH_AS(load_text("2 1 undirected\n0 1\n1 1\n0 0\n"),
                             doctest::Contains("test:4"), ParseError);
    }
    SUBCASE("bad header") {
        CHECK_THROWS_WITH_AS(load_text("2 1\n"), doctest::Contains("malformed header"), ParseError);
        CHECK_THROWS_WITH_AS(load_text("2 1 mixed\n"), doctest::Contains("unknown mode"),
                             ParseError);
    }
    SUBCASE("negative weight") {
        CHECK_THROWS_WITH_AS(load_text("1 0 undirected\n0 -2\n"), doctest::Contains("negative"),
                             ParseError);
    }
    SUBCASE("duplicate edge") {
        CHECK_THROWS_AS(load_text("2 2 undirected\n0 1\n1 1\n0 1\n1 0\n"), ParseError);
    }
    SUBCASE("duplicate node id") {
        CHECK_THROWS_AS(load_text("2 0 undirected\n5 1\n5 1\n"), ParseError);
    }
    SUBCASE("comments and arbitrary ids are fine") {
        const LoadedGraph loaded =
            load_text("# a comment\n2 1 undirected\n10 1\n20 2/3\n\n10 20\n");
        CHECK(loaded.graph.node_count() == 2);
        CHECK(loaded.original_ids == std::vector<long long>{10, 20});
        CHECK(loaded.graph.weight(1) == parse_rational("2/3"));
    }
}
