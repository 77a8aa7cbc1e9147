#include <doctest.h>

#include "mwis/coloring.hpp"
#include "mwis/errors.hpp"
#include "mwis/generators.hpp"
#include "mwis/oracles.hpp"

using namespace mwis;

namespace {

Graph path(int n) {
    Graph g(n);
    for (NodeId v = 0; v + 1 < n; ++v) {
        g.add_edge(v, v + 1);
    }
    return g;
}

Graph star(int leaves) {
    Graph g(leaves + 1);
    for (NodeId v = 1; v <= leaves; ++v) {
        g.add_edge(0, v);
    }
    return g;
}

Graph complete(int n) {
    Graph g(n);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            g.add_edge(u, v);
        }
    }
    return g;
}

bool proper(const Graph& g, const BoundedColoring& c) {
    return verify_beta_bounded(g, c).proper;
}

} // namespace

TEST_CASE("verify_beta_bounded") {
    Graph p3 = path(3);
    BoundedColoring c;
    c.color = {Color::flat(1), Color::flat(2), Color::flat(3)};
    c.beta = 1;
    CHECK(verify_beta_bounded(p3, c).pass); // each |L(v)| <= 1

    Graph tri = complete(3);
    const BetaReport bad = verify_beta_bounded(tri, c);
    CHECK(bad.proper);
    CHECK(bad.max_larger == 2); // the color-1 node sees two larger colors
    CHECK_FALSE(bad.pass);

    BoundedColoring mono;
    mono.color = {Color::flat(1), Color::flat(1), Color::flat(2)};
    mono.beta = 5;
    const BetaReport improper = verify_beta_bounded(p3, mono);
    CHECK_FALSE(improper.proper);
    CHECK(improper.violating_edge == 0);
}

TEST_CASE("linial coloring") {
    SUBCASE("edgeless graph shares color 0") {
        Graph g(4);
        const ColoringRun run = linial_coloring(g);
        for (const Color& c : run.coloring.color) {
            CHECK(c == Color::flat(0));
        }
        CHECK(run.rounds == 0);
    }
    SUBCASE("oriented ring: proper with at most 16*d^2 colors") {
        const Graph g = gen_oriented_ring(16);
        const ColoringRun run = linial_coloring(g);
        CHECK(proper(g, run.coloring));
        CHECK(run.coloring.color_count() <= 16);
        CHECK(run.rounds <= 3 * (log_star(16) + 2));
    }
    SUBCASE("path") {
        const Graph g = path(3);
        const ColoringRun run = linial_coloring(g);
        CHECK(proper(g, run.coloring));
    }
    SUBCASE("large ring keeps the palette and log* rounds") {
        const Graph g = gen_oriented_ring(4096);
        const ColoringRun run = linial_coloring(g);
        CHECK(proper(g, run.coloring));
        CHECK(run.coloring.color_count() <= 16);
        CHECK(run.rounds <= 3 * (log_star(4096) + 2));
    }
    SUBCASE("undirected forests") {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const Graph g = gen_forest_union(50, 2, seed);
            const ColoringRun run = linial_coloring(g);
            CHECK(proper(g, run.coloring));
            const long long d = g.stats().max_degree;
            CHECK(run.coloring.color_count() <= 16 * std::max<long long>(d, 1) * std::max<long long>(d, 1));
        }
    }
}

TEST_CASE("greedy color reduction") {
    SUBCASE("precolored path lands in Delta+1 colors") {
        Graph g = path(3);
        BoundedColoring c;
        c.color = {Color::flat(5), Color::flat(9), Color::flat(17)};
        c.beta = 2;
        const ColoringRun run = reduce_colors(g, c);
        CHECK(proper(g, run.coloring));
        CHECK(run.coloring.color_count() <= 3);
        for (const Color& col : run.coloring.color) {
            CHECK(col.lo <= 2); // palette {0, 1, 2}
        }
    }
    SUBCASE("already tight input keeps the bound") {
        Graph g = path(3);
        BoundedColoring c;
        c.color = {Color::flat(0), Color::flat(1), Color::flat(0)};
        c.beta = 1;
        const ColoringRun run = reduce_colors(g, c);
        CHECK(proper(g, run.coloring));
        CHECK(run.coloring.color_count() <= 3);
    }
    SUBCASE("star") {
        Graph g = star(4);
        BoundedColoring c;
        c.color = {Color::flat(10), Color::flat(20), Color::flat(30), Color::flat(40),
                   Color::flat(50)};
        c.beta = 4;
        const ColoringRun run = reduce_colors(g, c);
        CHECK(proper(g, run.coloring));
        CHECK(run.coloring.color_count() <= 5);
        CHECK(run.rounds <= 5 + 2);
    }
    SUBCASE("improper input is rejected") {
        Graph g = path(2);
        BoundedColoring c;
        c.color = {Color::flat(1), Color::flat(1)};
        c.beta = 1;
        CHECK_THROWS_WITH_AS(reduce_colors(g, c), doctest::Contains("0-1"), CertificateError);
    }
}

TEST_CASE("peeling partition") {
    SUBCASE("star with threshold 2: leaves first, then the center") {
        const Graph g = star(5);
        const PartitionRun run = be_partition(g, 1, Rational(1, 2));
        CHECK(run.partition.threshold == 2);
        CHECK(run.partition.layer_count == 2);
        for (NodeId v = 1; v <= 5; ++v) {
            CHECK(run.partition.layer[static_cast<std::size_t>(v)] == 1);
        }
        CHECK(run.partition.layer[0] == 2);
    }
    SUBCASE("P4 with threshold 3 is a single layer") {
        const PartitionRun run = be_partition(path(4), 1, Rational(1));
        CHECK(run.partition.layer_count == 1);
    }
    SUBCASE("edgeless graph is a single layer") {
        const PartitionRun run = be_partition(Graph(6), 1, Rational(1, 2));
        CHECK(run.partition.layer_count == 1);
    }
    SUBCASE("stall on a too-dense graph reports the stuck density") {
        CHECK_THROWS_WITH_AS(be_partition(complete(4), 1, Rational(1, 2)),
                             doctest::Contains("density"), PreconditionError);
    }
    SUBCASE("layer count bound on generated instances") {
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            const Graph g = gen_forest_union(100, 3, seed);
            const Rational eps(1, 2);
            const PartitionRun run = be_partition(g, 3, eps);
            // l <= ceil(log n / log(1 + eps/(2+eps))) + 1
            const Rational base = Rational(1) + eps / (Rational(2) + eps);
            int t = 0;
            Rational power(1);
            while (power < Rational(100)) {
                power *= base;
                ++t;
            }
            CHECK(run.partition.layer_count <= t + 1);
        }
    }
}

TEST_CASE("arboricity-oblivious partition") {
    SUBCASE("forests cluster in the first run with estimate 1") {
        const Graph g = gen_forest_union(30, 1, 9);
        const PartitionRun run =
            be_partition_unknown_alpha(g, Rational(1, 10), Rational(1, 10), Rational(1, 2));
        for (const Rational& est : run.partition.alpha_estimate) {
            CHECK(est == Rational(1));
        }
    }
    SUBCASE("K4 estimates stay at most the true arboricity 2") {
        const Graph g = complete(4);
        const PartitionRun run =
            be_partition_unknown_alpha(g, Rational(1, 10), Rational(1, 10), Rational(1, 2));
        for (const Rational& est : run.partition.alpha_estimate) {
            CHECK(est <= Rational(2));
            CHECK(est > Rational(1));
        }
        CHECK(run.partition.threshold <= rational_floor_ll(Rational(5, 2) * Rational(2)));
    }
    SUBCASE("single node") {
        const PartitionRun run =
            be_partition_unknown_alpha(Graph(1), Rational(1, 10), Rational(1, 10), Rational(1, 2));
        CHECK(run.partition.layer_count == 1);
        CHECK(run.partition.alpha_estimate[0] == Rational(1));
    }
    SUBCASE("parameter check") {
        CHECK_THROWS_AS(
            be_partition_unknown_alpha(Graph(2), Rational(1), Rational(1), Rational(1, 2)),
            InputError);
    }
}

TEST_CASE("layer-composed colorings") {
    SUBCASE("single layer composes to (1, phi)") {
        const Graph g = path(4);
        const PartitionRun part = be_partition(g, 1, Rational(1));
        REQUIRE(part.partition.layer_count == 1);
        const std::vector<long long> phi{0, 1, 0, 1};
        const BoundedColoring c = compose_layer_coloring(g, part.partition, phi);
        CHECK(c.color[0] == Color{1, 0});
        CHECK(c.color[1] == Color{1, 1});
        CHECK(verify_beta_bounded(g, c).pass);
    }
    SUBCASE("star: every leaf sees exactly the center above it") {
        const Graph g = star(5);
        const PartitionRun part = be_partition(g, 1, Rational(1, 2));
        const std::vector<long long> phi(6, 0);
        const BoundedColoring c = compose_layer_coloring(g, part.partition, phi);
        const BetaReport report = verify_beta_bounded(g, c);
        CHECK(report.pass);
        CHECK(report.max_larger == 1); // leaves see only the center
    }
    SUBCASE("improper per-layer coloring is rejected") {
        const Graph g = path(2);
        const PartitionRun part = be_partition(g, 1, Rational(1));
        const std::vector<long long> phi{0, 0};
        CHECK_THROWS_AS(compose_layer_coloring(g, part.partition, phi), CertificateError);
    }
    SUBCASE("full pipeline produces a threshold-bounded coloring") {
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            const Graph g = gen_forest_union(60, 2, seed);
            const PartitionRun part = be_partition(g, 2, Rational(1, 2));
            std::vector<int> group(static_cast<std::size_t>(g.node_count()));
            for (NodeId v = 0; v < g.node_count(); ++v) {
                group[static_cast<std::size_t>(v)] =
                    part.partition.layer[static_cast<std::size_t>(v)] - 1;
            }
            const std::vector<int> bounds(static_cast<std::size_t>(part.partition.layer_count),
                                          part.partition.threshold);
            const GroupColoringRun phi = proper_coloring_within(g, group, bounds);
            const BoundedColoring c = compose_layer_coloring(g, part.partition, phi.phi);
            CHECK(verify_beta_bounded(g, c).pass);
            for (long long value : phi.phi) {
                CHECK(value <= part.partition.threshold); // delta+1 palette per layer
            }
        }
    }
}

TEST_CASE("arbdefective coloring") {
    SUBCASE("p > Delta gives a proper coloring with empty certificates") {
        const Graph g = complete(4);
        const ArbdefectiveRun run = arbdefective_coloring(g, 5);
        CHECK(run.coloring.defect_bound == 0);
        BoundedColoring as_proper;
        for (int c : run.coloring.color) {
            as_proper.color.push_back(Color::flat(c));
        }
        as_proper.beta = g.node_count();
        CHECK(proper(g, as_proper));
        for (const Orientation& cert : run.coloring.class_orientations) {
            CHECK(cert.directed_edges.empty());
        }
    }
    SUBCASE("P5 with a single color keeps the whole path in one class") {
        const Graph g = path(5);
        const ArbdefectiveRun run = arbdefective_coloring(g, 1);
        CHECK(run.coloring.defect_bound <= 2); // ceil(Delta/p) = 2
        CHECK(run.coloring.class_orientations[0].directed_edges.size() == 4);
        CHECK(run.coloring.class_orientations[0].acyclic);
    }
    SUBCASE("K4 with two colors") {
        const Graph g = complete(4);
        const ArbdefectiveRun run = arbdefective_coloring(g, 2);
        CHECK(run.coloring.defect_bound <= 2); // ceil(3/2)
        int classes_used = 0;
        for (const Orientation& cert : run.coloring.class_orientations) {
            if (!cert.nodes.empty()) {
                ++classes_used;
            }
        }
        CHECK(classes_used <= 2);
    }
    SUBCASE("certified class arboricity matches the exact oracle on tiny instances") {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const Graph g = gen_forest_union(10, 3, seed);
            const int delta = g.stats().max_degree;
            const int p = 2;
            const ArbdefectiveRun run = arbdefective_coloring(g, p);
            CHECK(run.coloring.defect_bound <= (delta + p - 1) / p);
            for (const Orientation& cert : run.coloring.class_orientations) {
                if (cert.nodes.size() < 2 || cert.nodes.size() > 14) {
                    continue;
                }
                const auto sub = induced_subgraph(g, cert.nodes);
                // An acyclic orientation with out-degree q splits into q forests.
                CHECK(exact_arboricity(sub.graph) <= cert.max_out_degree);
            }
        }
    }
    CHECK_THROWS_AS(arbdefective_coloring(path(3), 0), InputError);
}
