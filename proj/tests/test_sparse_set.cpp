#include <doctest.h>

#include "mwis/coloring.hpp"
#include "mwis/errors.hpp"
#include "mwis/generators.hpp"
#include "mwis/oracles.hpp"
#include "mwis/sparse_set.hpp"

using namespace mwis;

namespace {

BoundedColoring flat_coloring(std::vector<long long> values, int beta) {
    BoundedColoring c;
    for (long long v : values) {
        c.color.push_back(Color::flat(v));
    }
    c.beta = beta;
    return c;
}

struct Pipeline {
    BoundedColoring coloring;
    int threshold;
};

Pipeline layered_coloring(const Graph& g, int a, const Rational& eps) {
    const PartitionRun part = be_partition(g, a, eps);
    std::vector<int> group(static_cast<std::size_t>(g.node_count()));
    for (NodeId v = 0; v < g.node_count(); ++v) {
        group[static_cast<std::size_t>(v)] = part.partition.layer[static_cast<std::size_t>(v)] - 1;
    }
    const std::vector<int> bounds(static_cast<std::size_t>(part.partition.layer_count),
                                  part.partition.threshold);
    const GroupColoringRun phi = proper_coloring_within(g, group, bounds);
    return Pipeline{compose_layer_coloring(g, part.partition, phi.phi), part.partition.threshold};
}

void check_all_certificates(const Graph& g, const SparseSetOutcome& outcome) {
    const DualCertificate cert = build_dual_certificate(g, outcome);
    const CertReport report = verify_certificate(g, outcome, cert);
    CAPTURE(report.detail);
    CHECK(report.pass());
    const StructureReport structure = verify_outcome_structure(g, outcome);
    CAPTURE(structure.detail);
    CHECK(structure.pass);
    CHECK_NOTHROW(orientation_certificate(g, outcome));
}

} // namespace

TEST_CASE("isolated node is selected with lambda = w") {
    Graph g(1);
    g.set_weight(0, Rational(5));
    const SparseSetOutcome out = sparse_set(g, flat_coloring({0}, 1), 1);
    CHECK(out.selected == std::vector<NodeId>{0});
    CHECK(out.lambda[0] == Rational(5));
    CHECK(out.selected_weight(g) == Rational(5));

    // Virtual edge carries y' = lambda * f = w.
    const DualCertificate cert = build_dual_certificate(g, out);
    REQUIRE(cert.virtual_edge_nodes.size() == 1);
    CHECK(cert.virtual_dual[0] == Rational(5));
    check_all_certificates(g, out);
}

TEST_CASE("single edge: heavy low-colored endpoint wins") {
    Graph g(2);
    g.set_weight(0, Rational(3)); // color 1
    g.set_weight(1, Rational(1)); // color 2
    g.add_edge(0, 1);
    const SparseSetOutcome out = sparse_set(g, flat_coloring({1, 2}, 1), 1);
    CHECK(out.lambda[0] == Rational(3));
    CHECK(out.edge_dual[0] == Rational(3)); // y = lambda * f / |L| = 3
    CHECK(out.lambda[1] == Rational(0));
    CHECK(out.status[1] == NodeStatus::EliminatedStage1);
    CHECK(out.status[0] == NodeStatus::Selected);
    CHECK(out.selected == std::vector<NodeId>{0});
    // f * w(X) = 3 = OPT
    CHECK(to_rational(out.f_max) * out.selected_weight(g) == exact_mwis(g).opt_weight);
    check_all_certificates(g, out);
}

TEST_CASE("unit triangle with colors 1<2<3 and f=2") {
    Graph g(3);
    for (NodeId v = 0; v < 3; ++v) {
        g.set_weight(v, Rational(1));
    }
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    const SparseSetOutcome out = sparse_set(g, flat_coloring({1, 2, 3}, 2), 2);
    CHECK(out.lambda[0] == Rational(1));
    CHECK(out.lambda[1] == Rational(0));
    CHECK(out.lambda[2] == Rational(0));
    // Node 0 sends lambda*f/|L| = 1*2/2 = 1 to both larger neighbors.
    CHECK(out.edge_dual[0] == Rational(1)); // 0-1
    CHECK(out.edge_dual[2] == Rational(1)); // 0-2
    CHECK(out.edge_dual[1] == Rational(0)); // 1-2, assigned by eliminated node 1
    CHECK(out.status[1] == NodeStatus::EliminatedStage1);
    CHECK(out.status[2] == NodeStatus::EliminatedStage1);
    CHECK(out.selected == std::vector<NodeId>{0});
    CHECK(2 * out.selected_weight(g) >= exact_mwis(g).opt_weight);
    CHECK(4 * out.selected_weight(g) >= g.total_weight()); // 2f*w(X) >= w(V)

    // Only the top-colored node has L(v) empty; its virtual dual is 0.
    const DualCertificate cert = build_dual_certificate(g, out);
    REQUIRE(cert.virtual_edge_nodes == std::vector<NodeId>{2});
    CHECK(cert.virtual_dual[0] == Rational(0));
    check_all_certificates(g, out);

    // G(X) is a single node: empty orientation.
    const Orientation o = orientation_certificate(g, out);
    CHECK(o.directed_edges.empty());
}

TEST_CASE("validation errors") {
    Graph g(2);
    g.add_edge(0, 1);
    g.set_weight(0, Rational(1));
    g.set_weight(1, Rational(1));
    SUBCASE("f out of range") {
        CHECK_THROWS_AS(sparse_set(g, flat_coloring({0, 1}, 1), 2), InputError);
        CHECK_THROWS_AS(sparse_set(g, flat_coloring({0, 1}, 1), 0), InputError);
    }
    SUBCASE("coloring failing verification") {
        CHECK_THROWS_AS(sparse_set(g, flat_coloring({0, 0}, 1), 1), CertificateError);
        // declared beta below the true max |L|
        CHECK_THROWS_AS(sparse_set(g, flat_coloring({0, 1}, 0), 1), CertificateError);
    }
}

TEST_CASE("local-f variant") {
    SUBCASE("P3 with colors 1,2,3 matches the uniform f=1 run") {
        Graph g(3);
        for (NodeId v = 0; v < 3; ++v) {
            g.set_weight(v, Rational(1));
        }
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        const SparseSetOutcome local = sparse_set_local_f(g, flat_coloring({1, 2, 3}, 1));
        const SparseSetOutcome uniform = sparse_set(g, flat_coloring({1, 2, 3}, 1), 1);
        CHECK(local.selected == uniform.selected);
        CHECK(is_independent(g, local.selected));
    }
    SUBCASE("edgeless graph selects everything") {
        Graph g(4);
        for (NodeId v = 0; v < 4; ++v) {
            g.set_weight(v, Rational(2));
        }
        const SparseSetOutcome out = sparse_set_local_f(g, flat_coloring({0, 0, 0, 0}, 0));
        CHECK(out.selected.size() == 4);
    }
    SUBCASE("star with the heavy center colored lowest keeps the center") {
        Graph g(5);
        g.set_weight(0, Rational(10));
        for (NodeId v = 1; v < 5; ++v) {
            g.set_weight(v, Rational(1));
            g.add_edge(0, v);
        }
        const SparseSetOutcome out = sparse_set_local_f(g, flat_coloring({0, 1, 1, 1, 1}, 4));
        CHECK(out.selected == std::vector<NodeId>{0});
        check_all_certificates(g, out);
    }
    SUBCASE("local-f always returns an independent set") {
        for (std::uint64_t seed = 1; seed <= 8; ++seed) {
            const Graph g = gen_forest_union(30, 3, seed);
            const Pipeline pipe = layered_coloring(g, 3, Rational(1, 2));
            const SparseSetOutcome out = sparse_set_local_f(g, pipe.coloring);
            CHECK(is_independent(g, out.selected));
            check_all_certificates(g, out);
        }
    }
}

TEST_CASE("certificate rejects corrupted outcomes") {
    Graph g(2);
    g.set_weight(0, Rational(3));
    g.set_weight(1, Rational(1));
    g.add_edge(0, 1);
    const SparseSetOutcome out = sparse_set(g, flat_coloring({1, 2}, 1), 1);
    const DualCertificate cert = build_dual_certificate(g, out);

    SUBCASE("perturbing a dual breaks feasibility") {
        SparseSetOutcome bad = out;
        bad.edge_dual[0] -= Rational(1, 100);
        const CertReport report = verify_certificate(g, bad, build_dual_certificate(g, bad));
        CHECK_FALSE(report.feasible);
        CHECK(report.detail.find("node 0") != std::string::npos);
    }
    SUBCASE("claiming X = V breaks the objective bound") {
        SparseSetOutcome bad = out;
        bad.selected = {0, 1};
        // With the duals unchanged, the objective bound direction flips:
        // total duals 3 vs f*w(X) = 4 still holds, so perturb the dual up too.
        bad.edge_dual[0] += Rational(10);
        const CertReport report = verify_certificate(g, bad, build_dual_certificate(g, bad));
        CHECK_FALSE(report.objective_ok);
    }
    SUBCASE("structure verifier notices tampered lambdas") {
        SparseSetOutcome bad = out;
        bad.lambda[0] += Rational(1);
        CHECK_FALSE(verify_outcome_structure(g, bad).pass);
    }
}

TEST_CASE("every nonempty run has at least one virtual edge") {
    // The globally largest color always has L(v) empty.
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const Graph g = gen_forest_union(12, 2, seed);
        const Pipeline pipe = layered_coloring(g, 2, Rational(1, 2));
        const SparseSetOutcome out = sparse_set(g, pipe.coloring, 1);
        CHECK_FALSE(build_dual_certificate(g, out).virtual_edge_nodes.empty());
    }
}

TEST_CASE("orientation certificate bounds") {
    SUBCASE("f = beta yields an independent set (no oriented edges)") {
        for (std::uint64_t seed = 1; seed <= 8; ++seed) {
            const Graph g = gen_forest_union(25, 2, seed);
            const Pipeline pipe = layered_coloring(g, 2, Rational(1, 2));
            const SparseSetOutcome out = sparse_set(g, pipe.coloring, pipe.threshold);
            CHECK(is_independent(g, out.selected));
            CHECK(orientation_certificate(g, out).directed_edges.empty());
        }
    }
    SUBCASE("f = floor(beta/2) keeps certified out-degrees at most 1") {
        for (std::uint64_t seed = 1; seed <= 8; ++seed) {
            const Graph g = gen_forest_union(30, 3, seed);
            const Pipeline pipe = layered_coloring(g, 3, Rational(1, 2));
            const SparseSetOutcome out = sparse_set(g, pipe.coloring, pipe.threshold / 2);
            const Orientation o = orientation_certificate(g, out);
            // out-degree < beta/f <= 2 + something; exact per-node bound is checked
            // inside orientation_certificate, spot-check the aggregate here
            CHECK(o.max_out_degree * (pipe.threshold / 2) < pipe.threshold);
            CHECK(o.acyclic);
        }
    }
}

TEST_CASE("round bound 2k+2 and properties on layered instances") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Graph g = gen_forest_union(8 + static_cast<int>(seed) * 7, 2, seed);
        const Pipeline pipe = layered_coloring(g, 2, Rational(1, 2));
        for (long long f = 1; f <= pipe.threshold; ++f) {
            const SparseSetOutcome out = sparse_set(g, pipe.coloring, f);
            CHECK(out.trace.rounds_used <= 2 * out.colors_used + 2);
            CHECK(2 * to_rational(f) * out.selected_weight(g) >= g.total_weight());
            check_all_certificates(g, out);
            if (g.node_count() <= 25) {
                CHECK(to_rational(f) * out.selected_weight(g) >= exact_mwis(g).opt_weight);
            }
        }
    }
}

TEST_CASE("positive weight scaling leaves statuses untouched") {
    const Graph g = gen_forest_union(40, 3, 3);
    const Pipeline pipe = layered_coloring(g, 3, Rational(1, 2));
    const SparseSetOutcome base = sparse_set(g, pipe.coloring, 2);

    Graph scaled = g;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        scaled.set_weight(v, g.weight(v) * parse_rational("7/3"));
    }
    const SparseSetOutcome out = sparse_set(scaled, pipe.coloring, 2);
    CHECK(out.selected == base.selected);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        CHECK(out.status[static_cast<std::size_t>(v)] == base.status[static_cast<std::size_t>(v)]);
        CHECK(out.lambda[static_cast<std::size_t>(v)] ==
              base.lambda[static_cast<std::size_t>(v)] * parse_rational("7/3"));
    }
}

TEST_CASE("zero-weight nodes are eliminated in stage 1") {
    Graph g(2);
    g.set_weight(0, Rational(0));
    g.set_weight(1, Rational(0));
    g.add_edge(0, 1);
    const SparseSetOutcome out = sparse_set(g, flat_coloring({0, 1}, 1), 1);
    CHECK(out.status[0] == NodeStatus::EliminatedStage1);
    CHECK(out.status[1] == NodeStatus::EliminatedStage1);
    CHECK(out.selected.empty());
    check_all_certificates(g, out);
}

TEST_CASE("two-level split wrapper") {
    SUBCASE("k=1 on an edgeless graph keeps everything") {
        Graph g(3);
        for (NodeId v = 0; v < 3; ++v) {
            g.set_weight(v, Rational(1));
        }
        const TwoLevelResult two = two_level_approx(g, flat_coloring({0, 0, 0}, 1));
        CHECK(two.solution.size() == 3);
    }
    SUBCASE("P3 with zero-based colors 0,1,2") {
        Graph g(3);
        for (NodeId v = 0; v < 3; ++v) {
            g.set_weight(v, Rational(1));
        }
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        const TwoLevelResult two = two_level_approx(g, flat_coloring({0, 1, 2}, 1));
        CHECK(is_independent(g, two.solution));
        // 2 * beta^2 * w(X') >= OPT with beta = 1
        Rational w(0);
        for (NodeId v : two.solution) {
            w += g.weight(v);
        }
        CHECK(2 * w >= exact_mwis(g).opt_weight);
        CHECK(two.first_colors <= 2);  // floor(sqrt(3)) + 1
        CHECK(two.second_colors <= 2);
    }
    SUBCASE("layer-composed colorings on forest unions vs the oracle") {
        for (std::uint64_t seed = 1; seed <= 8; ++seed) {
            const Graph g = gen_forest_union(20, 2, seed);
            const Pipeline pipe = layered_coloring(g, 2, Rational(1, 2));
            // Flatten (layer, phi) into [k).
            BoundedColoring flat;
            flat.beta = pipe.coloring.beta;
            const long long stride = pipe.threshold + 1;
            for (const Color& c : pipe.coloring.color) {
                flat.color.push_back(Color::flat((c.hi - 1) * stride + c.lo));
            }
            const TwoLevelResult two = two_level_approx(g, flat);
            CHECK(is_independent(g, two.solution));
            Rational w(0);
            for (NodeId v : two.solution) {
                w += g.weight(v);
            }
            const Rational beta(pipe.coloring.beta);
            CHECK(2 * beta * beta * w >= exact_mwis(g).opt_weight);
            const long long sqrt_floor = [&] {
                long long r = 0;
                while ((r + 1) * (r + 1) <= two.k) {
                    ++r;
                }
                return r;
            }();
            CHECK(two.first_colors <= sqrt_floor + 1);
            CHECK(two.second_colors <= sqrt_floor + 1);
        }
    }
}
