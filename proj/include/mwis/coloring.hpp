#pragma once

#include <string>
#include <vector>

#include "mwis/engine.hpp"
#include "mwis/graph.hpp"

namespace mwis {

/// A node coloring from a totally ordered color space with a declared bound
/// beta on |L(v)| = #{u in N(v) : c(u) > c(v)}.
struct BoundedColoring {
    std::vector<Color> color;
    int beta = 0;

    long long color_count() const; // distinct colors actually used
    std::string table() const;     // "node color" lines
};

struct BetaReport {
    bool proper = false;
    int violating_edge = -1; // a monochromatic edge, if any
    int max_larger = 0;      // true max |L(v)|
    bool pass = false;       // proper && max_larger <= declared beta
    std::string detail;
};

BetaReport verify_beta_bounded(const Graph& g, const BoundedColoring& c);

struct LayerPartition {
    std::vector<int> layer; // per node, 1..layer_count
    int layer_count = 0;
    int threshold = 0; // beta bound certified by the peeling
    // unknown-arboricity mode only:
    std::vector<Rational> alpha_estimate; // per node, (1+gamma)^i of the first successful run
    std::vector<int> node_threshold;      // per node, floor((2+eps')*estimate)

    std::string table() const; // "node layer" lines
};

struct PartitionRun {
    LayerPartition partition;
    long long rounds = 0;
    std::size_t max_message_bits = 0;
};

/// Synchronous peeling: every round all remaining nodes with remaining degree
/// <= floor((2+eps)*a) join the current layer. Requires arboricity(g) <= a
/// (caller-asserted); a stall raises PreconditionError with the density of the
/// stuck subgraph.
PartitionRun be_partition(const Graph& g, int a, const Rational& eps);

/// Arboricity-oblivious variant: parallel peelings with thresholds
/// floor((2+eps_prime)*(1+gamma)^i); each node keeps the first run that
/// clusters it. Requires (2+eps_prime)*(1+gamma) <= 2+target_eps so the
/// combined partition is floor((2+target_eps)*alpha)-bounded.
PartitionRun be_partition_unknown_alpha(const Graph& g, const Rational& gamma,
                                        const Rational& eps_prime, const Rational& target_eps);

struct ColoringRun {
    BoundedColoring coloring;
    long long rounds = 0;
    std::size_t max_message_bits = 0;
};

/// Linial-style color reduction from unique ids. Produces a proper coloring
/// with at most 16*max(D,1)^2 colors where D is the maximum degree
/// (undirected) or maximum out-degree (directed; nodes reduce against
/// out-neighbors only). Runs O(log* n) rounds.
ColoringRun linial_coloring(const Graph& g);

/// Standard highest-color-recolors-greedily reduction to <= Delta+1 colors.
ColoringRun reduce_colors(const Graph& g, const BoundedColoring& c);

/// Per-group (layer-parallel) proper coloring: Linial within each group with
/// common degree bound group_degree[gid], then greedy reduction. phi[v] is the
/// final color of v inside its group, at most (group max degree) + 1 values.
struct GroupColoringRun {
    std::vector<long long> phi;
    long long rounds = 0;
    std::size_t max_message_bits = 0;
};

GroupColoringRun proper_coloring_within(const Graph& g, const std::vector<int>& group,
                                        const std::vector<int>& group_degree);

/// Pairs each node's layer with its in-layer color, orders lexicographically,
/// and verifies the result is proper and threshold-bounded before returning.
BoundedColoring compose_layer_coloring(const Graph& g, const LayerPartition& partition,
                                       const std::vector<long long>& phi);

struct ArbdefectiveColoring {
    std::vector<int> color; // values in [0, p)
    int p = 0;
    int defect_bound = 0; // certified max out-degree over all class orientations
    std::vector<Orientation> class_orientations;
};

struct ArbdefectiveRun {
    ArbdefectiveColoring coloring;
    long long rounds = 0;
    std::size_t max_message_bits = 0;
};

/// Greedy arbdefective coloring: nodes decide in Linial-class order, each
/// picking the color in [p] that minimizes the count of already-decided
/// neighbors with that color; monochromatic edges are oriented toward the
/// earlier-decided endpoint, certifying per-class arboricity <= ceil(Delta/p).
ArbdefectiveRun arbdefective_coloring(const Graph& g, int p);

/// Grouped variant used by the phased algorithm (one run, layers in parallel).
/// group_p[gid] is the color budget of that group's palette.
struct GroupArbdefectiveRun {
    std::vector<int> color;
    std::vector<int> decision_rank; // Linial rank at decision time (per node)
    long long rounds = 0;
    std::size_t max_message_bits = 0;
};

GroupArbdefectiveRun arbdefective_within(const Graph& g, const std::vector<int>& group,
                                         const std::vector<int>& group_degree,
                                         const std::vector<int>& group_p);

/// Builds the per-class certificate orientations for an arbdefective coloring
/// given the decision order; verifies acyclicity and returns max out-degree.
std::vector<Orientation> arbdefective_certificates(const Graph& g, const std::vector<int>& color,
                                                   const std::vector<int>& decision_rank, int p,
                                                   int* max_out_degree);

} // namespace mwis
