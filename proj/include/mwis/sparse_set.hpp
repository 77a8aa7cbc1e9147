#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mwis/coloring.hpp"
#include "mwis/engine.hpp"
#include "mwis/graph.hpp"

namespace mwis {

enum class NodeStatus : unsigned char { Selected, EliminatedStage1, EliminatedStage2 };

const char* status_str(NodeStatus s);

/// How each node resolves its sparsity parameter f.
struct FSpec {
    enum class Mode { Uniform, PerNode, LocalL };
    Mode mode = Mode::Uniform;
    long long f = 1;                  // Uniform
    std::vector<long long> per_node;  // PerNode

    static FSpec uniform(long long f) { return FSpec{Mode::Uniform, f, {}}; }
    static FSpec local_larger_set() { return FSpec{Mode::LocalL, 0, {}}; }
    static FSpec per_node_values(std::vector<long long> f) {
        return FSpec{Mode::PerNode, 0, std::move(f)};
    }
};

struct SparseSetOutcome {
    std::vector<NodeId> selected; // X, ascending
    std::vector<NodeStatus> status;
    std::vector<Rational> lambda;
    std::vector<Rational> edge_dual;    // per edge, assigned by its smaller-colored endpoint
    std::vector<long long> f_node;      // effective f used by each node
    long long f_max = 0;
    int beta = 0;                       // declared bound of the input coloring
    FSpec::Mode mode = FSpec::Mode::Uniform;
    BoundedColoring coloring;           // the coloring the run used
    Trace trace;
    long long colors_used = 0;          // k: distinct colors in the run graph

    Rational selected_weight(const Graph& g) const;
    std::string dump(const Graph& g) const; // "node status lambda" + "u v y" lines
};

/// Two-stage selection. Stage 1 computes duals down the color order and
/// eliminates zero-slack nodes; stage 2 eliminates v when f*|IN(v)| >= |L(v)|
/// (nodes with L(v) empty are selected iff they survived stage 1).
/// Requires a verified beta-bounded coloring and integer 1 <= f <= beta.
SparseSetOutcome sparse_set(const Graph& g, const BoundedColoring& c, long long f);

/// Variant where each node substitutes f = |L(v)| (so no global bound is
/// needed); the result is an independent set.
SparseSetOutcome sparse_set_local_f(const Graph& g, const BoundedColoring& c);

/// Per-node f values (used by the arboricity-oblivious pipelines).
SparseSetOutcome sparse_set_with(const Graph& g, const BoundedColoring& c, const FSpec& fspec);

/// Augments g with a virtual zero-weight node z adjacent to every v with
/// L(v) empty, carrying dual y'_{v,z} = lambda(v) * f_v; the extended duals
/// are feasible and witness the approximation bound.
struct DualCertificate {
    std::vector<NodeId> virtual_edge_nodes;
    std::vector<Rational> virtual_dual;
};

DualCertificate build_dual_certificate(const Graph& g, const SparseSetOutcome& outcome);

struct CertReport {
    bool nonnegative = false;
    bool feasible = false;
    bool objective_ok = false; // sum of extended duals <= f_max * w(X)
    bool halving_ok = false;   // 2 * f_max * w(X) >= w(V)
    Rational dual_total;
    std::string detail;

    bool pass() const { return nonnegative && feasible && objective_ok && halving_ok; }
};

CertReport verify_certificate(const Graph& g, const SparseSetOutcome& outcome,
                              const DualCertificate& cert);

/// Structural invariants of an outcome: the lambda/dual assignment formulas,
/// the stage-1 and stage-2 elimination characterizations, and the selection
/// sparsity property f_v * |X cap L(v)| < max(|L(v)|, 1).
struct StructureReport {
    bool pass = false;
    std::string detail;
};

StructureReport verify_outcome_structure(const Graph& g, const SparseSetOutcome& outcome);

/// Orients G(X) toward the larger color; acyclic with every out-degree
/// strictly below beta/f, witnessing arboricity(G(X)) < beta/f.
Orientation orientation_certificate(const Graph& g, const SparseSetOutcome& outcome);

/// Color-splitting wrapper: divides a flat coloring over [k] into
/// (c1, c2) with c = ceil(sqrt(k))*c1 + c2, runs the f=beta selection on the
/// c1-bichromatic edges and then again on G(X) under c2.
struct TwoLevelResult {
    std::vector<NodeId> solution; // X', independent in g
    SparseSetOutcome first;
    SparseSetOutcome second;
    std::vector<NodeId> intermediate; // X
    long long split = 0;              // ceil(sqrt(k))
    long long k = 0;
    long long rounds = 0;
    std::size_t max_message_bits = 0;
    long long first_colors = 0;
    long long second_colors = 0;
};

TwoLevelResult two_level_approx(const Graph& g, const BoundedColoring& c);

} // namespace mwis
