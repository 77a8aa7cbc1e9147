#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mwis/rational.hpp"

namespace mwis {

using NodeId = int;

/// Direction of an incident edge from the viewpoint of one endpoint.
/// None for undirected graphs; Out means the edge points away from the node.
enum class EdgeDir : unsigned char { None, Out, In };

/// Stored edge. Undirected graphs keep a < b; in directed graphs the pair is
/// ordered a -> b (the orientation).
struct Edge {
    NodeId a = -1;
    NodeId b = -1;
};

struct IncidentEdge {
    NodeId neighbor = -1;
    int edge = -1;
    EdgeDir dir = EdgeDir::None;
};

struct GraphStats {
    int max_degree = 0;
    int max_out_degree = 0;
    std::optional<int> declared_arboricity_bound;
};

/// Simple weighted graph (no self-loops, no parallel edges), optionally
/// directed with one orientation per edge. Node ids are dense 0-based ints.
/// Immutable once built; generators and loaders finish construction before
/// handing the graph out.
class Graph {
  public:
    explicit Graph(int n, bool directed = false);

    int node_count() const { return static_cast<int>(adj_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    bool directed() const { return directed_; }

    const Rational& weight(NodeId v) const;
    void set_weight(NodeId v, Rational w);
    Rational total_weight() const;

    /// Adds u-v (directed: u->v). Returns the edge index.
    int add_edge(NodeId u, NodeId v);
    bool has_edge(NodeId u, NodeId v) const; // ignores orientation

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
    std::span<const IncidentEdge> neighbors(NodeId v) const;
    int degree(NodeId v) const;
    int out_degree(NodeId v) const;

    GraphStats stats() const;
    void set_declared_arboricity(int a) { declared_arboricity_ = a; }
    std::optional<int> declared_arboricity() const { return declared_arboricity_; }

    bool operator==(const Graph& other) const;

  private:
    void check_node(NodeId v, const char* what) const;

    bool directed_ = false;
    std::vector<Edge> edges_;
    std::vector<Rational> weights_;
    std::vector<std::vector<IncidentEdge>> adj_; // sorted by neighbor id
    std::optional<int> declared_arboricity_;
};

struct InducedSubgraph {
    Graph graph;
    std::vector<NodeId> to_parent; // subgraph id -> parent id (ascending)
};

/// Subgraph induced by `nodes` (deduplicated, relabeled to dense ids in
/// ascending parent order). Weights and orientations are restricted.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// An orientation of the subgraph induced by `nodes`, used as an arboricity
/// witness: if acyclic with max out-degree q, the subgraph splits into q forests.
struct Orientation {
    std::vector<NodeId> nodes;
    std::vector<std::pair<NodeId, NodeId>> directed_edges; // tail -> head
    bool acyclic = false;
    int max_out_degree = 0;
};

} // namespace mwis
