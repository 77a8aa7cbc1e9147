#include "mwis/graph.hpp"

#include <algorithm>
#include <unordered_map>

#include "mwis/errors.hpp"

namespace mwis {

Graph::Graph(int n, bool directed) : directed_(directed) {
    if (n < 0) {
        throw InputError("graph node count must be nonnegative");
    }
    weights_.assign(static_cast<std::size_t>(n), Rational(0));
    adj_.resize(static_cast<std::size_t>(n));
}

void Graph::check_node(NodeId v, const char* what) const {
    if (v < 0 || v >= node_count()) {
        throw InputError(std::string(what) + ": unknown node id " + std::to_string(v));
    }
}

const Rational& Graph::weight(NodeId v) const {
    check_node(v, "weight");
    return weights_[static_cast<std::size_t>(v)];
}

void Graph::set_weight(NodeId v, Rational w) {
    check_node(v, "set_weight");
    if (sgn(w) < 0) {
        throw InputError("node weight must be nonnegative, got " + rational_str(w));
    }
    weights_[static_cast<std::size_t>(v)] = std::move(w);
}

Rational Graph::total_weight() const {
    Rational total(0);
    for (const auto& w : weights_) {
        total += w;
    }
    return total;
}

int Graph::add_edge(NodeId u, NodeId v) {
    check_node(u, "add_edge");
    check_node(v, "add_edge");
    if (u == v) {
        throw InputError("self-loop at node " + std::to_string(u));
    }
    if (has_edge(u, v)) {
        throw InputError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    if (!directed_ && u > v) {
        std::swap(u, v);
    }
    const int idx = edge_count();
    edges_.push_back(Edge{u, v});
    auto insert = [&](NodeId at, NodeId nb, EdgeDir dir) {
        auto& list = adj_[static_cast<std::size_t>(at)];
        const auto pos = std::lower_bound(list.begin(), list.end(), nb,
                                          [](const IncidentEdge& e, NodeId x) { return e.neighbor < x; });
        list.insert(pos, IncidentEdge{nb, idx, dir});
    };
    insert(u, v, directed_ ? EdgeDir::Out : EdgeDir::None);
    insert(v, u, directed_ ? EdgeDir::In : EdgeDir::None);
    return idx;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    check_node(u, "has_edge");
    check_node(v, "has_edge");
    const auto& list = adj_[static_cast<std::size_t>(u)];
    const auto pos = std::lower_bound(list.begin(), list.end(), v,
                                      [](const IncidentEdge& e, NodeId x) { return e.neighbor < x; });
    return pos != list.end() && pos->neighbor == v;
}

std::span<const IncidentEdge> Graph::neighbors(NodeId v) const {
    check_node(v, "neighbors");
    return adj_[static_cast<std::size_t>(v)];
}

int Graph::degree(NodeId v) const {
    return static_cast<int>(neighbors(v).size());
}

int Graph::out_degree(NodeId v) const {
    int d = 0;
    for (const auto& e : neighbors(v)) {
        if (e.dir == EdgeDir::Out) {
            ++d;
        }
    }
    return d;
}

GraphStats Graph::stats() const {
    GraphStats s;
    for (NodeId v = 0; v < node_count(); ++v) {
        s.max_degree = std::max(s.max_degree, degree(v));
        if (directed_) {
            s.max_out_degree = std::max(s.max_out_degree, out_degree(v));
        }
    }
    s.declared_arboricity_bound = declared_arboricity_;
    return s;
}

bool Graph::operator==(const Graph& other) const {
    if (node_count() != other.node_count() || directed_ != other.directed_) {
        return false;
    }
    if (weights_ != other.weights_) {
        return false;
    }
    auto key = [](const Edge& e) { return std::pair<NodeId, NodeId>(e.a, e.b); };
    std::vector<std::pair<NodeId, NodeId>> lhs, rhs;
    lhs.reserve(edges_.size());
    rhs.reserve(other.edges_.size());
    for (const auto& e : edges_) {
        lhs.push_back(key(e));
    }
    for (const auto& e : other.edges_) {
        rhs.push_back(key(e));
    }
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    return lhs == rhs;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
    std::vector<NodeId> sorted(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (NodeId v : sorted) {
        if (v < 0 || v >= g.node_count()) {
            throw InputError("induced_subgraph: unknown node id " + std::to_string(v));
        }
    }
    std::unordered_map<NodeId, NodeId> to_local;
    to_local.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        to_local.emplace(sorted[i], static_cast<NodeId>(i));
    }
    Graph sub(static_cast<int>(sorted.size()), g.directed());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        sub.set_weight(static_cast<NodeId>(i), g.weight(sorted[i]));
    }
    for (const auto& e : g.edges()) {
        const auto ia = to_local.find(e.a);
        const auto ib = to_local.find(e.b);
        if (ia != to_local.end() && ib != to_local.end()) {
            sub.add_edge(ia->second, ib->second);
        }
    }
    if (g.declared_arboricity()) {
        sub.set_declared_arboricity(*g.declared_arboricity());
    }
    return InducedSubgraph{std::move(sub), std::move(sorted)};
}

} // namespace mwis
