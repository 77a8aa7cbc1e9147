#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mwis/graph.hpp"

namespace mwis {

// Edge-list text format:
//   line 1:        n m directed|undirected
//   next n lines:  id weight          (weight as integer p or rational p/q)
//   next m lines:  u v                (directed files: u -> v)
// '#' starts a comment; blank lines are ignored. External ids may be arbitrary
// nonnegative integers; they are remapped to dense 0-based ids on load and the
// mapping is returned alongside the graph.

struct LoadedGraph {
    Graph graph;
    std::vector<long long> original_ids; // dense id -> id in the file
};

LoadedGraph load_graph(std::istream& in, const std::string& name = "<stream>");
LoadedGraph load_graph_file(const std::string& path);

void save_graph(const Graph& g, std::ostream& out);
void save_graph_file(const Graph& g, const std::string& path);

/// Solution files: whitespace-separated node ids (same id space as the graph file).
std::vector<long long> load_node_set(std::istream& in, const std::string& name = "<stream>");
std::vector<long long> load_node_set_file(const std::string& path);

} // namespace mwis
