#include "mwis/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "mwis/errors.hpp"

namespace mwis {

namespace {

struct LineReader {
    std::istream& in;
    std::string name;
    int line_no = 0;

    // Returns the next non-empty, non-comment line.
    bool next(std::string& out) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) {
                line.erase(hash);
            }
            std::istringstream probe(line);
            std::string tok;
            if (probe >> tok) {
                out = line;
                return true;
            }
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(name + ":" + std::to_string(line_no) + ": " + msg);
    }
};

} // namespace

LoadedGraph load_graph(std::istream& in, const std::string& name) {
    LineReader reader{in, name};
    std::string line;
    if (!reader.next(line)) {
        reader.fail("missing header line");
    }
    long long n = 0, m = 0;
    std::string mode, extra;
    {
        std::istringstream hs(line);
        if (!(hs >> n >> m >> mode) || (hs >> extra)) {
            reader.fail("malformed header, expected 'n m directed|undirected'");
        }
    }
    if (n < 0 || m < 0) {
        reader.fail("negative counts in header");
    }
    bool directed = false;
    if (mode == "directed") {
        directed = true;
    } else if (mode != "undirected") {
        reader.fail("unknown mode '" + mode + "'");
    }

    Graph g(static_cast<int>(n), directed);
    std::vector<long long> original_ids;
    original_ids.reserve(static_cast<std::size_t>(n));
    std::unordered_map<long long, NodeId> to_dense;
    to_dense.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        if (!reader.next(line)) {
            reader.fail("expected " + std::to_string(n) + " node lines, got " + std::to_string(i));
        }
        std::istringstream ls(line);
        long long id = 0;
        std::string wtext;
        if (!(ls >> id >> wtext) || (ls >> extra)) {
            reader.fail("malformed node line, expected 'id weight'");
        }
        if (id < 0) {
            reader.fail("node ids must be nonnegative");
        }
        if (!to_dense.emplace(id, static_cast<NodeId>(i)).second) {
            reader.fail("duplicate node id " + std::to_string(id));
        }
        Rational w;
        try {
            w = parse_rational(wtext);
        } catch (const ParseError& e) {
            reader.fail(e.what());
        }
        if (sgn(w) < 0) {
            reader.fail("negative weight " + wtext);
        }
        g.set_weight(static_cast<NodeId>(i), std::move(w));
        original_ids.push_back(id);
    }
    for (long long i = 0; i < m; ++i) {
        if (!reader.next(line)) {
            reader.fail("expected " + std::to_string(m) + " edge lines, got " + std::to_string(i));
        }
        std::istringstream ls(line);
        long long u = 0, v = 0;
        if (!(ls >> u >> v) || (ls >> extra)) {
            reader.fail("malformed edge line, expected 'u v'");
        }
        const auto iu = to_dense.find(u);
        const auto iv = to_dense.find(v);
        if (iu == to_dense.end() || iv == to_dense.end()) {
            reader.fail("edge references unknown node id");
        }
        try {
            g.add_edge(iu->second, iv->second);
        } catch (const InputError& e) {
            reader.fail(e.what());
        }
    }
    if (reader.next(line)) {
        reader.fail("trailing content after " + std::to_string(m) + " edges");
    }
    return LoadedGraph{std::move(g), std::move(original_ids)};
}

LoadedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open graph file '" + path + "'");
    }
    return load_graph(in, path);
}

void save_graph(const Graph& g, std::ostream& out) {
    out << g.node_count() << ' ' << g.edge_count() << ' '
        << (g.directed() ? "directed" : "undirected") << '\n';
    for (NodeId v = 0; v < g.node_count(); ++v) {
        out << v << ' ' << rational_str(g.weight(v)) << '\n';
    }
    for (const auto& e : g.edges()) {
        out << e.a << ' ' << e.b << '\n';
    }
}

void save_graph_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot open output file '" + path + "'");
    }
    save_graph(g, out);
}

std::vector<long long> load_node_set(std::istream& in, const std::string& name) {
    std::vector<long long> ids;
    long long id = 0;
    while (in >> id) {
        ids.push_back(id);
    }
    if (!in.eof()) {
        throw ParseError(name + ": solution file must contain whitespace-separated integers");
    }
    return ids;
}

std::vector<long long> load_node_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open solution file '" + path + "'");
    }
    return load_node_set(in, path);
}

} // namespace mwis
