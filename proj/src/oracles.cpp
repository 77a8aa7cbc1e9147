#include "mwis/oracles.hpp"

#include <algorithm>
#include <cstdlib>

#include "mwis/errors.hpp"

namespace mwis {

int oracle_cap_from_env() {
    if (const char* env = std::getenv("MWIS_ORACLE_CAP")) {
        const int cap = std::atoi(env);
        if (cap >= 1) {
            return std::min(cap, kOracleHardCap);
        }
    }
    return 25;
}

namespace {

struct Searcher {
    const Graph& g;
    std::vector<std::uint64_t> adj; // bitmask adjacency, n <= 32
    std::vector<NodeId> current;
    std::vector<NodeId> best;
    Rational best_weight{-1};
    long long explored = 0;

    explicit Searcher(const Graph& graph) : g(graph) {
        adj.assign(static_cast<std::size_t>(g.node_count()), 0);
        for (const auto& e : g.edges()) {
            adj[static_cast<std::size_t>(e.a)] |= std::uint64_t{1} << e.b;
            adj[static_cast<std::size_t>(e.b)] |= std::uint64_t{1} << e.a;
        }
    }

    // Upper bound for the remaining nodes [v, n): a greedy matching relaxation.
    // Each matched pair contributes max of the two weights (x_u + x_v <= 1),
    // unmatched nodes contribute their full weight.
    Rational upper_bound(NodeId v, std::uint64_t blocked) {
        Rational bound(0);
        std::uint64_t matched = 0;
        for (NodeId u = v; u < g.node_count(); ++u) {
            const std::uint64_t bit = std::uint64_t{1} << u;
            if ((blocked & bit) || (matched & bit)) {
                continue;
            }
            NodeId partner = -1;
            for (NodeId x = u + 1; x < g.node_count(); ++x) {
                const std::uint64_t xb = std::uint64_t{1} << x;
                if ((adj[static_cast<std::size_t>(u)] & xb) && !(blocked & xb) && !(matched & xb)) {
                    partner = x;
                    break;
                }
            }
            if (partner >= 0) {
                matched |= std::uint64_t{1} << partner;
                bound += std::max(g.weight(u), g.weight(partner));
            } else {
                bound += g.weight(u);
            }
        }
        return bound;
    }

    void dfs(NodeId v, std::uint64_t blocked, const Rational& weight) {
        ++explored;
        if (v == g.node_count()) {
            if (weight > best_weight) {
                best_weight = weight;
                best = current;
            }
            return;
        }
        if (weight + upper_bound(v, blocked) <= best_weight) {
            return; // the first-found optimum is already lexicographically smallest
        }
        const std::uint64_t bit = std::uint64_t{1} << v;
        if (!(blocked & bit)) {
            current.push_back(v);
            dfs(v + 1, blocked | bit | adj[static_cast<std::size_t>(v)], weight + g.weight(v));
            current.pop_back();
        }
        dfs(v + 1, blocked | bit, weight);
    }
};

} // namespace

OracleResult exact_mwis(const Graph& g, int cap) {
    if (cap < 0) {
        cap = oracle_cap_from_env();
    }
    cap = std::min(cap, kOracleHardCap);
    if (g.node_count() > cap) {
        throw InputError("exact_mwis: n=" + std::to_string(g.node_count()) +
                         " exceeds the oracle cap " + std::to_string(cap));
    }
    Searcher searcher(g);
    searcher.dfs(0, 0, Rational(0));
    OracleResult result;
    result.opt_weight = searcher.best_weight;
    result.witness = searcher.best;
    result.nodes_explored = searcher.explored;
    return result;
}

int exact_arboricity(const Graph& g) {
    const int n = g.node_count();
    if (n > 14) {
        throw InputError("exact_arboricity: n=" + std::to_string(n) + " exceeds the cap of 14");
    }
    if (g.edge_count() == 0) {
        return 0;
    }
    std::vector<std::uint32_t> edge_mask;
    edge_mask.reserve(static_cast<std::size_t>(g.edge_count()));
    for (const auto& e : g.edges()) {
        edge_mask.push_back((std::uint32_t{1} << e.a) | (std::uint32_t{1} << e.b));
    }
    long long best_num = 1, best_den = 1; // max of m_S/(n_S-1), compared exactly
    for (std::uint32_t subset = 1; subset < (std::uint32_t{1} << n); ++subset) {
        const int ns = __builtin_popcount(subset);
        if (ns < 2) {
            continue;
        }
        long long ms = 0;
        for (const std::uint32_t mask : edge_mask) {
            if ((mask & subset) == mask) {
                ++ms;
            }
        }
        if (ms * best_den > best_num * (ns - 1)) {
            best_num = ms;
            best_den = ns - 1;
        }
    }
    return static_cast<int>((best_num + best_den - 1) / best_den);
}

int arboricity_upper_bound(const Graph& g) {
    // Degeneracy: repeatedly remove a minimum-degree node. Orienting each edge
    // toward the later-removed endpoint is acyclic with out-degree <= D, and
    // arboricity <= degeneracy <= 2*arboricity - 1.
    const int n = g.node_count();
    std::vector<int> degree(static_cast<std::size_t>(n));
    std::vector<bool> removed(static_cast<std::size_t>(n), false);
    for (NodeId v = 0; v < n; ++v) {
        degree[static_cast<std::size_t>(v)] = g.degree(v);
    }
    int degeneracy = 0;
    for (int step = 0; step < n; ++step) {
        NodeId pick = -1;
        for (NodeId v = 0; v < n; ++v) {
            if (!removed[static_cast<std::size_t>(v)] &&
                (pick < 0 || degree[static_cast<std::size_t>(v)] < degree[static_cast<std::size_t>(pick)])) {
                pick = v;
            }
        }
        degeneracy = std::max(degeneracy, degree[static_cast<std::size_t>(pick)]);
        removed[static_cast<std::size_t>(pick)] = true;
        for (const auto& ie : g.neighbors(pick)) {
            if (!removed[static_cast<std::size_t>(ie.neighbor)]) {
                --degree[static_cast<std::size_t>(ie.neighbor)];
            }
        }
    }
    return degeneracy;
}

bool is_independent(const Graph& g, std::span<const NodeId> nodes) {
    std::vector<bool> in(static_cast<std::size_t>(g.node_count()), false);
    for (NodeId v : nodes) {
        if (v < 0 || v >= g.node_count()) {
            throw InputError("is_independent: unknown node id " + std::to_string(v));
        }
        in[static_cast<std::size_t>(v)] = true;
    }
    for (const auto& e : g.edges()) {
        if (in[static_cast<std::size_t>(e.a)] && in[static_cast<std::size_t>(e.b)]) {
            return false;
        }
    }
    return true;
}

RatioReport check_ratio(const Graph& g, std::span<const NodeId> nodes, const Rational& q,
                        int cap) {
    RatioReport report;
    report.independent = is_independent(g, nodes);
    if (!report.independent) {
        for (const auto& e : g.edges()) {
            const bool a_in = std::find(nodes.begin(), nodes.end(), e.a) != nodes.end();
            const bool b_in = std::find(nodes.begin(), nodes.end(), e.b) != nodes.end();
            if (a_in && b_in) {
                report.detail = "solution contains both endpoints of edge " + std::to_string(e.a) +
                                "-" + std::to_string(e.b);
                break;
            }
        }
    }
    const OracleResult oracle = exact_mwis(g, cap);
    report.opt = oracle.opt_weight;
    for (NodeId v : nodes) {
        report.solution_weight += g.weight(v);
    }
    report.ratio_ok = q * report.solution_weight >= report.opt;
    if (!report.ratio_ok && report.detail.empty()) {
        report.detail = "q*w(X) = " + rational_str(q * report.solution_weight) + " < OPT = " +
                        rational_str(report.opt);
    }
    report.pass = report.independent && report.ratio_ok;
    return report;
}

} // namespace mwis
