#pragma once

#include <span>
#include <string>
#include <vector>

#include "mwis/graph.hpp"

namespace mwis {

struct OracleResult {
    Rational opt_weight;
    std::vector<NodeId> witness; // lexicographically smallest optimum
    long long nodes_explored = 0;
};

/// Default cap for the exact solver, overridable via MWIS_ORACLE_CAP.
int oracle_cap_from_env();

constexpr int kOracleHardCap = 32;

/// Exact maximum weight independent set by branch and bound (include-first
/// DFS in ascending id order, so the recorded witness is the
/// lexicographically smallest optimum). Refuses graphs above the cap.
OracleResult exact_mwis(const Graph& g, int cap = -1);

/// Exact arboricity via the Nash-Williams density max_S ceil(m_S/(n_S-1))
/// over all node subsets; n <= 14 only.
int exact_arboricity(const Graph& g);

/// Degeneracy-based certified upper bound (within 2x of the arboricity),
/// usable at any size.
int arboricity_upper_bound(const Graph& g);

bool is_independent(const Graph& g, std::span<const NodeId> nodes);

struct RatioReport {
    bool independent = false;
    bool ratio_ok = false;
    Rational opt;
    Rational solution_weight;
    bool pass = false;
    std::string detail;
};

/// pass iff X is independent and q * w(X) >= OPT(G), exact rationals.
RatioReport check_ratio(const Graph& g, std::span<const NodeId> nodes, const Rational& q,
                        int cap = -1);

} // namespace mwis
