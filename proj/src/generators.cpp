#include "mwis/generators.hpp"

#include <algorithm>
#include <numeric>

#include "mwis/errors.hpp"

namespace mwis {

long long Rng::uniform_int(long long lo, long long hi) {
    if (lo > hi) {
        throw InputError("uniform_int: empty range");
    }
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(next() % span);
}

namespace {

void assign_weights(Graph& g, Rng& rng, WeightRange wr) {
    long long lo = wr.min, hi = wr.max;
    if (lo == 0 && hi == 0) {
        lo = 1;
        hi = std::max(1, g.node_count());
    }
    if (lo < 0 || hi < lo) {
        throw InputError("invalid weight range");
    }
    for (NodeId v = 0; v < g.node_count(); ++v) {
        g.set_weight(v, to_rational(rng.uniform_int(lo, hi)));
    }
}

} // namespace

Graph gen_forest_union(int n, int a, std::uint64_t seed, WeightRange weights) {
    if (n < 1) {
        throw InputError("gen_forest_union: n must be >= 1");
    }
    if (a < 1) {
        throw InputError("gen_forest_union: a must be >= 1");
    }
    Rng rng(seed);
    Graph g(n, false);
    std::vector<NodeId> order(static_cast<std::size_t>(n));
    for (int forest = 0; forest < a; ++forest) {
        std::iota(order.begin(), order.end(), 0);
        for (int i = n - 1; i > 0; --i) {
            std::swap(order[static_cast<std::size_t>(i)],
                      order[static_cast<std::size_t>(rng.uniform_int(0, i))]);
        }
        // Random recursive tree over the shuffled order; edges already used by
        // earlier forests are skipped after a few attempts, which only makes
        // the forest sparser.
        for (int j = 1; j < n; ++j) {
            const NodeId v = order[static_cast<std::size_t>(j)];
            for (int attempt = 0; attempt < 8; ++attempt) {
                const NodeId u = order[static_cast<std::size_t>(rng.uniform_int(0, j - 1))];
                if (!g.has_edge(u, v)) {
                    g.add_edge(u, v);
                    break;
                }
            }
        }
    }
    assign_weights(g, rng, weights);
    g.set_declared_arboricity(a);
    return g;
}

Graph gen_random_dout(int n, int d, std::uint64_t seed, WeightRange weights) {
    if (n < 1) {
        throw InputError("gen_random_dout: n must be >= 1");
    }
    if (d < 0 || d >= n) {
        throw InputError("gen_random_dout: need 0 <= d < n");
    }
    Rng rng(seed);
    Graph g(n, true);
    for (NodeId v = 0; v < n; ++v) {
        int added = 0;
        for (int attempt = 0; attempt < 4 * d && added < d; ++attempt) {
            const NodeId u = static_cast<NodeId>(rng.uniform_int(0, n - 1));
            if (u != v && !g.has_edge(v, u)) {
                g.add_edge(v, u);
                ++added;
            }
        }
    }
    assign_weights(g, rng, weights);
    return g;
}

Graph gen_oriented_ring(int n, std::uint64_t seed, WeightRange weights) {
    if (n < 3) {
        throw InputError("gen_oriented_ring: n must be >= 3");
    }
    Rng rng(seed);
    Graph g(n, true);
    for (NodeId v = 0; v < n; ++v) {
        g.add_edge(v, (v + 1) % n);
    }
    assign_weights(g, rng, weights);
    return g;
}

} // namespace mwis
