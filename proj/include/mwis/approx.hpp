#pragma once

#include <string>
#include <vector>

#include "mwis/coloring.hpp"
#include "mwis/graph.hpp"
#include "mwis/rational.hpp"
#include "mwis/sparse_set.hpp"

namespace mwis {

struct AlgoKnobs {
    bool unknown_alpha = false;    // run the arboricity-oblivious partition
    Rational gamma{0};             // 0: derive from eps as eps/(4+eps)
    Rational eps_prime{0};         // 0: derive from eps as eps/2
    bool verify_certificates = true;
};

/// Per-phase record of the generic algorithm (one entry per selection phase).
struct PhaseDiagnostics {
    int t = 0;
    long long set_size = 0;
    Rational set_weight;            // w(X_t)
    long long f_max = 0;            // f used by the phase's selection
    long long arb_bound = 0;        // ceil(a^{(k-t)/k})
    int beta_declared = 0;
    int beta_measured = 0;
    bool beta_pass = false;
    int defect_cert = 0;            // certified arbdefective out-degree
    int orientation_out_degree = 0; // certified selection out-degree
    long long bichromatic_edges = 0;
};

struct ApproxResult {
    std::string algorithm;
    std::vector<NodeId> solution; // independent in the input graph
    Rational claimed_ratio;
    Rational solution_weight;
    Rational total_weight;
    long long rounds = 0;
    std::size_t max_message_bits = 0;
    int layers = 0;
    long long colors = 0;
    int effective_k = 0; // phased algorithm: the k actually run after fallbacks
    std::vector<PhaseDiagnostics> phases;
    std::vector<Rational> phase_weights; // w(X_0), ..., w(X_k)
    bool certificates_ok = true;
    std::string certificate_detail;
    bool directed_bound_first = true;  // c is d-bounded on the increasing-edge graph
    bool directed_bound_second = true; // -c is d-bounded on G(X)
};

/// Layer partition -> per-layer (delta+1)-coloring -> composed coloring ->
/// f = delta selection. Independent floor((2+eps)*a)-approximation with
/// 2*floor((2+eps)*a)*w(X) >= w(V).
ApproxResult approx_basic(const Graph& g, int a, const Rational& eps, const AlgoKnobs& knobs = {});

/// Same pipeline, final step replaced by the color-splitting wrapper;
/// 2*floor((2+eps)*a)^2 ratio in O(sqrt(colors)) selection rounds.
ApproxResult approx_squared(const Graph& g, int a, const Rational& eps,
                            const AlgoKnobs& knobs = {});

/// k-1 sparsification phases (arbdefective layer coloring + selection with
/// f = ceil(4*a^{1/k})) followed by the basic algorithm on the residue;
/// (8^k * a)-approximation. Falls back to k-1 when the certified per-phase
/// bounds cannot support the next phase (tiny a).
ApproxResult approx_generic(const Graph& g, int a, int k, const AlgoKnobs& knobs = {});

/// k = ceil(1/tau): O(a)-approximation in O(a^tau log n) rounds.
ApproxResult approx_linear(const Graph& g, int a, const Rational& tau,
                           const AlgoKnobs& knobs = {});

/// k = floor((tau/3) log2 a): ratio 8^k * a <= a^{1+tau} (collapses to k=1
/// when the formula gives 0).
ApproxResult approx_alpha_power(const Graph& g, int a, const Rational& tau,
                                const AlgoKnobs& knobs = {});

/// Directed graphs with out-degree <= d: Linial O(d^2)-coloring, selection on
/// the edges oriented toward larger colors, then selection under -c on G(X).
/// 2d^2-approximation in O(d^2 + log* n) rounds.
ApproxResult approx_directed(const Graph& g, int d, const AlgoKnobs& knobs = {});

/// The Delta(1+eps) amplification relies on an external local-ratio
/// construction that is out of scope; always throws UnsupportedError.
ApproxResult approx_delta_eps(const Graph& g, const Rational& eps);

} // namespace mwis
