#include "mwis/approx.hpp"

#include <algorithm>

#include "mwis/errors.hpp"
#include "mwis/oracles.hpp"

namespace mwis {

namespace {

struct UnknownParams {
    Rational gamma;
    Rational eps_prime;
};

UnknownParams resolve_unknown(const AlgoKnobs& knobs, const Rational& eps) {
    UnknownParams p;
    p.eps_prime = sgn(knobs.eps_prime) > 0 ? knobs.eps_prime : eps / 2;
    p.gamma = sgn(knobs.gamma) > 0 ? knobs.gamma : eps / (Rational(4) + eps);
    if ((Rational(2) + p.eps_prime) * (Rational(1) + p.gamma) > Rational(2) + eps) {
        throw InputError("unknown-alpha parameters violate (2+eps')(1+gamma) <= 2+eps");
    }
    return p;
}

PartitionRun partition_for(const Graph& g, int a, const Rational& eps, const AlgoKnobs& knobs) {
    if (knobs.unknown_alpha) {
        const UnknownParams p = resolve_unknown(knobs, eps);
        return be_partition_unknown_alpha(g, p.gamma, p.eps_prime, eps);
    }
    return be_partition(g, a, eps);
}

std::vector<int> layer_groups(const LayerPartition& partition) {
    std::vector<int> group(partition.layer.size());
    for (std::size_t v = 0; v < partition.layer.size(); ++v) {
        group[v] = partition.layer[v] - 1;
    }
    return group;
}

std::vector<int> layer_degree_bounds(const LayerPartition& partition) {
    std::vector<int> bounds(static_cast<std::size_t>(partition.layer_count), 0);
    if (partition.node_threshold.empty()) {
        for (auto& b : bounds) {
            b = partition.threshold;
        }
    } else {
        for (std::size_t v = 0; v < partition.layer.size(); ++v) {
            auto& b = bounds[static_cast<std::size_t>(partition.layer[v] - 1)];
            b = std::max(b, partition.node_threshold[v]);
        }
    }
    return bounds;
}

FSpec selection_f(const LayerPartition& partition, long long uniform_f) {
    if (partition.node_threshold.empty()) {
        return FSpec::uniform(uniform_f);
    }
    std::vector<long long> per_node(partition.node_threshold.size());
    for (std::size_t v = 0; v < per_node.size(); ++v) {
        per_node[v] = std::max(1, partition.node_threshold[v]);
    }
    return FSpec::per_node_values(std::move(per_node));
}

void run_certificate_checks(const Graph& g, const SparseSetOutcome& outcome, ApproxResult& result) {
    const DualCertificate cert = build_dual_certificate(g, outcome);
    const CertReport report = verify_certificate(g, outcome, cert);
    const StructureReport structure = verify_outcome_structure(g, outcome);
    orientation_certificate(g, outcome); // throws on violation
    if (!report.pass() || !structure.pass) {
        result.certificates_ok = false;
        if (result.certificate_detail.empty()) {
            result.certificate_detail = !report.pass() ? report.detail : structure.detail;
        }
    }
}

struct BasicPipeline {
    PartitionRun partition;
    GroupColoringRun coloring;
    BoundedColoring composed;
};

BasicPipeline basic_pipeline(const Graph& g, int a, const Rational& eps, const AlgoKnobs& knobs) {
    BasicPipeline pipe;
    pipe.partition = partition_for(g, a, eps, knobs);
    const auto group = layer_groups(pipe.partition.partition);
    const auto bounds = layer_degree_bounds(pipe.partition.partition);
    pipe.coloring = proper_coloring_within(g, group, bounds);
    pipe.composed = compose_layer_coloring(g, pipe.partition.partition, pipe.coloring.phi);
    return pipe;
}

void check_independent(const Graph& g, const std::vector<NodeId>& solution, const char* who) {
    if (!is_independent(g, solution)) {
        throw InternalError(std::string(who) + " produced a dependent solution");
    }
}

long long isqrt_floor(long long k) {
    long long r = 0;
    while ((r + 1) * (r + 1) <= k) {
        ++r;
    }
    return r;
}

} // namespace

ApproxResult approx_basic(const Graph& g, int a, const Rational& eps, const AlgoKnobs& knobs) {
    if (a < 1) {
        throw InputError("approx_basic: arboricity parameter must be >= 1");
    }
    if (sgn(eps) <= 0) {
        throw InputError("approx_basic: eps must be positive");
    }
    const long long delta = rational_floor_ll((Rational(2) + eps) * Rational(a));
    BasicPipeline pipe = basic_pipeline(g, a, eps, knobs);
    const SparseSetOutcome outcome =
        sparse_set_with(g, pipe.composed, selection_f(pipe.partition.partition, delta));

    ApproxResult result;
    result.algorithm = "basic";
    result.solution = outcome.selected;
    result.claimed_ratio = to_rational(delta);
    result.solution_weight = outcome.selected_weight(g);
    result.total_weight = g.total_weight();
    result.rounds = pipe.partition.rounds + pipe.coloring.rounds + outcome.trace.rounds_used;
    result.max_message_bits = std::max({pipe.partition.max_message_bits,
                                        pipe.coloring.max_message_bits,
                                        outcome.trace.max_message_bits});
    result.layers = pipe.partition.partition.layer_count;
    result.colors = outcome.colors_used;
    result.phase_weights = {result.total_weight, result.solution_weight};

    check_independent(g, result.solution, "approx_basic");
    if (2 * to_rational(delta) * result.solution_weight < result.total_weight) {
        throw InternalError("approx_basic: 2*delta*w(X) >= w(V) failed");
    }
    if (knobs.verify_certificates) {
        run_certificate_checks(g, outcome, result);
    }
    return result;
}

ApproxResult approx_squared(const Graph& g, int a, const Rational& eps, const AlgoKnobs& knobs) {
    if (a < 1) {
        throw InputError("approx_squared: arboricity parameter must be >= 1");
    }
    if (sgn(eps) <= 0) {
        throw InputError("approx_squared: eps must be positive");
    }
    const long long delta = rational_floor_ll((Rational(2) + eps) * Rational(a));
    BasicPipeline pipe = basic_pipeline(g, a, eps, knobs);

    // Flatten the (layer, phi) pairs order-preservingly into [0, k).
    const long long stride = pipe.partition.partition.threshold + 1;
    BoundedColoring flat;
    flat.beta = pipe.composed.beta;
    flat.color.resize(pipe.composed.color.size());
    for (std::size_t v = 0; v < flat.color.size(); ++v) {
        const Color& c = pipe.composed.color[v];
        flat.color[v] = Color::flat((c.hi - 1) * stride + c.lo);
    }
    const TwoLevelResult two = two_level_approx(g, flat);

    ApproxResult result;
    result.algorithm = "squared";
    result.solution = two.solution;
    result.claimed_ratio = 2 * to_rational(delta) * to_rational(delta);
    result.solution_weight = Rational(0);
    for (NodeId v : two.solution) {
        result.solution_weight += g.weight(v);
    }
    result.total_weight = g.total_weight();
    result.rounds = pipe.partition.rounds + pipe.coloring.rounds + two.rounds;
    result.max_message_bits = std::max({pipe.partition.max_message_bits,
                                        pipe.coloring.max_message_bits, two.max_message_bits});
    result.layers = pipe.partition.partition.layer_count;
    result.colors = two.k;
    Rational intermediate_weight(0);
    for (NodeId v : two.intermediate) {
        intermediate_weight += g.weight(v);
    }
    result.phase_weights = {result.total_weight, intermediate_weight, result.solution_weight};
    check_independent(g, result.solution, "approx_squared");
    const long long sqrt_floor = isqrt_floor(two.k);
    if (two.first_colors > sqrt_floor + 1 || two.second_colors > sqrt_floor + 1) {
        throw InternalError("approx_squared: split colorings exceed floor(sqrt(k))+1 colors");
    }
    if (knobs.verify_certificates) {
        Graph g1(g.node_count(), false);
        // Reconstruct the first-stage graph for certificate checks.
        const long long split = two.split;
        for (NodeId v = 0; v < g.node_count(); ++v) {
            g1.set_weight(v, g.weight(v));
        }
        for (const auto& e : g.edges()) {
            if (flat.color[static_cast<std::size_t>(e.a)].lo / split !=
                flat.color[static_cast<std::size_t>(e.b)].lo / split) {
                g1.add_edge(e.a, e.b);
            }
        }
        run_certificate_checks(g1, two.first, result);
        const auto sub = induced_subgraph(g, two.intermediate);
        run_certificate_checks(sub.graph, two.second, result);
    }
    return result;
}

namespace {

struct PhaseFallback : Error {
    using Error::Error;
};

ApproxResult run_generic(const Graph& g, int a, int requested_k, int k, const AlgoKnobs& knobs);

// One sparsification phase: partition G(X_t), arbdefective-color the layers,
// select on the bichromatic edges.
struct PhaseOutcome {
    std::vector<NodeId> next; // parent ids
    PhaseDiagnostics diag;
    long long rounds = 0;
    std::size_t max_bits = 0;
    SparseSetOutcome outcome;
    Graph run_graph{0};
};

PhaseOutcome run_phase(const Graph& g, const std::vector<NodeId>& x_t, int t, int a, int k,
                       const AlgoKnobs& knobs) {
    PhaseOutcome phase;
    phase.diag.t = t;
    phase.diag.set_size = static_cast<long long>(x_t.size());

    const auto sub = induced_subgraph(g, x_t);
    const long long arb_bound = ceil_kth_root(rational_pow(Rational(a), static_cast<unsigned long>(k - t)), k);
    const long long next_bound =
        ceil_kth_root(rational_pow(Rational(a), static_cast<unsigned long>(k - t - 1)), k);
    phase.diag.arb_bound = arb_bound;

    const Rational eps(1, 100);
    PartitionRun part;
    try {
        part = knobs.unknown_alpha
                   ? be_partition_unknown_alpha(sub.graph, resolve_unknown(knobs, eps).gamma,
                                                resolve_unknown(knobs, eps).eps_prime, eps)
                   : be_partition(sub.graph, static_cast<int>(arb_bound), eps);
    } catch (const PreconditionError& e) {
        throw PhaseFallback(e.what());
    }

    const auto group = layer_groups(part.partition);
    const auto degree_bounds = layer_degree_bounds(part.partition);

    // Color budget p = ceil(12 * a^{1/k}); in unknown mode each layer derives
    // it from its own (discounted) estimate.
    const long long p_known =
        ceil_kth_root(rational_pow(Rational(12), static_cast<unsigned long>(k)) * Rational(a), k);
    std::vector<int> group_p(static_cast<std::size_t>(part.partition.layer_count),
                             knobs.unknown_alpha ? 1 : static_cast<int>(p_known));
    FSpec fspec = FSpec::uniform(
        ceil_kth_root(rational_pow(Rational(4), static_cast<unsigned long>(k)) * Rational(a), k));
    if (knobs.unknown_alpha) {
        const Rational discount = Rational(1) + resolve_unknown(knobs, eps).gamma;
        std::vector<long long> per_node(static_cast<std::size_t>(sub.graph.node_count()), 1);
        for (NodeId v = 0; v < sub.graph.node_count(); ++v) {
            const Rational est =
                part.partition.alpha_estimate[static_cast<std::size_t>(v)] / discount;
            const int root = k - t;
            const long long f_v = std::max<long long>(
                ceil_kth_root(rational_pow(Rational(4), static_cast<unsigned long>(root)) * est, root), 1);
            per_node[static_cast<std::size_t>(v)] = f_v;
            const long long p_v = std::max<long long>(
                ceil_kth_root(rational_pow(Rational(12), static_cast<unsigned long>(root)) * est, root), 1);
            auto& slot = group_p[static_cast<std::size_t>(part.partition.layer[static_cast<std::size_t>(v)] - 1)];
            slot = std::max(slot, static_cast<int>(p_v));
        }
        fspec = FSpec::per_node_values(std::move(per_node));
    }

    const auto arb = arbdefective_within(sub.graph, group, degree_bounds, group_p);
    int defect = 0;
    const int max_p = *std::max_element(group_p.begin(), group_p.end());
    arbdefective_certificates(sub.graph, arb.color, arb.decision_rank, max_p, &defect);
    phase.diag.defect_cert = defect;

    // c_t = (layer, arbdefective color); proper exactly on the bichromatic edges.
    BoundedColoring ct;
    ct.color.resize(static_cast<std::size_t>(sub.graph.node_count()));
    for (NodeId v = 0; v < sub.graph.node_count(); ++v) {
        ct.color[static_cast<std::size_t>(v)] =
            Color{part.partition.layer[static_cast<std::size_t>(v)],
                  arb.color[static_cast<std::size_t>(v)]};
    }
    ct.beta = static_cast<int>(3 * arb_bound);
    phase.diag.beta_declared = ct.beta;

    Graph bt(sub.graph.node_count(), false);
    for (NodeId v = 0; v < sub.graph.node_count(); ++v) {
        bt.set_weight(v, sub.graph.weight(v));
    }
    for (const auto& e : sub.graph.edges()) {
        if (ct.color[static_cast<std::size_t>(e.a)] != ct.color[static_cast<std::size_t>(e.b)]) {
            bt.add_edge(e.a, e.b);
        }
    }
    phase.diag.bichromatic_edges = bt.edge_count();

    const BetaReport beta_report = verify_beta_bounded(bt, ct);
    phase.diag.beta_measured = beta_report.max_larger;
    phase.diag.beta_pass = beta_report.pass;
    if (!beta_report.pass) {
        throw PhaseFallback("phase coloring not " + std::to_string(ct.beta) + "-bounded: " +
                            beta_report.detail);
    }
    if (fspec.mode == FSpec::Mode::Uniform && fspec.f > ct.beta) {
        throw PhaseFallback("phase f exceeds beta");
    }

    SparseSetOutcome outcome = sparse_set_with(bt, ct, fspec);
    phase.diag.f_max = outcome.f_max;
    const Orientation orient = orientation_certificate(bt, outcome);
    phase.diag.orientation_out_degree = orient.max_out_degree;

    // The next phase peels with parameter next_bound; the certified bound
    // defect + selection out-degree must stay within it.
    if (defect + orient.max_out_degree > next_bound) {
        throw PhaseFallback("certified arboricity " + std::to_string(defect + orient.max_out_degree) +
                            " exceeds next bound " + std::to_string(next_bound));
    }

    for (NodeId v : outcome.selected) {
        phase.next.push_back(sub.to_parent[static_cast<std::size_t>(v)]);
    }
    phase.rounds = part.rounds + arb.rounds + outcome.trace.rounds_used;
    phase.max_bits = std::max({part.max_message_bits, arb.max_message_bits,
                               outcome.trace.max_message_bits});
    phase.outcome = std::move(outcome);
    phase.run_graph = std::move(bt);
    return phase;
}

ApproxResult run_generic(const Graph& g, int a, int requested_k, int k, const AlgoKnobs& knobs) {
    if (k > 1 && ceil_kth_root(Rational(a), k) < 2) {
        return run_generic(g, a, requested_k, k - 1, knobs);
    }
    ApproxResult result;
    result.algorithm = "generic";
    result.effective_k = k;
    result.total_weight = g.total_weight();
    result.phase_weights.push_back(result.total_weight);

    std::vector<NodeId> current(static_cast<std::size_t>(g.node_count()));
    for (NodeId v = 0; v < g.node_count(); ++v) {
        current[static_cast<std::size_t>(v)] = v;
    }
    try {
        for (int t = 0; t <= k - 2; ++t) {
            PhaseOutcome phase = run_phase(g, current, t, a, k, knobs);
            phase.diag.set_weight = result.phase_weights.back();
            result.rounds += phase.rounds;
            result.max_message_bits = std::max(result.max_message_bits, phase.max_bits);
            if (knobs.verify_certificates) {
                run_certificate_checks(phase.run_graph, phase.outcome, result);
            }
            current = phase.next;
            Rational w(0);
            for (NodeId v : current) {
                w += g.weight(v);
            }
            result.phase_weights.push_back(w);
            result.phases.push_back(phase.diag);
        }
    } catch (const PhaseFallback&) {
        if (k > 1) {
            return run_generic(g, a, requested_k, k - 1, knobs);
        }
        throw;
    }

    const auto residue = induced_subgraph(g, current);
    const long long tail_bound = ceil_kth_root(Rational(a), k);
    const ApproxResult tail =
        approx_basic(residue.graph, static_cast<int>(tail_bound), Rational(1, 100), knobs);
    for (NodeId v : tail.solution) {
        result.solution.push_back(residue.to_parent[static_cast<std::size_t>(v)]);
    }
    result.rounds += tail.rounds;
    result.max_message_bits = std::max(result.max_message_bits, tail.max_message_bits);
    result.layers = tail.layers;
    result.colors = tail.colors;
    result.certificates_ok = result.certificates_ok && tail.certificates_ok;
    if (result.certificate_detail.empty()) {
        result.certificate_detail = tail.certificate_detail;
    }
    result.solution_weight = Rational(0);
    for (NodeId v : result.solution) {
        result.solution_weight += g.weight(v);
    }
    result.phase_weights.push_back(result.solution_weight);
    result.claimed_ratio = rational_pow(Rational(8), static_cast<unsigned long>(requested_k)) * Rational(a);
    check_independent(g, result.solution, "approx_generic");

    // Exact per-phase chain: w(X_t) <= 8 * ceil(a^{1/k}) * w(X_{t+1}).
    const Rational factor = to_rational(8 * ceil_kth_root(Rational(a), k));
    for (std::size_t i = 0; i + 1 < result.phase_weights.size(); ++i) {
        if (result.phase_weights[i] > factor * result.phase_weights[i + 1]) {
            throw InternalError("approx_generic: phase weight chain violated at t=" +
                                std::to_string(i));
        }
    }
    return result;
}

} // namespace

ApproxResult approx_generic(const Graph& g, int a, int k, const AlgoKnobs& knobs) {
    if (a < 1) {
        throw InputError("approx_generic: arboricity parameter must be >= 1");
    }
    if (k < 1) {
        throw InputError("approx_generic: k must be >= 1");
    }
    return run_generic(g, a, k, k, knobs);
}

ApproxResult approx_linear(const Graph& g, int a, const Rational& tau, const AlgoKnobs& knobs) {
    if (sgn(tau) <= 0) {
        throw InputError("approx_linear: tau must be positive");
    }
    const long long k = rational_ceil_ll(Rational(1) / tau);
    ApproxResult result = approx_generic(g, a, static_cast<int>(k), knobs);
    result.algorithm = "linear";
    return result;
}

ApproxResult approx_alpha_power(const Graph& g, int a, const Rational& tau,
                                const AlgoKnobs& knobs) {
    if (sgn(tau) <= 0) {
        throw InputError("approx_alpha_power: tau must be positive");
    }
    if (a < 1) {
        throw InputError("approx_alpha_power: arboricity parameter must be >= 1");
    }
    // k = floor((tau/3) * log2(a)): largest k with 2^{3kq} <= a^p for tau = p/q.
    const mpz_class p = tau.get_num();
    const mpz_class q = tau.get_den();
    long long k = 0;
    while (true) {
        mpz_class lhs, rhs;
        mpz_ui_pow_ui(lhs.get_mpz_t(), 2,
                      static_cast<unsigned long>(3 * (k + 1) * q.get_ui()));
        mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(a),
                      static_cast<unsigned long>(p.get_ui()));
        if (lhs <= rhs) {
            ++k;
        } else {
            break;
        }
    }
    const bool collapsed = k < 1;
    if (collapsed) {
        k = 1; // the paper's analysis needs k >= 1; k=1 is always valid
    }
    ApproxResult result = approx_generic(g, a, static_cast<int>(k), knobs);
    result.algorithm = "alpha-power";
    return result;
}

ApproxResult approx_directed(const Graph& g, int d, const AlgoKnobs& knobs) {
    if (!g.directed()) {
        throw InputError("approx_directed: graph must be directed");
    }
    if (d < 1) {
        throw InputError("approx_directed: d must be >= 1");
    }
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (g.out_degree(v) > d) {
            throw InputError("approx_directed: node " + std::to_string(v) + " has out-degree " +
                             std::to_string(g.out_degree(v)) + " > d=" + std::to_string(d));
        }
    }
    const ColoringRun lin = linial_coloring(g);

    // Edges directed toward the endpoint with the larger color.
    Graph inc(g.node_count(), false);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        inc.set_weight(v, g.weight(v));
    }
    for (const auto& e : g.edges()) {
        if (lin.coloring.color[static_cast<std::size_t>(e.a)] <
            lin.coloring.color[static_cast<std::size_t>(e.b)]) {
            inc.add_edge(e.a, e.b);
        }
    }
    BoundedColoring c = lin.coloring;
    c.beta = d;
    ApproxResult result;
    result.algorithm = "directed";
    const BetaReport first_bound = verify_beta_bounded(inc, c);
    result.directed_bound_first = first_bound.pass;
    if (!first_bound.pass) {
        throw InternalError("approx_directed: coloring is not d-bounded on the increasing graph: " +
                            first_bound.detail);
    }
    const SparseSetOutcome first = sparse_set(inc, c, d);

    const auto sub = induced_subgraph(g, first.selected);
    BoundedColoring neg;
    neg.beta = d;
    neg.color.resize(static_cast<std::size_t>(sub.graph.node_count()));
    for (NodeId v = 0; v < sub.graph.node_count(); ++v) {
        neg.color[static_cast<std::size_t>(v)] =
            -lin.coloring.color[static_cast<std::size_t>(sub.to_parent[static_cast<std::size_t>(v)])];
    }
    const BetaReport second_bound = verify_beta_bounded(sub.graph, neg);
    result.directed_bound_second = second_bound.pass;
    if (!second_bound.pass) {
        throw InternalError("approx_directed: -c is not d-bounded on G(X): " + second_bound.detail);
    }
    const SparseSetOutcome second = sparse_set(sub.graph, neg, d);

    for (NodeId v : second.selected) {
        result.solution.push_back(sub.to_parent[static_cast<std::size_t>(v)]);
    }
    result.claimed_ratio = 2 * Rational(d) * Rational(d);
    result.solution_weight = Rational(0);
    for (NodeId v : result.solution) {
        result.solution_weight += g.weight(v);
    }
    result.total_weight = g.total_weight();
    result.rounds = lin.rounds + first.trace.rounds_used + second.trace.rounds_used;
    result.max_message_bits = std::max({lin.max_message_bits, first.trace.max_message_bits,
                                        second.trace.max_message_bits});
    result.colors = lin.coloring.color_count();
    result.phase_weights = {result.total_weight, first.selected_weight(inc),
                            result.solution_weight};
    check_independent(g, result.solution, "approx_directed");
    if (knobs.verify_certificates) {
        run_certificate_checks(inc, first, result);
        run_certificate_checks(sub.graph, second, result);
    }
    return result;
}

ApproxResult approx_delta_eps(const Graph&, const Rational&) {
    throw UnsupportedError(
        "the Delta(1+eps) amplification requires an external local-ratio reduction "
        "and is intentionally not implemented");
}

} // namespace mwis
