#include "mwis/sparse_set.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mwis/errors.hpp"

namespace mwis {

const char* status_str(NodeStatus s) {
    switch (s) {
        case NodeStatus::Selected:
            return "selected";
        case NodeStatus::EliminatedStage1:
            return "eliminated_stage1";
        case NodeStatus::EliminatedStage2:
            return "eliminated_stage2";
    }
    return "?";
}

Rational SparseSetOutcome::selected_weight(const Graph& g) const {
    Rational total(0);
    for (NodeId v : selected) {
        total += g.weight(v);
    }
    return total;
}

std::string SparseSetOutcome::dump(const Graph& g) const {
    std::ostringstream os;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        os << v << ' ' << status_str(status[static_cast<std::size_t>(v)]) << ' '
           << rational_str(lambda[static_cast<std::size_t>(v)]) << '\n';
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& edge = g.edge(e);
        os << edge.a << ' ' << edge.b << ' ' << rational_str(edge_dual[static_cast<std::size_t>(e)])
           << '\n';
    }
    return os.str();
}

namespace {

class SparseSetProgram : public NodeProgram {
  public:
    SparseSetProgram(const std::vector<Color>* colors, const FSpec* fspec)
        : colors_(colors), fspec_(fspec) {}

    void initialize(const LocalView& view) override {
        id_ = view.id;
        weight_ = view.weight;
        const Color mine = (*colors_)[static_cast<std::size_t>(view.id)];
        for (int s = 0; s < static_cast<int>(view.edges.size()); ++s) {
            const Color theirs =
                (*colors_)[static_cast<std::size_t>(view.edges[static_cast<std::size_t>(s)].neighbor)];
            if (theirs == mine) {
                throw InternalError("sparse_set ran on an improper coloring");
            }
            (theirs > mine ? larger_slots_ : smaller_slots_).push_back(s);
        }
        pending_duals_ = static_cast<int>(smaller_slots_.size());
        switch (fspec_->mode) {
            case FSpec::Mode::Uniform:
                f_ = fspec_->f;
                break;
            case FSpec::Mode::PerNode:
                f_ = fspec_->per_node[static_cast<std::size_t>(view.id)];
                break;
            case FSpec::Mode::LocalL:
                f_ = std::max<long long>(1, static_cast<long long>(larger_slots_.size()));
                break;
        }
    }

    RoundOutput on_round(const std::vector<InMessage>& inbox) override {
        for (const auto& msg : inbox) {
            if (const auto* dual = std::get_if<Rational>(&msg.payload)) {
                dual_sum_ += *dual;
                --pending_duals_;
            } else {
                (std::get<StatusToken>(msg.payload) == StatusToken::Selected ? in_ : out_) += 1;
            }
        }
        RoundOutput out;
        if (stage_ == 1 && pending_duals_ == 0) {
            lambda_ = weight_ - dual_sum_;
            if (sgn(lambda_) < 0) {
                lambda_ = 0;
            }
            if (!larger_slots_.empty()) {
                dual_out_ = lambda_ * to_rational(f_) / to_rational(static_cast<long long>(larger_slots_.size()));
                for (int s : larger_slots_) {
                    out.messages.push_back(OutMessage{s, dual_out_});
                }
            }
            if (sgn(lambda_) == 0) {
                status_ = NodeStatus::EliminatedStage1;
                announce(out, StatusToken::Eliminated);
                stage_ = 3;
                out.halt = true;
                return out;
            }
            stage_ = 2;
        }
        if (stage_ == 2 && in_ + out_ == static_cast<int>(larger_slots_.size())) {
            if (larger_slots_.empty()) {
                // Survived stage 1 with no larger-colored neighbors.
                status_ = NodeStatus::Selected;
            } else if (f_ * in_ >= static_cast<long long>(larger_slots_.size())) {
                status_ = NodeStatus::EliminatedStage2;
            } else {
                status_ = NodeStatus::Selected;
            }
            announce(out, status_ == NodeStatus::Selected ? StatusToken::Selected
                                                          : StatusToken::Eliminated);
            stage_ = 3;
            out.halt = true;
        }
        return out;
    }

    NodeStatus status() const { return status_; }
    const Rational& lambda() const { return lambda_; }
    const Rational& dual_out() const { return dual_out_; }
    long long f() const { return f_; }

  private:
    void announce(RoundOutput& out, StatusToken token) const {
        for (int s : smaller_slots_) {
            out.messages.push_back(OutMessage{s, token});
        }
    }

    const std::vector<Color>* colors_;
    const FSpec* fspec_;
    NodeId id_ = -1;
    Rational weight_;
    std::vector<int> larger_slots_;  // L(v)
    std::vector<int> smaller_slots_; // S(v)
    int pending_duals_ = 0;
    Rational dual_sum_;
    Rational lambda_;
    Rational dual_out_;
    long long f_ = 1;
    int in_ = 0;
    int out_ = 0;
    int stage_ = 1;
    NodeStatus status_ = NodeStatus::Selected;
};

std::vector<int> larger_count(const Graph& g, const BoundedColoring& c) {
    std::vector<int> count(static_cast<std::size_t>(g.node_count()), 0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        for (const auto& ie : g.neighbors(v)) {
            if (c.color[static_cast<std::size_t>(ie.neighbor)] > c.color[static_cast<std::size_t>(v)]) {
                ++count[static_cast<std::size_t>(v)];
            }
        }
    }
    return count;
}

SparseSetOutcome run_sparse_set(const Graph& g, const BoundedColoring& c, const FSpec& fspec) {
    if (static_cast<int>(c.color.size()) != g.node_count()) {
        throw InputError("sparse_set: coloring size does not match graph");
    }
    const BetaReport report = verify_beta_bounded(g, c);
    if (fspec.mode == FSpec::Mode::Uniform) {
        if (!report.pass) {
            throw CertificateError("sparse_set: coloring fails verification: " + report.detail);
        }
        if (fspec.f < 1 || fspec.f > c.beta) {
            throw InputError("sparse_set: need 1 <= f <= beta, got f=" + std::to_string(fspec.f) +
                             ", beta=" + std::to_string(c.beta));
        }
    } else {
        // The local/per-node variants only need properness.
        if (!report.proper) {
            throw CertificateError("sparse_set: coloring not proper: " + report.detail);
        }
        if (fspec.mode == FSpec::Mode::PerNode) {
            if (static_cast<int>(fspec.per_node.size()) != g.node_count()) {
                throw InputError("sparse_set: per-node f size mismatch");
            }
            for (long long f : fspec.per_node) {
                if (f < 1) {
                    throw InputError("sparse_set: per-node f values must be >= 1");
                }
            }
        }
    }

    const int n = g.node_count();
    std::vector<std::unique_ptr<NodeProgram>> programs;
    std::vector<SparseSetProgram*> typed(static_cast<std::size_t>(n));
    programs.reserve(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) {
        auto p = std::make_unique<SparseSetProgram>(&c.color, &fspec);
        typed[static_cast<std::size_t>(v)] = p.get();
        programs.push_back(std::move(p));
    }
    SparseSetOutcome outcome;
    outcome.colors_used = c.color_count();
    outcome.trace =
        run_engine(g, programs, default_max_rounds(g, outcome.colors_used));
    if (outcome.trace.timed_out) {
        throw InternalError("sparse_set did not terminate");
    }
    if (outcome.trace.rounds_used > 2 * outcome.colors_used + 2) {
        throw InternalError("sparse_set exceeded the 2k+2 round bound: " +
                            std::to_string(outcome.trace.rounds_used) + " rounds for k=" +
                            std::to_string(outcome.colors_used));
    }

    outcome.status.resize(static_cast<std::size_t>(n));
    outcome.lambda.resize(static_cast<std::size_t>(n));
    outcome.f_node.resize(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) {
        const auto* p = typed[static_cast<std::size_t>(v)];
        outcome.status[static_cast<std::size_t>(v)] = p->status();
        outcome.lambda[static_cast<std::size_t>(v)] = p->lambda();
        outcome.f_node[static_cast<std::size_t>(v)] = p->f();
        outcome.f_max = std::max(outcome.f_max, p->f());
        if (p->status() == NodeStatus::Selected) {
            outcome.selected.push_back(v);
        }
    }
    outcome.edge_dual.resize(static_cast<std::size_t>(g.edge_count()));
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& edge = g.edge(e);
        const NodeId lower = c.color[static_cast<std::size_t>(edge.a)] < c.color[static_cast<std::size_t>(edge.b)]
                                 ? edge.a
                                 : edge.b;
        outcome.edge_dual[static_cast<std::size_t>(e)] = typed[static_cast<std::size_t>(lower)]->dual_out();
    }
    outcome.beta = c.beta;
    outcome.mode = fspec.mode;
    outcome.coloring = c;
    return outcome;
}

} // namespace

SparseSetOutcome sparse_set(const Graph& g, const BoundedColoring& c, long long f) {
    return run_sparse_set(g, c, FSpec::uniform(f));
}

SparseSetOutcome sparse_set_local_f(const Graph& g, const BoundedColoring& c) {
    return run_sparse_set(g, c, FSpec::local_larger_set());
}

SparseSetOutcome sparse_set_with(const Graph& g, const BoundedColoring& c, const FSpec& fspec) {
    return run_sparse_set(g, c, fspec);
}

DualCertificate build_dual_certificate(const Graph& g, const SparseSetOutcome& outcome) {
    if (static_cast<int>(outcome.status.size()) != g.node_count() ||
        static_cast<int>(outcome.edge_dual.size()) != g.edge_count()) {
        throw InputError("build_dual_certificate: outcome does not match graph");
    }
    const auto larger = larger_count(g, outcome.coloring);
    DualCertificate cert;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (larger[static_cast<std::size_t>(v)] == 0) {
            cert.virtual_edge_nodes.push_back(v);
            cert.virtual_dual.push_back(outcome.lambda[static_cast<std::size_t>(v)] *
                                        to_rational(outcome.f_node[static_cast<std::size_t>(v)]));
        }
    }
    return cert;
}

CertReport verify_certificate(const Graph& g, const SparseSetOutcome& outcome,
                              const DualCertificate& cert) {
    CertReport report;
    report.nonnegative = true;
    for (int e = 0; e < g.edge_count() && report.nonnegative; ++e) {
        if (sgn(outcome.edge_dual[static_cast<std::size_t>(e)]) < 0) {
            report.nonnegative = false;
            report.detail = "negative dual on edge " + std::to_string(g.edge(e).a) + "-" +
                            std::to_string(g.edge(e).b);
        }
    }
    for (std::size_t i = 0; i < cert.virtual_dual.size() && report.nonnegative; ++i) {
        if (sgn(cert.virtual_dual[i]) < 0) {
            report.nonnegative = false;
            report.detail = "negative virtual dual at node " + std::to_string(cert.virtual_edge_nodes[i]);
        }
    }

    std::vector<Rational> incident(static_cast<std::size_t>(g.node_count()), Rational(0));
    Rational total(0);
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& edge = g.edge(e);
        incident[static_cast<std::size_t>(edge.a)] += outcome.edge_dual[static_cast<std::size_t>(e)];
        incident[static_cast<std::size_t>(edge.b)] += outcome.edge_dual[static_cast<std::size_t>(e)];
        total += outcome.edge_dual[static_cast<std::size_t>(e)];
    }
    for (std::size_t i = 0; i < cert.virtual_edge_nodes.size(); ++i) {
        incident[static_cast<std::size_t>(cert.virtual_edge_nodes[i])] += cert.virtual_dual[i];
        total += cert.virtual_dual[i];
    }
    report.dual_total = total;

    report.feasible = true;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (incident[static_cast<std::size_t>(v)] < g.weight(v)) {
            report.feasible = false;
            if (report.detail.empty()) {
                report.detail = "dual constraint violated at node " + std::to_string(v) + ": " +
                                rational_str(incident[static_cast<std::size_t>(v)]) + " < w=" +
                                rational_str(g.weight(v));
            }
            break;
        }
    }

    const Rational fw = to_rational(outcome.f_max) * outcome.selected_weight(g);
    report.objective_ok = fw >= total;
    if (!report.objective_ok && report.detail.empty()) {
        report.detail = "dual objective " + rational_str(total) + " exceeds f*w(X) = " +
                        rational_str(fw);
    }
    report.halving_ok = 2 * fw >= g.total_weight();
    if (!report.halving_ok && report.detail.empty()) {
        report.detail = "2f*w(X) = " + rational_str(2 * fw) + " below w(V) = " +
                        rational_str(g.total_weight());
    }
    return report;
}

StructureReport verify_outcome_structure(const Graph& g, const SparseSetOutcome& outcome) {
    StructureReport rep;
    const auto& c = outcome.coloring;
    auto fail = [&](std::string why) {
        rep.pass = false;
        rep.detail = std::move(why);
        return rep;
    };
    std::vector<Rational> smaller_sum(static_cast<std::size_t>(g.node_count()), Rational(0));
    std::vector<int> larger(static_cast<std::size_t>(g.node_count()), 0);
    std::vector<int> selected_larger(static_cast<std::size_t>(g.node_count()), 0);
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& edge = g.edge(e);
        const bool a_lower =
            c.color[static_cast<std::size_t>(edge.a)] < c.color[static_cast<std::size_t>(edge.b)];
        const NodeId lower = a_lower ? edge.a : edge.b;
        const NodeId upper = a_lower ? edge.b : edge.a;
        smaller_sum[static_cast<std::size_t>(upper)] += outcome.edge_dual[static_cast<std::size_t>(e)];
        ++larger[static_cast<std::size_t>(lower)];
        if (outcome.status[static_cast<std::size_t>(upper)] == NodeStatus::Selected) {
            ++selected_larger[static_cast<std::size_t>(lower)];
        }
    }
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const std::size_t i = static_cast<std::size_t>(v);
        Rational expect = g.weight(v) - smaller_sum[i];
        if (sgn(expect) < 0) {
            expect = 0;
        }
        if (outcome.lambda[i] != expect) {
            return fail("lambda mismatch at node " + std::to_string(v));
        }
        const bool stage1 = smaller_sum[i] >= g.weight(v);
        if (stage1 != (outcome.status[i] == NodeStatus::EliminatedStage1)) {
            return fail("stage-1 characterization failed at node " + std::to_string(v));
        }
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& edge = g.edge(e);
        const bool a_lower =
            c.color[static_cast<std::size_t>(edge.a)] < c.color[static_cast<std::size_t>(edge.b)];
        const NodeId lower = a_lower ? edge.a : edge.b;
        const std::size_t li = static_cast<std::size_t>(lower);
        const Rational expect = outcome.lambda[li] * to_rational(outcome.f_node[li]) /
                                to_rational(larger[li]);
        if (outcome.edge_dual[static_cast<std::size_t>(e)] != expect) {
            return fail("dual assignment mismatch on edge " + std::to_string(edge.a) + "-" +
                        std::to_string(edge.b));
        }
        if (outcome.status[li] == NodeStatus::EliminatedStage1 &&
            sgn(outcome.edge_dual[static_cast<std::size_t>(e)]) != 0) {
            return fail("stage-1-eliminated node " + std::to_string(lower) +
                        " carries a nonzero dual toward L(v)");
        }
    }
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const std::size_t i = static_cast<std::size_t>(v);
        const long long f = outcome.f_node[i];
        switch (outcome.status[i]) {
            case NodeStatus::Selected:
                if (f * selected_larger[i] >= std::max(larger[i], 1)) {
                    return fail("selected node " + std::to_string(v) +
                                " violates the sparsity property");
                }
                break;
            case NodeStatus::EliminatedStage2:
                if (larger[i] == 0) {
                    return fail("node with empty L(v) eliminated in stage 2: " + std::to_string(v));
                }
                if (f * selected_larger[i] < larger[i]) {
                    return fail("stage-2 characterization failed at node " + std::to_string(v));
                }
                break;
            case NodeStatus::EliminatedStage1:
                break;
        }
    }
    rep.pass = true;
    return rep;
}

Orientation orientation_certificate(const Graph& g, const SparseSetOutcome& outcome) {
    Orientation o;
    o.nodes = outcome.selected;
    std::vector<bool> in_x(static_cast<std::size_t>(g.node_count()), false);
    for (NodeId v : outcome.selected) {
        in_x[static_cast<std::size_t>(v)] = true;
    }
    std::vector<int> out_deg(static_cast<std::size_t>(g.node_count()), 0);
    std::vector<int> larger(static_cast<std::size_t>(g.node_count()), 0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        for (const auto& ie : g.neighbors(v)) {
            if (outcome.coloring.color[static_cast<std::size_t>(ie.neighbor)] >
                outcome.coloring.color[static_cast<std::size_t>(v)]) {
                ++larger[static_cast<std::size_t>(v)];
            }
        }
    }
    for (const auto& e : g.edges()) {
        if (!in_x[static_cast<std::size_t>(e.a)] || !in_x[static_cast<std::size_t>(e.b)]) {
            continue;
        }
        const bool a_lower = outcome.coloring.color[static_cast<std::size_t>(e.a)] <
                             outcome.coloring.color[static_cast<std::size_t>(e.b)];
        const NodeId tail = a_lower ? e.a : e.b; // toward the larger color
        const NodeId head = a_lower ? e.b : e.a;
        o.directed_edges.emplace_back(tail, head);
        ++out_deg[static_cast<std::size_t>(tail)];
    }
    // Colors strictly increase along every directed edge, so no cycle exists.
    o.acyclic = true;
    for (NodeId v : outcome.selected) {
        const std::size_t i = static_cast<std::size_t>(v);
        o.max_out_degree = std::max(o.max_out_degree, out_deg[i]);
        const bool ok = outcome.mode == FSpec::Mode::Uniform
                            ? outcome.f_node[i] * out_deg[i] < outcome.beta
                            : outcome.f_node[i] * out_deg[i] < std::max(larger[i], 1);
        if (!ok) {
            throw InternalError("orientation certificate out-degree bound violated at node " +
                                std::to_string(v) + " (out-degree " + std::to_string(out_deg[i]) +
                                ")");
        }
    }
    return o;
}

TwoLevelResult two_level_approx(const Graph& g, const BoundedColoring& c) {
    if (static_cast<int>(c.color.size()) != g.node_count()) {
        throw InputError("two_level_approx: coloring size mismatch");
    }
    long long k = 0;
    for (const Color& col : c.color) {
        if (col.hi != 0 || col.lo < 0) {
            throw InputError("two_level_approx: requires flat colors in [0, k)");
        }
        k = std::max(k, col.lo + 1);
    }
    const BetaReport pre = verify_beta_bounded(g, c);
    if (!pre.pass) {
        throw CertificateError("two_level_approx: coloring fails verification: " + pre.detail);
    }
    if (k == 0) {
        k = 1;
    }
    const long long s = static_cast<long long>(std::ceil(std::sqrt(static_cast<double>(k))));
    const long long split = s * s >= k ? s : s + 1; // guard against fp rounding
    const int beta_eff = std::max(c.beta, 1);

    std::vector<long long> c1(static_cast<std::size_t>(g.node_count()));
    std::vector<long long> c2(static_cast<std::size_t>(g.node_count()));
    for (NodeId v = 0; v < g.node_count(); ++v) {
        c1[static_cast<std::size_t>(v)] = c.color[static_cast<std::size_t>(v)].lo / split;
        c2[static_cast<std::size_t>(v)] = c.color[static_cast<std::size_t>(v)].lo % split;
    }

    // Bichromatic edges with respect to c1.
    Graph g1(g.node_count(), false);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        g1.set_weight(v, g.weight(v));
    }
    for (const auto& e : g.edges()) {
        if (c1[static_cast<std::size_t>(e.a)] != c1[static_cast<std::size_t>(e.b)]) {
            g1.add_edge(e.a, e.b);
        }
    }
    BoundedColoring col1;
    col1.beta = beta_eff;
    col1.color.resize(static_cast<std::size_t>(g.node_count()));
    for (NodeId v = 0; v < g.node_count(); ++v) {
        col1.color[static_cast<std::size_t>(v)] = Color::flat(c1[static_cast<std::size_t>(v)]);
    }

    TwoLevelResult result;
    result.k = k;
    result.split = split;
    result.first = sparse_set(g1, col1, beta_eff);
    result.intermediate = result.first.selected;

    const auto sub = induced_subgraph(g, result.intermediate);
    BoundedColoring col2;
    col2.beta = beta_eff;
    col2.color.resize(static_cast<std::size_t>(sub.graph.node_count()));
    for (NodeId v = 0; v < sub.graph.node_count(); ++v) {
        col2.color[static_cast<std::size_t>(v)] =
            Color::flat(c2[static_cast<std::size_t>(sub.to_parent[static_cast<std::size_t>(v)])]);
    }
    result.second = sparse_set(sub.graph, col2, beta_eff);
    for (NodeId v : result.second.selected) {
        result.solution.push_back(sub.to_parent[static_cast<std::size_t>(v)]);
    }
    result.rounds = result.first.trace.rounds_used + result.second.trace.rounds_used;
    result.max_message_bits =
        std::max(result.first.trace.max_message_bits, result.second.trace.max_message_bits);
    result.first_colors = result.first.colors_used;
    result.second_colors = result.second.colors_used;

    // X' must be independent in g: edges of G(X) are monochromatic under c1,
    // bichromatic under c2, and the second f=beta run returns an independent set.
    for (const auto& e : g.edges()) {
        const bool both = std::binary_search(result.solution.begin(), result.solution.end(), e.a) &&
                          std::binary_search(result.solution.begin(), result.solution.end(), e.b);
        if (both) {
            throw InternalError("two_level_approx produced a dependent set");
        }
    }
    return result;
}

} // namespace mwis
