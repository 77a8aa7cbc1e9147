#include "mwis/coloring.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "mwis/errors.hpp"

namespace mwis {

long long BoundedColoring::color_count() const {
    std::set<Color> distinct(color.begin(), color.end());
    return static_cast<long long>(distinct.size());
}

std::string BoundedColoring::table() const {
    std::ostringstream os;
    for (std::size_t v = 0; v < color.size(); ++v) {
        os << v << ' ' << color_str(color[v]) << '\n';
    }
    return os.str();
}

std::string LayerPartition::table() const {
    std::ostringstream os;
    for (std::size_t v = 0; v < layer.size(); ++v) {
        os << v << ' ' << layer[v] << '\n';
    }
    return os.str();
}

BetaReport verify_beta_bounded(const Graph& g, const BoundedColoring& c) {
    BetaReport report;
    if (static_cast<int>(c.color.size()) != g.node_count()) {
        report.detail = "coloring size does not match graph";
        return report;
    }
    report.proper = true;
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& edge = g.edge(e);
        if (c.color[static_cast<std::size_t>(edge.a)] == c.color[static_cast<std::size_t>(edge.b)]) {
            report.proper = false;
            report.violating_edge = e;
            report.detail = "monochromatic edge " + std::to_string(edge.a) + "-" +
                            std::to_string(edge.b) + " (color " +
                            color_str(c.color[static_cast<std::size_t>(edge.a)]) + ")";
            break;
        }
    }
    for (NodeId v = 0; v < g.node_count(); ++v) {
        int larger = 0;
        for (const auto& ie : g.neighbors(v)) {
            if (c.color[static_cast<std::size_t>(ie.neighbor)] > c.color[static_cast<std::size_t>(v)]) {
                ++larger;
            }
        }
        report.max_larger = std::max(report.max_larger, larger);
    }
    report.pass = report.proper && report.max_larger <= c.beta;
    if (report.proper && !report.pass) {
        report.detail = "max |L(v)| = " + std::to_string(report.max_larger) +
                        " exceeds declared beta = " + std::to_string(c.beta);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Linial-style reduction
// ---------------------------------------------------------------------------

namespace {

long long smallest_prime_above(long long x) {
    long long q = std::max<long long>(x + 1, 2);
    for (;; ++q) {
        bool prime = true;
        for (long long d = 2; d * d <= q; ++d) {
            if (q % d == 0) {
                prime = false;
                break;
            }
        }
        if (prime) {
            return q;
        }
    }
}

bool ipow_at_least(long long q, int e, long long m) {
    long long acc = 1;
    for (int i = 0; i < e; ++i) {
        if (acc >= (m + q - 1) / q) {
            return true;
        }
        acc *= q;
    }
    return acc >= m;
}

struct LinialStep {
    long long q = 0;
    int k = 0;
};

// Reduction schedule from a universe of `m` colors against degree bound D.
// Each step maps a proper m-coloring to a proper q^2-coloring via the
// polynomial cover-free family over F_q (q prime, q > D*k, q^{k+1} >= m).
// Stops when no step shrinks the palette; the fixpoint is < 16*max(D,1)^2.
std::vector<LinialStep> linial_schedule(long long universe, long long degree_bound) {
    std::vector<LinialStep> steps;
    const long long D = std::max<long long>(degree_bound, 1);
    long long m = universe;
    while (m > 1) {
        long long q = 0;
        int k = 0;
        for (k = 1;; ++k) {
            q = smallest_prime_above(D * k);
            if (ipow_at_least(q, k + 1, m)) {
                break;
            }
        }
        if (q * q >= m) {
            break;
        }
        steps.push_back(LinialStep{q, k});
        m = q * q;
    }
    return steps;
}

// Base-q digits of x, least significant first, k+1 coefficients.
void digits_of(long long x, long long q, int k, std::vector<long long>& out) {
    out.assign(static_cast<std::size_t>(k) + 1, 0);
    for (int i = 0; i <= k && x > 0; ++i) {
        out[static_cast<std::size_t>(i)] = x % q;
        x /= q;
    }
}

long long poly_eval(const std::vector<long long>& coeff, long long a, long long q) {
    long long acc = 0;
    for (std::size_t i = coeff.size(); i-- > 0;) {
        acc = (acc * a + coeff[i]) % q;
    }
    return acc;
}

long long linial_next_color(long long mine, const std::vector<long long>& neighbors,
                            const LinialStep& step) {
    std::vector<long long> my_coeff, other_coeff;
    digits_of(mine, step.q, step.k, my_coeff);
    std::vector<bool> bad(static_cast<std::size_t>(step.q), false);
    for (long long nb : neighbors) {
        if (nb == mine) {
            throw InternalError("linial step fed a monochromatic pair");
        }
        digits_of(nb, step.q, step.k, other_coeff);
        for (long long a = 0; a < step.q; ++a) {
            if (!bad[static_cast<std::size_t>(a)] &&
                poly_eval(my_coeff, a, step.q) == poly_eval(other_coeff, a, step.q)) {
                bad[static_cast<std::size_t>(a)] = true;
            }
        }
    }
    for (long long a = 0; a < step.q; ++a) {
        if (!bad[static_cast<std::size_t>(a)]) {
            return a * step.q + poly_eval(my_coeff, a, step.q);
        }
    }
    throw InternalError("linial step found no free point; degree bound too small");
}

class LinialProgram : public NodeProgram {
  public:
    LinialProgram(const std::vector<LinialStep>* steps, const std::vector<int>* group,
                  bool directed)
        : steps_(steps), group_(group), directed_(directed) {}

    void initialize(const LocalView& view) override {
        current_ = view.id;
        active_ = group_ == nullptr || (*group_)[static_cast<std::size_t>(view.id)] >= 0;
        const int my_group = group_ ? (*group_)[static_cast<std::size_t>(view.id)] : 0;
        for (int s = 0; s < static_cast<int>(view.edges.size()); ++s) {
            const auto& ie = view.edges[static_cast<std::size_t>(s)];
            if (group_ && (*group_)[static_cast<std::size_t>(ie.neighbor)] != my_group) {
                continue;
            }
            // Against whom we reduce (need their colors) / to whom we announce.
            if (!directed_ || ie.dir == EdgeDir::Out) {
                listen_slots_.push_back(s);
            }
            if (!directed_ || ie.dir == EdgeDir::In) {
                announce_slots_.push_back(s);
            }
        }
        received_.reserve(listen_slots_.size());
    }

    RoundOutput on_round(const std::vector<InMessage>& inbox) override {
        ++round_;
        RoundOutput out;
        if (!active_ || steps_->empty()) {
            out.halt = true;
            return out;
        }
        for (const auto& msg : inbox) {
            received_.push_back(std::get<Color>(msg.payload).lo);
        }
        const int total = static_cast<int>(steps_->size());
        if (round_ == 1) {
            announce(out);
            return out;
        }
        if (static_cast<int>(received_.size()) != static_cast<int>(listen_slots_.size())) {
            throw InternalError("linial lockstep broken at node");
        }
        current_ = linial_next_color(current_, received_, (*steps_)[static_cast<std::size_t>(round_ - 2)]);
        received_.clear();
        if (round_ - 1 == total) {
            out.halt = true;
        } else {
            announce(out);
        }
        return out;
    }

    long long color() const { return current_; }

  private:
    void announce(RoundOutput& out) const {
        out.messages.reserve(announce_slots_.size());
        for (int s : announce_slots_) {
            out.messages.push_back(OutMessage{s, Color::flat(current_)});
        }
    }

    const std::vector<LinialStep>* steps_;
    const std::vector<int>* group_;
    bool directed_;
    bool active_ = true;
    long long current_ = 0;
    int round_ = 0;
    std::vector<int> listen_slots_;
    std::vector<int> announce_slots_;
    std::vector<long long> received_;
};

// ---------------------------------------------------------------------------
// Greedy descending color reduction
// ---------------------------------------------------------------------------

class ReduceProgram : public NodeProgram {
  public:
    ReduceProgram(const std::vector<Color>* schedule, const std::vector<Color>* input,
                  const std::vector<int>* group)
        : schedule_(schedule), input_(input), group_(group) {}

    void initialize(const LocalView& view) override {
        current_ = (*input_)[static_cast<std::size_t>(view.id)];
        active_ = group_ == nullptr || (*group_)[static_cast<std::size_t>(view.id)] >= 0;
        if (!active_) {
            return;
        }
        const int my_group = group_ ? (*group_)[static_cast<std::size_t>(view.id)] : 0;
        for (int s = 0; s < static_cast<int>(view.edges.size()); ++s) {
            const auto& ie = view.edges[static_cast<std::size_t>(s)];
            if (!group_ || (*group_)[static_cast<std::size_t>(ie.neighbor)] == my_group) {
                peer_slots_.push_back(s);
            }
        }
        const auto pos = std::find(schedule_->begin(), schedule_->end(), current_);
        if (pos == schedule_->end()) {
            throw InternalError("reduce schedule missing a node's color");
        }
        my_round_ = static_cast<int>(pos - schedule_->begin()) + 2;
    }

    RoundOutput on_round(const std::vector<InMessage>& inbox) override {
        ++round_;
        RoundOutput out;
        if (!active_) {
            out.halt = true;
            return out;
        }
        for (const auto& msg : inbox) {
            peer_color_[msg.slot] = std::get<Color>(msg.payload);
        }
        if (round_ == 1) {
            for (int s : peer_slots_) {
                out.messages.push_back(OutMessage{s, current_});
            }
            return out;
        }
        if (round_ == my_round_) {
            std::set<long long> used;
            for (const auto& [slot, col] : peer_color_) {
                if (col.hi == 0) {
                    used.insert(col.lo);
                }
            }
            long long pick = 0;
            while (used.count(pick)) {
                ++pick;
            }
            current_ = Color::flat(pick);
            for (int s : peer_slots_) {
                out.messages.push_back(OutMessage{s, current_});
            }
            out.halt = true;
        }
        return out;
    }

    Color color() const { return current_; }

  private:
    const std::vector<Color>* schedule_;
    const std::vector<Color>* input_;
    const std::vector<int>* group_;
    bool active_ = true;
    Color current_;
    int round_ = 0;
    int my_round_ = -1;
    std::vector<int> peer_slots_;
    std::map<int, Color> peer_color_;
};

} // namespace

// ---------------------------------------------------------------------------
// Public coloring operations
// ---------------------------------------------------------------------------

namespace {

struct LinialWithinResult {
    std::vector<long long> colors;
    long long rounds = 0;
    std::size_t max_bits = 0;
};

// One engine run: Linial reduction restricted to same-group neighbors, all
// groups in parallel. group id < 0 marks inactive nodes. Every group shares
// the degree bound of its schedule.
LinialWithinResult linial_within(const Graph& g, const std::vector<int>* group,
                                 const std::vector<std::vector<LinialStep>>& schedules,
                                 const std::vector<int>& schedule_of_group, bool directed) {
    const int n = g.node_count();
    std::vector<std::unique_ptr<NodeProgram>> programs;
    std::vector<LinialProgram*> typed(static_cast<std::size_t>(n));
    programs.reserve(static_cast<std::size_t>(n));
    static const std::vector<LinialStep> kNoSteps;
    for (NodeId v = 0; v < n; ++v) {
        const int gid = group ? (*group)[static_cast<std::size_t>(v)] : 0;
        const std::vector<LinialStep>* steps =
            gid >= 0 ? &schedules[static_cast<std::size_t>(schedule_of_group[static_cast<std::size_t>(gid)])]
                     : &kNoSteps;
        auto p = std::make_unique<LinialProgram>(steps, group, directed);
        typed[static_cast<std::size_t>(v)] = p.get();
        programs.push_back(std::move(p));
    }
    std::size_t longest = 1;
    for (const auto& s : schedules) {
        longest = std::max(longest, s.size() + 1);
    }
    const Trace trace = run_engine(g, programs, static_cast<int>(longest) + 2);
    if (trace.timed_out) {
        throw InternalError("linial run did not converge within its schedule");
    }
    LinialWithinResult result;
    result.colors.resize(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) {
        result.colors[static_cast<std::size_t>(v)] = typed[static_cast<std::size_t>(v)]->color();
    }
    result.rounds = trace.rounds_used;
    result.max_bits = trace.max_message_bits;
    return result;
}

struct ReduceWithinResult {
    std::vector<Color> colors;
    long long rounds = 0;
    std::size_t max_bits = 0;
};

ReduceWithinResult reduce_within(const Graph& g, const std::vector<int>* group,
                                 const std::vector<Color>& input) {
    const int n = g.node_count();
    // Descending occupied colors per group; the per-node schedule drives the
    // highest-color-recolors-first order.
    std::map<int, std::set<Color>> occupied;
    for (NodeId v = 0; v < n; ++v) {
        const int gid = group ? (*group)[static_cast<std::size_t>(v)] : 0;
        if (gid >= 0) {
            occupied[gid].insert(input[static_cast<std::size_t>(v)]);
        }
    }
    std::map<int, std::vector<Color>> schedule;
    std::size_t longest = 0;
    for (const auto& [gid, colors] : occupied) {
        std::vector<Color> desc(colors.rbegin(), colors.rend());
        longest = std::max(longest, desc.size());
        schedule.emplace(gid, std::move(desc));
    }
    std::vector<std::unique_ptr<NodeProgram>> programs;
    std::vector<ReduceProgram*> typed(static_cast<std::size_t>(n));
    programs.reserve(static_cast<std::size_t>(n));
    static const std::vector<Color> kEmpty;
    for (NodeId v = 0; v < n; ++v) {
        const int gid = group ? (*group)[static_cast<std::size_t>(v)] : 0;
        const std::vector<Color>* sched = gid >= 0 ? &schedule.at(gid) : &kEmpty;
        auto p = std::make_unique<ReduceProgram>(sched, &input, group);
        typed[static_cast<std::size_t>(v)] = p.get();
        programs.push_back(std::move(p));
    }
    const Trace trace = run_engine(g, programs, static_cast<int>(longest) + 4);
    if (trace.timed_out) {
        throw InternalError("color reduction did not finish on schedule");
    }
    ReduceWithinResult result;
    result.colors.resize(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) {
        result.colors[static_cast<std::size_t>(v)] = typed[static_cast<std::size_t>(v)]->color();
    }
    result.rounds = trace.rounds_used;
    result.max_bits = trace.max_message_bits;
    return result;
}

void check_group_proper(const Graph& g, const std::vector<int>* group,
                        const std::vector<Color>& colors, const char* what) {
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& edge = g.edge(e);
        const int ga = group ? (*group)[static_cast<std::size_t>(edge.a)] : 0;
        const int gb = group ? (*group)[static_cast<std::size_t>(edge.b)] : 0;
        if (ga >= 0 && ga == gb &&
            colors[static_cast<std::size_t>(edge.a)] == colors[static_cast<std::size_t>(edge.b)]) {
            throw InternalError(std::string(what) + ": improper at edge " + std::to_string(edge.a) +
                                "-" + std::to_string(edge.b));
        }
    }
}

int computed_max_larger(const Graph& g, const std::vector<Color>& colors) {
    int max_larger = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        int larger = 0;
        for (const auto& ie : g.neighbors(v)) {
            if (colors[static_cast<std::size_t>(ie.neighbor)] > colors[static_cast<std::size_t>(v)]) {
                ++larger;
            }
        }
        max_larger = std::max(max_larger, larger);
    }
    return max_larger;
}

} // namespace

ColoringRun linial_coloring(const Graph& g) {
    const GraphStats stats = g.stats();
    const int degree_bound = g.directed() ? stats.max_out_degree : stats.max_degree;
    ColoringRun run;
    run.coloring.color.resize(static_cast<std::size_t>(g.node_count()));
    if (degree_bound == 0) {
        // No edges constrain anything; everyone may share color 0.
        for (auto& c : run.coloring.color) {
            c = Color::flat(0);
        }
        run.coloring.beta = 0;
        return run;
    }
    std::vector<std::vector<LinialStep>> schedules{linial_schedule(g.node_count(), degree_bound)};
    std::vector<int> schedule_of_group{0};
    const auto res = linial_within(g, nullptr, schedules, schedule_of_group, g.directed());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        run.coloring.color[static_cast<std::size_t>(v)] = Color::flat(res.colors[static_cast<std::size_t>(v)]);
    }
    check_group_proper(g, nullptr, run.coloring.color, "linial_coloring");
    run.coloring.beta = computed_max_larger(g, run.coloring.color);
    run.rounds = res.rounds;
    run.max_message_bits = res.max_bits;
    return run;
}

ColoringRun reduce_colors(const Graph& g, const BoundedColoring& c) {
    BetaReport pre = verify_beta_bounded(g, c);
    if (!pre.proper) {
        throw CertificateError("reduce_colors: input coloring not proper: " + pre.detail);
    }
    const auto res = reduce_within(g, nullptr, c.color);
    ColoringRun run;
    run.coloring.color = res.colors;
    check_group_proper(g, nullptr, run.coloring.color, "reduce_colors");
    const int delta = g.stats().max_degree;
    if (run.coloring.color_count() > delta + 1) {
        throw InternalError("reduce_colors produced more than Delta+1 colors");
    }
    run.coloring.beta = computed_max_larger(g, run.coloring.color);
    run.rounds = res.rounds;
    run.max_message_bits = res.max_bits;
    return run;
}

GroupColoringRun proper_coloring_within(const Graph& g, const std::vector<int>& group,
                                        const std::vector<int>& group_degree) {
    const int n = g.node_count();
    std::map<long long, int> schedule_index; // degree bound -> schedule id
    std::vector<std::vector<LinialStep>> schedules;
    std::vector<int> schedule_of_group(group_degree.size());
    for (std::size_t gid = 0; gid < group_degree.size(); ++gid) {
        const long long d = group_degree[gid];
        auto it = schedule_index.find(d);
        if (it == schedule_index.end()) {
            it = schedule_index.emplace(d, static_cast<int>(schedules.size())).first;
            schedules.push_back(linial_schedule(n, d));
        }
        schedule_of_group[gid] = it->second;
    }
    const auto lin = linial_within(g, &group, schedules, schedule_of_group, false);
    std::vector<Color> lin_colors(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) {
        lin_colors[static_cast<std::size_t>(v)] = Color::flat(lin.colors[static_cast<std::size_t>(v)]);
    }
    check_group_proper(g, &group, lin_colors, "layer linial");
    const auto red = reduce_within(g, &group, lin_colors);
    check_group_proper(g, &group, red.colors, "layer reduction");
    GroupColoringRun run;
    run.phi.resize(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) {
        run.phi[static_cast<std::size_t>(v)] = red.colors[static_cast<std::size_t>(v)].lo;
    }
    run.rounds = lin.rounds + red.rounds;
    run.max_message_bits = std::max(lin.max_bits, red.max_bits);
    return run;
}

// ---------------------------------------------------------------------------
// Peeling partitions
// ---------------------------------------------------------------------------

namespace {

class PeelProgram : public NodeProgram {
  public:
    explicit PeelProgram(int threshold) : threshold_(threshold) {}

    void initialize(const LocalView& view) override {
        remaining_ = static_cast<int>(view.edges.size());
        slots_ = static_cast<int>(view.edges.size());
    }

    RoundOutput on_round(const std::vector<InMessage>& inbox) override {
        ++round_;
        remaining_ -= static_cast<int>(inbox.size());
        RoundOutput out;
        if (remaining_ <= threshold_) {
            layer_ = round_;
            out.messages.reserve(static_cast<std::size_t>(slots_));
            for (int s = 0; s < slots_; ++s) {
                out.messages.push_back(OutMessage{s, std::int64_t{1}});
            }
            out.halt = true;
        }
        return out;
    }

    int layer() const { return layer_; } // 0 = never peeled

  private:
    int threshold_ = 0;
    int remaining_ = 0;
    int slots_ = 0;
    int round_ = 0;
    int layer_ = 0;
};

struct PeelResult {
    std::vector<int> layer; // 0 = stuck
    int layer_count = 0;
    long long rounds = 0;
    std::size_t max_bits = 0;
    bool complete = true;
};

PeelResult run_peel(const Graph& g, int threshold) {
    const int n = g.node_count();
    std::vector<std::unique_ptr<NodeProgram>> programs;
    std::vector<PeelProgram*> typed(static_cast<std::size_t>(n));
    programs.reserve(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) {
        auto p = std::make_unique<PeelProgram>(threshold);
        typed[static_cast<std::size_t>(v)] = p.get();
        programs.push_back(std::move(p));
    }
    const Trace trace = run_engine(g, programs, n + 2, RunOptions{.stop_when_quiescent = true});
    PeelResult result;
    result.layer.resize(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) {
        result.layer[static_cast<std::size_t>(v)] = typed[static_cast<std::size_t>(v)]->layer();
        result.layer_count = std::max(result.layer_count, result.layer[static_cast<std::size_t>(v)]);
        result.complete = result.complete && result.layer[static_cast<std::size_t>(v)] > 0;
    }
    result.rounds = trace.rounds_used;
    result.max_bits = trace.max_message_bits;
    return result;
}

void verify_partition_invariant(const Graph& g, const std::vector<int>& layer,
                                const std::vector<int>& per_node_threshold) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
        int later = 0;
        for (const auto& ie : g.neighbors(v)) {
            if (layer[static_cast<std::size_t>(ie.neighbor)] >= layer[static_cast<std::size_t>(v)]) {
                ++later;
            }
        }
        if (later > per_node_threshold[static_cast<std::size_t>(v)]) {
            throw InternalError("layer partition invariant violated at node " + std::to_string(v) +
                                ": " + std::to_string(later) + " later-or-equal neighbors > " +
                                std::to_string(per_node_threshold[static_cast<std::size_t>(v)]));
        }
    }
}

} // namespace

PartitionRun be_partition(const Graph& g, int a, const Rational& eps) {
    if (a < 1) {
        throw InputError("be_partition: arboricity parameter must be >= 1");
    }
    if (sgn(eps) <= 0) {
        throw InputError("be_partition: eps must be positive");
    }
    const long long threshold = rational_floor_ll((Rational(2) + eps) * Rational(a));
    const PeelResult peel = run_peel(g, static_cast<int>(threshold));
    if (!peel.complete) {
        // Only possible when arboricity(g) > a: report the stuck subgraph.
        int stuck_n = 0;
        long long stuck_m = 0;
        for (NodeId v = 0; v < g.node_count(); ++v) {
            if (peel.layer[static_cast<std::size_t>(v)] == 0) {
                ++stuck_n;
            }
        }
        for (const auto& e : g.edges()) {
            if (peel.layer[static_cast<std::size_t>(e.a)] == 0 &&
                peel.layer[static_cast<std::size_t>(e.b)] == 0) {
                ++stuck_m;
            }
        }
        const Rational density =
            stuck_n > 1 ? to_rational(stuck_m) / to_rational(stuck_n - 1) : Rational(0);
        throw PreconditionError(
            "be_partition stalled: arboricity exceeds " + std::to_string(a) +
            " (stuck subgraph: n=" + std::to_string(stuck_n) + ", m=" + std::to_string(stuck_m) +
            ", density=" + rational_str(density) + " > threshold " + std::to_string(threshold) + ")");
    }
    PartitionRun run;
    run.partition.layer = peel.layer;
    run.partition.layer_count = peel.layer_count;
    run.partition.threshold = static_cast<int>(threshold);
    std::vector<int> per_node(static_cast<std::size_t>(g.node_count()), static_cast<int>(threshold));
    verify_partition_invariant(g, run.partition.layer, per_node);
    run.rounds = peel.rounds;
    run.max_message_bits = peel.max_bits;
    return run;
}

PartitionRun be_partition_unknown_alpha(const Graph& g, const Rational& gamma,
                                        const Rational& eps_prime, const Rational& target_eps) {
    if (sgn(gamma) <= 0 || sgn(eps_prime) <= 0) {
        throw InputError("be_partition_unknown_alpha: gamma and eps' must be positive");
    }
    if ((Rational(2) + eps_prime) * (Rational(1) + gamma) > Rational(2) + target_eps) {
        throw InputError("be_partition_unknown_alpha: need (2+eps')(1+gamma) <= 2+eps");
    }
    const int n = g.node_count();
    // Estimate schedule (1+gamma)^i for i = 0..ceil(log_{1+gamma} n); runs whose
    // integer thresholds coincide produce identical peelings and are deduplicated.
    struct Attempt {
        Rational estimate;
        long long threshold;
    };
    std::vector<Attempt> attempts;
    {
        Rational est(1);
        const Rational growth = Rational(1) + gamma;
        const Rational two_eps = Rational(2) + eps_prime;
        while (true) {
            const long long thr = rational_floor_ll(two_eps * est);
            if (attempts.empty() || thr > attempts.back().threshold) {
                attempts.push_back(Attempt{est, thr});
            }
            if (est >= Rational(std::max(n, 1))) {
                break;
            }
            est *= growth;
        }
    }
    std::vector<int> first_attempt(static_cast<std::size_t>(n), -1);
    std::vector<int> run_layer(static_cast<std::size_t>(n), 0);
    long long rounds = 0;
    std::size_t max_bits = 0;
    for (std::size_t idx = 0; idx < attempts.size(); ++idx) {
        const PeelResult peel = run_peel(g, static_cast<int>(attempts[idx].threshold));
        rounds = std::max(rounds, peel.rounds); // executions run in parallel
        max_bits = std::max(max_bits, peel.max_bits);
        bool anyone_waiting = false;
        for (NodeId v = 0; v < n; ++v) {
            if (first_attempt[static_cast<std::size_t>(v)] < 0) {
                if (peel.layer[static_cast<std::size_t>(v)] > 0) {
                    first_attempt[static_cast<std::size_t>(v)] = static_cast<int>(idx);
                    run_layer[static_cast<std::size_t>(v)] = peel.layer[static_cast<std::size_t>(v)];
                } else {
                    anyone_waiting = true;
                }
            }
        }
        if (!anyone_waiting && idx + 1 == attempts.size()) {
            break;
        }
    }
    for (NodeId v = 0; v < n; ++v) {
        if (first_attempt[static_cast<std::size_t>(v)] < 0) {
            throw InternalError("unknown-alpha partition left node unclustered");
        }
    }
    // Combined layer order: all layers of run i precede those of run i+1.
    std::set<std::pair<int, int>> keys;
    for (NodeId v = 0; v < n; ++v) {
        keys.emplace(first_attempt[static_cast<std::size_t>(v)], run_layer[static_cast<std::size_t>(v)]);
    }
    std::map<std::pair<int, int>, int> dense;
    int next = 1;
    for (const auto& key : keys) {
        dense.emplace(key, next++);
    }
    PartitionRun run;
    run.partition.layer.resize(static_cast<std::size_t>(n));
    run.partition.alpha_estimate.resize(static_cast<std::size_t>(n));
    run.partition.node_threshold.resize(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) {
        const auto& attempt = attempts[static_cast<std::size_t>(first_attempt[static_cast<std::size_t>(v)])];
        run.partition.layer[static_cast<std::size_t>(v)] =
            dense.at({first_attempt[static_cast<std::size_t>(v)], run_layer[static_cast<std::size_t>(v)]});
        run.partition.alpha_estimate[static_cast<std::size_t>(v)] = attempt.estimate;
        run.partition.node_threshold[static_cast<std::size_t>(v)] = static_cast<int>(attempt.threshold);
        run.partition.threshold =
            std::max(run.partition.threshold, static_cast<int>(attempt.threshold));
    }
    run.partition.layer_count = next - 1;
    verify_partition_invariant(g, run.partition.layer, run.partition.node_threshold);
    run.rounds = rounds;
    run.max_message_bits = max_bits;
    return run;
}

BoundedColoring compose_layer_coloring(const Graph& g, const LayerPartition& partition,
                                       const std::vector<long long>& phi) {
    if (static_cast<int>(partition.layer.size()) != g.node_count() ||
        static_cast<int>(phi.size()) != g.node_count()) {
        throw InputError("compose_layer_coloring: size mismatch");
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& edge = g.edge(e);
        if (partition.layer[static_cast<std::size_t>(edge.a)] ==
                partition.layer[static_cast<std::size_t>(edge.b)] &&
            phi[static_cast<std::size_t>(edge.a)] == phi[static_cast<std::size_t>(edge.b)]) {
            throw CertificateError("compose_layer_coloring: layer coloring improper at edge " +
                                   std::to_string(edge.a) + "-" + std::to_string(edge.b));
        }
    }
    BoundedColoring c;
    c.color.resize(static_cast<std::size_t>(g.node_count()));
    for (NodeId v = 0; v < g.node_count(); ++v) {
        c.color[static_cast<std::size_t>(v)] =
            Color{partition.layer[static_cast<std::size_t>(v)], phi[static_cast<std::size_t>(v)]};
    }
    c.beta = partition.threshold;
    const BetaReport report = verify_beta_bounded(g, c);
    if (!report.pass) {
        throw CertificateError("compose_layer_coloring: composed coloring fails beta bound: " +
                               report.detail);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Arbdefective coloring
// ---------------------------------------------------------------------------

namespace {

class ArbDecideProgram : public NodeProgram {
  public:
    ArbDecideProgram(int palette, const std::vector<Color>* linial,
                     const std::vector<Color>* schedule, const std::vector<int>* group)
        : p_(palette), linial_(linial), schedule_(schedule), group_(group) {}

    void initialize(const LocalView& view) override {
        active_ = group_ == nullptr || (*group_)[static_cast<std::size_t>(view.id)] >= 0;
        if (!active_) {
            return;
        }
        const int my_group = group_ ? (*group_)[static_cast<std::size_t>(view.id)] : 0;
        for (int s = 0; s < static_cast<int>(view.edges.size()); ++s) {
            const auto& ie = view.edges[static_cast<std::size_t>(s)];
            if (!group_ || (*group_)[static_cast<std::size_t>(ie.neighbor)] == my_group) {
                peer_slots_.push_back(s);
            }
        }
        const Color mine = (*linial_)[static_cast<std::size_t>(view.id)];
        const auto pos = std::find(schedule_->begin(), schedule_->end(), mine);
        if (pos == schedule_->end()) {
            throw InternalError("arbdefective schedule missing a node's class");
        }
        rank_ = static_cast<int>(pos - schedule_->begin());
        counts_.assign(static_cast<std::size_t>(p_), 0);
    }

    RoundOutput on_round(const std::vector<InMessage>& inbox) override {
        ++round_;
        RoundOutput out;
        if (!active_) {
            out.halt = true;
            return out;
        }
        for (const auto& msg : inbox) {
            const long long c = std::get<Color>(msg.payload).lo;
            ++counts_[static_cast<std::size_t>(c)];
        }
        if (round_ == rank_ + 1) {
            int best = 0;
            for (int c = 1; c < p_; ++c) {
                if (counts_[static_cast<std::size_t>(c)] < counts_[static_cast<std::size_t>(best)]) {
                    best = c;
                }
            }
            choice_ = best;
            for (int s : peer_slots_) {
                out.messages.push_back(OutMessage{s, Color::flat(choice_)});
            }
            out.halt = true;
        }
        return out;
    }

    int choice() const { return choice_; }
    int rank() const { return rank_; }

  private:
    int p_;
    const std::vector<Color>* linial_;
    const std::vector<Color>* schedule_;
    const std::vector<int>* group_;
    bool active_ = true;
    int round_ = 0;
    int rank_ = -1;
    int choice_ = -1;
    std::vector<int> counts_;
    std::vector<int> peer_slots_;
};

} // namespace

GroupArbdefectiveRun arbdefective_within(const Graph& g, const std::vector<int>& group,
                                         const std::vector<int>& group_degree,
                                         const std::vector<int>& group_p) {
    for (int p : group_p) {
        if (p < 1) {
            throw InputError("arbdefective coloring: p must be >= 1");
        }
    }
    const int n = g.node_count();
    std::map<long long, int> schedule_index;
    std::vector<std::vector<LinialStep>> schedules;
    std::vector<int> schedule_of_group(group_degree.size());
    for (std::size_t gid = 0; gid < group_degree.size(); ++gid) {
        const long long d = group_degree[gid];
        auto it = schedule_index.find(d);
        if (it == schedule_index.end()) {
            it = schedule_index.emplace(d, static_cast<int>(schedules.size())).first;
            schedules.push_back(linial_schedule(n, d));
        }
        schedule_of_group[gid] = it->second;
    }
    const auto lin = linial_within(g, &group, schedules, schedule_of_group, false);
    std::vector<Color> lin_colors(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) {
        lin_colors[static_cast<std::size_t>(v)] = Color::flat(lin.colors[static_cast<std::size_t>(v)]);
    }
    check_group_proper(g, &group, lin_colors, "arbdefective linial");

    std::map<int, std::set<Color>> occupied;
    for (NodeId v = 0; v < n; ++v) {
        const int gid = group[static_cast<std::size_t>(v)];
        if (gid >= 0) {
            occupied[gid].insert(lin_colors[static_cast<std::size_t>(v)]);
        }
    }
    std::map<int, std::vector<Color>> schedule; // ascending class order
    std::size_t longest = 0;
    for (const auto& [gid, colors] : occupied) {
        std::vector<Color> asc(colors.begin(), colors.end());
        longest = std::max(longest, asc.size());
        schedule.emplace(gid, std::move(asc));
    }
    std::vector<std::unique_ptr<NodeProgram>> programs;
    std::vector<ArbDecideProgram*> typed(static_cast<std::size_t>(n));
    programs.reserve(static_cast<std::size_t>(n));
    static const std::vector<Color> kEmpty;
    for (NodeId v = 0; v < n; ++v) {
        const int gid = group[static_cast<std::size_t>(v)];
        const std::vector<Color>* sched = gid >= 0 ? &schedule.at(gid) : &kEmpty;
        const int palette = gid >= 0 ? group_p[static_cast<std::size_t>(gid)] : 1;
        auto prog = std::make_unique<ArbDecideProgram>(palette, &lin_colors, sched, &group);
        typed[static_cast<std::size_t>(v)] = prog.get();
        programs.push_back(std::move(prog));
    }
    const Trace trace = run_engine(g, programs, static_cast<int>(longest) + 4);
    if (trace.timed_out) {
        throw InternalError("arbdefective decision run did not finish on schedule");
    }
    GroupArbdefectiveRun run;
    run.color.assign(static_cast<std::size_t>(n), -1);
    run.decision_rank.assign(static_cast<std::size_t>(n), -1);
    for (NodeId v = 0; v < n; ++v) {
        if (group[static_cast<std::size_t>(v)] >= 0) {
            run.color[static_cast<std::size_t>(v)] = typed[static_cast<std::size_t>(v)]->choice();
            run.decision_rank[static_cast<std::size_t>(v)] = typed[static_cast<std::size_t>(v)]->rank();
        }
    }
    run.rounds = lin.rounds + trace.rounds_used;
    run.max_message_bits = std::max(lin.max_bits, trace.max_message_bits);
    return run;
}

std::vector<Orientation> arbdefective_certificates(const Graph& g, const std::vector<int>& color,
                                                   const std::vector<int>& decision_rank, int p,
                                                   int* max_out_degree) {
    std::vector<Orientation> certs(static_cast<std::size_t>(p));
    std::unordered_map<NodeId, int> out_count;
    for (int c = 0; c < p; ++c) {
        for (NodeId v = 0; v < g.node_count(); ++v) {
            if (color[static_cast<std::size_t>(v)] == c) {
                certs[static_cast<std::size_t>(c)].nodes.push_back(v);
            }
        }
        certs[static_cast<std::size_t>(c)].acyclic = true;
    }
    for (const auto& e : g.edges()) {
        const int ca = color[static_cast<std::size_t>(e.a)];
        const int cb = color[static_cast<std::size_t>(e.b)];
        if (ca < 0 || ca != cb) {
            continue;
        }
        const int ra = decision_rank[static_cast<std::size_t>(e.a)];
        const int rb = decision_rank[static_cast<std::size_t>(e.b)];
        if (ra == rb) {
            throw InternalError("monochromatic edge between same-rank nodes");
        }
        // Toward the earlier-decided endpoint; directions strictly decrease in
        // decision rank, hence acyclic.
        const NodeId tail = ra > rb ? e.a : e.b;
        const NodeId head = ra > rb ? e.b : e.a;
        certs[static_cast<std::size_t>(ca)].directed_edges.emplace_back(tail, head);
        ++out_count[tail];
    }
    int overall = 0;
    for (auto& cert : certs) {
        for (NodeId v : cert.nodes) {
            const auto it = out_count.find(v);
            if (it != out_count.end()) {
                cert.max_out_degree = std::max(cert.max_out_degree, it->second);
            }
        }
        overall = std::max(overall, cert.max_out_degree);
    }
    if (max_out_degree != nullptr) {
        *max_out_degree = overall;
    }
    return certs;
}

ArbdefectiveRun arbdefective_coloring(const Graph& g, int p) {
    const int n = g.node_count();
    std::vector<int> group(static_cast<std::size_t>(n), 0);
    std::vector<int> group_degree{g.stats().max_degree};
    std::vector<int> group_p{p};
    const auto decided = arbdefective_within(g, group, group_degree, group_p);
    ArbdefectiveRun run;
    run.coloring.color = decided.color;
    run.coloring.p = p;
    run.coloring.class_orientations = arbdefective_certificates(
        g, decided.color, decided.decision_rank, p, &run.coloring.defect_bound);
    const int delta = g.stats().max_degree;
    const int bound = (delta + p - 1) / p;
    if (run.coloring.defect_bound > bound) {
        throw InternalError("arbdefective defect " + std::to_string(run.coloring.defect_bound) +
                            " exceeds ceil(Delta/p) = " + std::to_string(bound));
    }
    run.rounds = decided.rounds;
    run.max_message_bits = decided.max_message_bits;
    return run;
}

} // namespace mwis
