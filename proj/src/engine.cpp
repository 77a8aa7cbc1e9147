#include "mwis/engine.hpp"

#include <algorithm>
#include <sstream>

#include "mwis/errors.hpp"

namespace mwis {

std::string color_str(const Color& c) {
    if (c.hi == 0) {
        return std::to_string(c.lo);
    }
    return "(" + std::to_string(c.hi) + "," + std::to_string(c.lo) + ")";
}

std::size_t payload_bits(const Payload& p) {
    constexpr std::size_t tag = 2;
    if (const auto* r = std::get_if<Rational>(&p)) {
        return tag + rational_bits(*r);
    }
    if (std::holds_alternative<StatusToken>(p)) {
        return tag + 1;
    }
    if (const auto* c = std::get_if<Color>(&p)) {
        return tag + int_bits(c->hi) + int_bits(c->lo);
    }
    return tag + int_bits(std::get<std::int64_t>(p));
}

bool Trace::all_halted() const {
    return std::all_of(halted.begin(), halted.end(), [](bool h) { return h; });
}

std::string Trace::dump() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < per_round.size(); ++r) {
        os << "round " << r + 1 << ": messages=" << per_round[r].messages
           << " max_bits=" << per_round[r].max_bits << '\n';
    }
    return os.str();
}

int default_max_rounds(const Graph& g, long long color_count) {
    const long long cap = 10LL * (g.node_count() + std::max<long long>(color_count, 1)) + 10;
    return static_cast<int>(std::min<long long>(cap, 1 << 28));
}

Trace run_engine(const Graph& g, std::vector<std::unique_ptr<NodeProgram>>& programs,
                 int max_rounds, const RunOptions& options) {
    const int n = g.node_count();
    if (static_cast<int>(programs.size()) != n) {
        throw InputError("run_engine: need exactly one program per node");
    }
    if (max_rounds < 1) {
        throw InputError("run_engine: max_rounds must be >= 1");
    }

    // slot_at[e] = position of edge e in each endpoint's incident list.
    struct SlotPair {
        int at_a = -1;
        int at_b = -1;
    };
    std::vector<SlotPair> slot_at(static_cast<std::size_t>(g.edge_count()));
    for (NodeId v = 0; v < n; ++v) {
        const auto inc = g.neighbors(v);
        for (int s = 0; s < static_cast<int>(inc.size()); ++s) {
            const Edge& e = g.edge(inc[static_cast<std::size_t>(s)].edge);
            auto& sp = slot_at[static_cast<std::size_t>(inc[static_cast<std::size_t>(s)].edge)];
            (e.a == v ? sp.at_a : sp.at_b) = s;
        }
    }

    Trace trace;
    trace.halted.assign(static_cast<std::size_t>(n), false);
    for (NodeId v = 0; v < n; ++v) {
        programs[static_cast<std::size_t>(v)]->initialize(
            LocalView{v, g.weight(v), g.neighbors(v)});
    }

    std::vector<std::vector<InMessage>> inbox(static_cast<std::size_t>(n));
    std::vector<std::vector<InMessage>> next_inbox(static_cast<std::size_t>(n));
    // last round each edge-direction carried a message
    std::vector<int> sent_in_round(2 * static_cast<std::size_t>(std::max(g.edge_count(), 1)), 0);

    int halted_count = 0;
    int round = 0;
    while (round < max_rounds) {
        if (halted_count == n) {
            break;
        }
        ++round;
        RoundStats stats;
        std::size_t delivered = 0;
        int halts_this_round = 0;
        for (NodeId v = 0; v < n; ++v) {
            auto& box = inbox[static_cast<std::size_t>(v)];
            if (trace.halted[static_cast<std::size_t>(v)]) {
                box.clear();
                continue;
            }
            // Senders are processed in ascending id and adjacency lists are
            // sorted, so the inbox is already ordered by (neighbor id, edge).
            delivered += box.size();
            RoundOutput out = programs[static_cast<std::size_t>(v)]->on_round(box);
            box.clear();
            const auto inc = g.neighbors(v);
            for (const auto& msg : out.messages) {
                if (msg.slot < 0 || msg.slot >= static_cast<int>(inc.size())) {
                    throw ProtocolError("node " + std::to_string(v) + " used invalid edge slot " +
                                        std::to_string(msg.slot) + " in round " +
                                        std::to_string(round));
                }
                const auto& ie = inc[static_cast<std::size_t>(msg.slot)];
                const Edge& e = g.edge(ie.edge);
                const std::size_t dir_key =
                    2 * static_cast<std::size_t>(ie.edge) + (e.a == v ? 0 : 1);
                if (sent_in_round[dir_key] == round) {
                    throw ProtocolError("node " + std::to_string(v) +
                                        " sent two messages on edge " + std::to_string(e.a) + "-" +
                                        std::to_string(e.b) + " in round " + std::to_string(round));
                }
                sent_in_round[dir_key] = round;
                stats.messages += 1;
                stats.max_bits = std::max(stats.max_bits, payload_bits(msg.payload));
                const NodeId to = ie.neighbor;
                const auto& sp = slot_at[static_cast<std::size_t>(ie.edge)];
                const int recv_slot = (g.edge(ie.edge).a == to) ? sp.at_a : sp.at_b;
                next_inbox[static_cast<std::size_t>(to)].push_back(
                    InMessage{recv_slot, v, msg.payload});
            }
            if (out.halt) {
                trace.halted[static_cast<std::size_t>(v)] = true;
                ++halted_count;
                ++halts_this_round;
            }
        }
        trace.per_round.push_back(stats);
        trace.total_messages += stats.messages;
        trace.max_message_bits = std::max(trace.max_message_bits, stats.max_bits);
        if (stats.messages > 0) {
            trace.rounds_used = round;
        }
        std::swap(inbox, next_inbox);
        if (options.stop_when_quiescent && delivered == 0 && stats.messages == 0 &&
            halts_this_round == 0) {
            break;
        }
    }
    trace.timed_out = halted_count != n;
    return trace;
}

} // namespace mwis
