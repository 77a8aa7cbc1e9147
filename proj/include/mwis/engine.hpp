#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "mwis/graph.hpp"
#include "mwis/rational.hpp"

namespace mwis {

/// Totally ordered color value. Flat integer colors use {0, c}; layered
/// colorings use {layer, within-layer color} compared lexicographically.
/// Unary minus reverses the order (the "-c" trick of the directed algorithm).
struct Color {
    long long hi = 0;
    long long lo = 0;

    auto operator<=>(const Color&) const = default;
    Color operator-() const { return Color{-hi, -lo}; }
    static Color flat(long long c) { return Color{0, c}; }
};

std::string color_str(const Color& c);

enum class StatusToken : std::uint8_t { Eliminated = 0, Selected = 1 };

/// One CONGEST message. Exactly one payload may cross each edge-direction per
/// round; the engine accounts for the serialized bit length of every payload.
using Payload = std::variant<Rational, StatusToken, Color, std::int64_t>;

std::size_t payload_bits(const Payload& p);

struct InMessage {
    int slot = -1; // index into the receiver's incident-edge list
    NodeId from = -1;
    Payload payload;
};

struct OutMessage {
    int slot = -1; // index into the sender's incident-edge list
    Payload payload;
};

struct RoundOutput {
    std::vector<OutMessage> messages;
    bool halt = false;
};

struct LocalView {
    NodeId id = -1;
    Rational weight;
    std::span<const IncidentEdge> edges;
};

/// Per-node behavior. A program sees only its local view and received
/// payloads; once it halts it is never invoked again.
class NodeProgram {
  public:
    virtual ~NodeProgram() = default;
    virtual void initialize(const LocalView& view) = 0;
    virtual RoundOutput on_round(const std::vector<InMessage>& inbox) = 0;
};

struct RoundStats {
    std::size_t messages = 0;
    std::size_t max_bits = 0;
};

struct Trace {
    int rounds_used = 0; // last round in which any message was sent
    bool timed_out = false;
    std::vector<RoundStats> per_round;
    std::size_t total_messages = 0;
    std::size_t max_message_bits = 0;
    std::vector<bool> halted;

    bool all_halted() const;
    std::string dump() const; // "round r: messages=M max_bits=B" per round
};

int default_max_rounds(const Graph& g, long long color_count);

struct RunOptions {
    /// Treat a round with no deliveries, no sends and no halts as a permanent
    /// stall and stop early (timeout semantics). Only valid for programs that
    /// act on messages alone after round 1, e.g. the peeling programs.
    bool stop_when_quiescent = false;
};

/// Runs one synchronous execution: messages emitted in round r are delivered
/// at the start of round r+1, inboxes are sorted by (neighbor id, edge), and
/// execution stops when every node has halted or max_rounds is exhausted
/// (timeout result carries the partial trace).
Trace run_engine(const Graph& g, std::vector<std::unique_ptr<NodeProgram>>& programs,
                 int max_rounds, const RunOptions& options = {});

} // namespace mwis
