#ifndef MANET_MODEL_HPP
#define MANET_MODEL_HPP

#include <cstdint>
#include <limits>
#include <set>
#include <utility>
#include <vector>

namespace manet {

using NodeId = uint32_t;
inline constexpr NodeId INVALID_NODE = std::numeric_limits<NodeId>::max();

enum class MessageKind : uint8_t { HELLO, HELLO_ACK, RREQ, RREP, RERR, DATA };

const char* messageKindName(MessageKind k);

/// One simulated packet. HELLO and HELLO_ACK carry the identical field
/// layout; the ack differs only in its kind tag (bookkeeping) and in when it
/// is sent -- the send timing is the entire energy side channel.
struct Message {
    MessageKind kind = MessageKind::HELLO;
    NodeId src = INVALID_NODE;         // previous-hop transmitter
    NodeId originator = INVALID_NODE;  // RREQ/RREP originator, DATA source
    NodeId destination = INVALID_NODE; // RREQ/RREP/DATA target
    uint32_t rreqId = 0;               // RREQ dedup key
    int64_t origSeq = 0;
    int64_t destSeq = 0; // -1 = unknown to the originator
    uint32_t hopCount = 0;
    uint32_t ttl = 0;
    std::vector<std::pair<NodeId, int64_t>> unreachable; // RERR payload
    uint64_t payloadBits = 0;                            // DATA only
    uint64_t headerBits = 0;
    uint64_t flowId = 0; // DATA bookkeeping
    uint64_t dataSeq = 0;
};

bool isControl(MessageKind k);

struct RoutingTableEntry {
    NodeId dest = INVALID_NODE;
    NodeId nextHop = INVALID_NODE;
    uint32_t hopCount = 0;
    int64_t destSeq = -1;
    double lifetimeExpiry = 0.0;
    bool valid = false;
    std::set<NodeId> precursors;
};

inline constexpr double ENERGY_UNKNOWN = -1.0;

struct NeighborRecord {
    NodeId neighbor = INVALID_NODE;
    double lastHeard = 0.0;
    double estEnergy = ENERGY_UNKNOWN; // stays UNKNOWN under classic AODV
    bool critical = false;
};

/// Destination-sequence-number route comparison (the DSDV rule AODV reuses):
/// a higher sequence number always wins; ties go to the shorter route.
bool fresherRoute(int64_t candSeq, uint32_t candHops, int64_t incSeq, uint32_t incHops);

/// DATA payload sizing knobs. The default payload works out to
/// 256 * (228 + 8 + 20) = 65536 bits; the outer multiplier is configurable
/// because its units are not self-evident.
struct PayloadConfig {
    uint64_t dataBytes = 228;
    uint64_t udpBytes = 8;
    uint64_t ipBytes = 20;
    uint64_t multiplier = 256;
};

uint64_t dataPayloadBits(const PayloadConfig& p);

/// Message sizing. Control packets (HELLO, HELLO_ACK, RREQ, RREP, RERR) all
/// share one configured size so that "same length, same cost" holds exactly
/// for hellos and their acks.
struct SizeConfig {
    uint64_t controlHeaderBits = 512;
    uint64_t dataHeaderBits = 0;
};

uint64_t messageSizeBits(const Message& m, const SizeConfig& sizes);

/// Bits that transmit at the header rate / the payload rate, for airtime.
uint64_t messageHeaderBits(const Message& m, const SizeConfig& sizes);
uint64_t messagePayloadBits(const Message& m);

} // namespace manet

#endif
