#ifndef MANET_AODV_HPP
#define MANET_AODV_HPP

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "manet/model.hpp"
#include "manet/scenario.hpp"

namespace manet {

class World;

struct AodvConfig {
    double helloInterval = 1.0;
    double activeRouteTimeout = 3.0;
    uint32_t allowedHelloLoss = 2;
    uint32_t ttlStart = 1;
    uint32_t ttlIncrement = 2;
    uint32_t ttlThreshold = 7;
    uint32_t netDiameter = 35;
    uint32_t rreqRetries = 2;
    double rreqWait = 6.0; // per-attempt base, scaled by the attempt number
    double unreachableBackoff = 10.0;
    uint32_t bufferCap = 64;

    static AodvConfig fromScenario(const ScenarioConfig& c);
};

/// Expanding-ring TTL progression: ttl_start, +increment while at most
/// ttl_threshold, then rreq_retries attempts at net_diameter.
std::vector<uint32_t> ttlSchedule(const AodvConfig& c);

/// A candidate next hop toward some destination, as the election sees it.
struct RouteCandidate {
    NodeId neighbor = INVALID_NODE;
    uint32_t hops = 0;
    int64_t seq = 0;
};

/// Classic AODV engine for a single node: periodic HELLO neighborhood
/// maintenance, expanding-ring route discovery, RREP/RERR processing and
/// data forwarding. One instance per node, driven entirely by delivered
/// events and timers.
class AodvNode {
  public:
    AodvNode(World& world, NodeId id, const AodvConfig& cfg);
    virtual ~AodvNode() = default;

    /// Schedule the first HELLO and the neighbor liveness check.
    virtual void start();

    void onMessage(const Message& m);

    /// Application-level packet entry point (flow traffic).
    void originateData(NodeId dst, uint64_t payloadBits, uint64_t flowId, uint64_t dataSeq);

    NodeId id() const { return self; }
    const std::map<NodeId, RoutingTableEntry>& routes() const { return routingTable; }
    const std::map<NodeId, NeighborRecord>& neighbors() const { return neighborTable; }

    /// Test seam: plant a route (e.g. a warm cache) directly.
    void installRoute(NodeId dest, NodeId nextHop, uint32_t hops, int64_t destSeq,
                      double lifetime);

    std::optional<NodeId> validNextHop(NodeId dest) const;

  protected:
    virtual void helloTick();
    virtual void onHello(const Message& m);
    virtual void onHelloAck(const Message& m);
    virtual bool onDuplicateRreq(const Message& m);
    virtual void neighborCheckTick();

    /// Route replacement policy; classic uses the sequence-number rule only.
    virtual bool acceptRoute(const RoutingTableEntry* current, const RouteCandidate& cand,
                             NodeId dest);

    void onRreq(const Message& m);
    void onRrep(const Message& m);
    void onRerr(const Message& m);
    void onData(const Message& m);

    void touchNeighbor(NodeId from);
    void refreshNeighborRoute(NodeId from, int64_t seq);
    bool updateRoute(NodeId dest, const RouteCandidate& cand);
    void expireNeighbor(NodeId n);
    void invalidateRoutesVia(NodeId brokenHop);
    void sendRerr(const std::vector<std::pair<NodeId, int64_t>>& unreachable,
                  const std::set<NodeId>& recipients);
    void startDiscovery(NodeId dest);
    void sendRreqAttempt(NodeId dest);
    void rreqTimeout(NodeId dest, uint32_t attempt);
    void declareUnreachable(NodeId dest);
    void flushBuffer(NodeId dest);
    void forwardData(Message m, bool locallyOriginated);
    void sendRrep(NodeId toward, NodeId routeDest, uint32_t hopCount, int64_t destSeq);

    Message makeHello(MessageKind kind) const;

    World& w;
    NodeId self;
    AodvConfig cfg;

    std::map<NodeId, RoutingTableEntry> routingTable;
    std::map<NodeId, NeighborRecord> neighborTable;
    int64_t seqNo = 0;
    uint32_t nextRreqId = 0;
    std::set<std::pair<NodeId, uint32_t>> seenRreqs;

    struct Discovery {
        uint32_t attempt = 0; // 1-based
        uint32_t scheduleIndex = 0;
        bool resolved = false;
    };
    std::map<NodeId, Discovery> discoveries;
    std::map<NodeId, double> unreachableUntil;
    std::deque<Message> dataBuffer;
    std::vector<uint32_t> ttls;
};

} // namespace manet

#endif
