#ifndef MANET_PCAODV_HPP
#define MANET_PCAODV_HPP

#include <set>

#include "manet/aodv.hpp"

namespace manet {

struct PcConfig {
    double deltaT = 0.002;     // seconds of delay per unit of K
    double eMax = 15.0;
    double energyThreshold = 1.5; // safest-path cutoff
    double tAck = 0.02;           // ack acceptance window, in offset terms

    static PcConfig fromScenario(const ScenarioConfig& c);
};

/// Scaled hello period: the neighborhood size times the base interval, with
/// a floor of one base interval so an isolated node keeps beaconing.
double pcHelloInterval(uint32_t neighborhoodSize, double baseInterval);

/// Battery level encoded as a send delay: offset = delta_t * K.
double ackSendOffset(double k, double deltaT);

/// The receiver-side inverse: E = e_max * delta_t / offset. Throws
/// OFFSET_TOO_SMALL for offsets under delta_t, which would mean K < 1.
double decodeNeighborEnergy(double offset, double deltaT, double eMax);

/// Energy-aware next-hop election. Stage 1 (safest-path mode) drops
/// candidates whose neighbor record is critical or decodes below the
/// threshold; stage 2 ranks by fewest hops, then higher estimated energy,
/// then lower id. When the filter empties the field the classic ranking
/// decides anyway and forcedUnsafe (when given) is incremented. Throws
/// NO_CANDIDATE on an empty list.
NodeId electNextHop(const std::vector<RouteCandidate>& candidates,
                    const std::map<NodeId, NeighborRecord>& records, double energyThreshold,
                    bool safestPath, uint64_t* forcedUnsafe = nullptr);

/// PC-AODV engine: identical discovery machinery, but HELLOs are answered
/// with timed HELLO_ACKs, the hello period stretches with the neighborhood,
/// and route replacement prefers hops whose batteries are not near
/// exhaustion.
class PcAodvNode : public AodvNode {
  public:
    PcAodvNode(World& world, NodeId id, const AodvConfig& cfg, const PcConfig& pc);

    void start() override;

    double currentHelloInterval() const { return currentInterval; }

  protected:
    void helloTick() override;
    void onHello(const Message& m) override;
    void onHelloAck(const Message& m) override;
    bool onDuplicateRreq(const Message& m) override;
    void neighborCheckTick() override;
    bool acceptRoute(const RoutingTableEntry* current, const RouteCandidate& cand,
                     NodeId dest) override;

  private:
    void ackWindowClose(uint64_t windowId);
    double fixedAckLatency() const;

    PcConfig pc;
    bool windowOpen = false;
    uint64_t windowCounter = 0;
    double windowHelloTime = 0.0;
    std::set<NodeId> windowResponders;
    double currentInterval;
};

} // namespace manet

#endif
