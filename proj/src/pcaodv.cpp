#include "manet/pcaodv.hpp"

#include <algorithm>

#include "manet/energy.hpp"
#include "manet/world.hpp"

namespace manet {

PcConfig PcConfig::fromScenario(const ScenarioConfig& c) {
    PcConfig p;
    p.deltaT = c.deltaTS;
    p.eMax = c.eMax;
    p.energyThreshold = *c.energyThreshold;
    p.tAck = *c.tAckS;
    return p;
}

double pcHelloInterval(uint32_t neighborhoodSize, double baseInterval) {
    return std::max<uint32_t>(1, neighborhoodSize) * baseInterval;
}

double ackSendOffset(double k, double deltaT) {
    return deltaT * k;
}

double decodeNeighborEnergy(double offset, double deltaT, double eMax) {
    if (offset < deltaT)
        throw SimError(ErrorCode::OFFSET_TOO_SMALL,
                       "ack offset below delta_t implies K < 1");
    return eMax * deltaT / offset;
}

NodeId electNextHop(const std::vector<RouteCandidate>& candidates,
                    const std::map<NodeId, NeighborRecord>& records, double energyThreshold,
                    bool safestPath, uint64_t* forcedUnsafe) {
    if (candidates.empty())
        throw SimError(ErrorCode::NO_CANDIDATE, "next-hop election over an empty set");

    auto recordOf = [&](NodeId n) -> const NeighborRecord* {
        auto it = records.find(n);
        return it == records.end() ? nullptr : &it->second;
    };
    auto isCritical = [&](NodeId n) {
        const NeighborRecord* r = recordOf(n);
        if (!r)
            return false;
        return r->critical || (r->estEnergy != ENERGY_UNKNOWN && r->estEnergy < energyThreshold);
    };
    auto energyOf = [&](NodeId n) {
        const NeighborRecord* r = recordOf(n);
        return r ? r->estEnergy : ENERGY_UNKNOWN;
    };

    std::vector<const RouteCandidate*> pool;
    if (safestPath) {
        for (const auto& c : candidates)
            if (!isCritical(c.neighbor))
                pool.push_back(&c);
    } else {
        for (const auto& c : candidates)
            pool.push_back(&c);
    }
    if (pool.empty()) {
        // Every next hop is running on fumes; take the classic choice anyway.
        if (forcedUnsafe)
            ++*forcedUnsafe;
        for (const auto& c : candidates)
            pool.push_back(&c);
    }

    const RouteCandidate* best = pool.front();
    for (size_t i = 1; i < pool.size(); ++i) {
        const RouteCandidate* c = pool[i];
        if (c->hops != best->hops) {
            if (c->hops < best->hops)
                best = c;
            continue;
        }
        const double ec = energyOf(c->neighbor);
        const double eb = energyOf(best->neighbor);
        if (ec != eb) {
            if (ec > eb)
                best = c;
            continue;
        }
        if (c->neighbor < best->neighbor)
            best = c;
    }
    return best->neighbor;
}

PcAodvNode::PcAodvNode(World& world, NodeId id, const AodvConfig& cfg, const PcConfig& pcCfg)
    : AodvNode(world, id, cfg), pc(pcCfg), currentInterval(cfg.helloInterval) {}

void PcAodvNode::start() {
    // Neighbor liveness is judged at ack-window close, so there is no
    // separate periodic check timer.
    w.schedule(cfg.helloInterval, [this] { helloTick(); });
}

double PcAodvNode::fixedAckLatency() const {
    // HELLO and its ack have the same control size, so the round trip adds
    // two airtimes and two propagation delays on top of the encoded offset.
    const double airtime =
        packetAirtime(static_cast<double>(w.config().sizes.controlHeaderBits), 0.0);
    return 2.0 * airtime + 2.0 * w.config().propDelayS;
}

void PcAodvNode::helloTick() {
    if (!w.alive(self))
        return;
    w.sendBroadcast(self, makeHello(MessageKind::HELLO));
    windowOpen = true;
    ++windowCounter;
    windowHelloTime = w.now();
    windowResponders.clear();
    const double closeAt =
        windowHelloTime + fixedAckLatency() + pc.tAck + w.config().propDelayS;
    const uint64_t id = windowCounter;
    w.schedule(closeAt, [this, id] { ackWindowClose(id); });
}

void PcAodvNode::onHello(const Message& m) {
    AodvNode::onHello(m);
    if (!w.alive(self))
        return; // too weak to answer; the sender's window will notice
    const double k = kFactor(w.battery(self).level, pc.eMax);
    const double offset = ackSendOffset(k, pc.deltaT);
    const NodeId to = m.src;
    w.schedule(w.now() + offset, [this, to] {
        if (!w.alive(self))
            return;
        Message ack = makeHello(MessageKind::HELLO_ACK);
        ack.destination = to;
        w.sendUnicast(self, to, ack);
    });
}

void PcAodvNode::onHelloAck(const Message& m) {
    if (!windowOpen) {
        ++w.counters().unsolicitedAcks;
        return;
    }
    const double raw = w.now() - windowHelloTime;
    double offset = raw - fixedAckLatency();
    touchNeighbor(m.src);
    NeighborRecord& rec = neighborTable[m.src];
    if (offset <= pc.tAck + 1e-12) {
        offset = std::max(offset, pc.deltaT); // absorb float round-off at K = 1
        const double decoded = decodeNeighborEnergy(offset, pc.deltaT, pc.eMax);
        rec.estEnergy = decoded;
        rec.critical = decoded < pc.energyThreshold;
        windowResponders.insert(m.src);
        refreshNeighborRoute(m.src, m.origSeq);
    } else {
        // Too slow for the window: the battery is below anything we accept.
        rec.estEnergy = ENERGY_UNKNOWN;
        rec.critical = true;
    }
}

void PcAodvNode::ackWindowClose(uint64_t id) {
    if (id != windowCounter || !w.alive(self))
        return;
    windowOpen = false;

    for (auto& [n, rec] : neighborTable)
        if (!windowResponders.count(n)) {
            rec.critical = true;
            rec.estEnergy = ENERGY_UNKNOWN;
        }

    std::vector<NodeId> expired;
    const double silenceLimit = cfg.allowedHelloLoss * currentInterval;
    for (const auto& [n, rec] : neighborTable)
        if (w.now() - rec.lastHeard > silenceLimit)
            expired.push_back(n);
    for (NodeId n : expired)
        expireNeighbor(n);

    // The next beacon waits one base interval per answering neighbor plus
    // one for the node's own slot; the scaled period is exactly what pays
    // for the acks.
    currentInterval =
        pcHelloInterval(static_cast<uint32_t>(windowResponders.size()) + 1, cfg.helloInterval);
    const double next = std::max(windowHelloTime + currentInterval, w.now());
    w.schedule(next, [this] { helloTick(); });
}

void PcAodvNode::neighborCheckTick() {
    // Folded into ackWindowClose.
}

bool PcAodvNode::onDuplicateRreq(const Message& m) {
    // Another copy of the same flood is another reverse-path option; feed it
    // to the election instead of discarding it.
    updateRoute(m.originator, RouteCandidate{m.src, m.hopCount + 1, m.origSeq});
    return true;
}

bool PcAodvNode::acceptRoute(const RoutingTableEntry* current, const RouteCandidate& cand,
                             NodeId dest) {
    (void)dest;
    if (!current)
        return true;
    if (!current->valid || current->lifetimeExpiry <= w.now())
        return cand.seq >= current->destSeq;
    if (cand.seq != current->destSeq)
        return cand.seq > current->destSeq;
    if (cand.neighbor == current->nextHop)
        return cand.hops <= current->hopCount;
    const RouteCandidate incumbent{current->nextHop, current->hopCount, current->destSeq};
    const NodeId winner = electNextHop({incumbent, cand}, neighborTable, pc.energyThreshold,
                                       true, &w.counters().forcedUnsafe);
    return winner == cand.neighbor;
}

} // namespace manet
