#include "manet/aodv.hpp"

#include <algorithm>

#include "manet/world.hpp"

namespace manet {

AodvConfig AodvConfig::fromScenario(const ScenarioConfig& c) {
    AodvConfig a;
    a.helloInterval = c.hiS;
    a.activeRouteTimeout = c.artS;
    a.allowedHelloLoss = c.allowedHelloLoss;
    a.ttlStart = c.ttlStart;
    a.ttlIncrement = c.ttlIncrement;
    a.ttlThreshold = c.ttlThreshold;
    a.netDiameter = c.netDiameter;
    a.rreqRetries = c.rreqRetries;
    a.rreqWait = *c.rreqWaitS;
    a.unreachableBackoff = c.unreachableBackoffS;
    a.bufferCap = c.dataBufferCap;
    return a;
}

std::vector<uint32_t> ttlSchedule(const AodvConfig& c) {
    std::vector<uint32_t> out;
    for (uint32_t ttl = c.ttlStart; ttl <= c.ttlThreshold; ttl += c.ttlIncrement) {
        out.push_back(ttl);
        if (c.ttlIncrement == 0)
            break;
    }
    for (uint32_t i = 0; i < c.rreqRetries; ++i)
        out.push_back(c.netDiameter);
    return out;
}

AodvNode::AodvNode(World& world, NodeId id, const AodvConfig& config)
    : w(world), self(id), cfg(config), ttls(ttlSchedule(config)) {}

void AodvNode::start() {
    w.schedule(cfg.helloInterval, [this] { helloTick(); });
    w.schedule(2.0 * cfg.helloInterval, [this] { neighborCheckTick(); });
}

Message AodvNode::makeHello(MessageKind kind) const {
    Message m;
    m.kind = kind;
    m.originator = self;
    m.origSeq = seqNo;
    m.hopCount = 0;
    m.ttl = 1;
    return m;
}

void AodvNode::helloTick() {
    if (!w.alive(self))
        return; // dead node: timer dies with it
    w.sendBroadcast(self, makeHello(MessageKind::HELLO));
    w.schedule(w.now() + cfg.helloInterval, [this] { helloTick(); });
}

void AodvNode::neighborCheckTick() {
    if (!w.alive(self))
        return;
    std::vector<NodeId> expired;
    for (const auto& [n, rec] : neighborTable)
        if (w.now() - rec.lastHeard > cfg.allowedHelloLoss * cfg.helloInterval)
            expired.push_back(n);
    for (NodeId n : expired)
        expireNeighbor(n);
    w.schedule(w.now() + cfg.helloInterval, [this] { neighborCheckTick(); });
}

void AodvNode::onMessage(const Message& m) {
    switch (m.kind) {
    case MessageKind::HELLO:
        onHello(m);
        break;
    case MessageKind::HELLO_ACK:
        onHelloAck(m);
        break;
    case MessageKind::RREQ:
        onRreq(m);
        break;
    case MessageKind::RREP:
        onRrep(m);
        break;
    case MessageKind::RERR:
        onRerr(m);
        break;
    case MessageKind::DATA:
        onData(m);
        break;
    }
}

void AodvNode::touchNeighbor(NodeId from) {
    NeighborRecord& rec = neighborTable[from];
    if (rec.neighbor == INVALID_NODE) {
        rec.neighbor = from;
        rec.estEnergy = ENERGY_UNKNOWN;
        rec.critical = false;
    }
    rec.lastHeard = w.now();
}

void AodvNode::refreshNeighborRoute(NodeId from, int64_t seq) {
    auto it = routingTable.find(from);
    if (it != routingTable.end() && it->second.nextHop == from && it->second.hopCount <= 1) {
        RoutingTableEntry& e = it->second;
        e.valid = true;
        e.hopCount = 1;
        e.destSeq = std::max(e.destSeq, seq);
        e.lifetimeExpiry = w.now() + cfg.activeRouteTimeout;
        return;
    }
    updateRoute(from, RouteCandidate{from, 1, seq});
}

void AodvNode::onHello(const Message& m) {
    touchNeighbor(m.src);
    refreshNeighborRoute(m.src, m.origSeq);
}

void AodvNode::onHelloAck(const Message&) {
    // Classic AODV never solicits acks; anything that shows up is noise.
    ++w.counters().unsolicitedAcks;
}

bool AodvNode::acceptRoute(const RoutingTableEntry* current, const RouteCandidate& cand,
                           NodeId) {
    if (!current)
        return true;
    if (!current->valid || current->lifetimeExpiry <= w.now())
        return cand.seq >= current->destSeq;
    return fresherRoute(cand.seq, cand.hops, current->destSeq, current->hopCount);
}

bool AodvNode::updateRoute(NodeId dest, const RouteCandidate& cand) {
    auto it = routingTable.find(dest);
    const RoutingTableEntry* current = it == routingTable.end() ? nullptr : &it->second;
    if (!acceptRoute(current, cand, dest))
        return false;
    RoutingTableEntry& e = routingTable[dest];
    e.dest = dest;
    e.nextHop = cand.neighbor;
    e.hopCount = cand.hops;
    e.destSeq = cand.seq;
    e.lifetimeExpiry = w.now() + cfg.activeRouteTimeout;
    e.valid = true;
    return true;
}

void AodvNode::installRoute(NodeId dest, NodeId nextHop, uint32_t hops, int64_t destSeq,
                            double lifetime) {
    RoutingTableEntry& e = routingTable[dest];
    e.dest = dest;
    e.nextHop = nextHop;
    e.hopCount = hops;
    e.destSeq = destSeq;
    e.lifetimeExpiry = lifetime;
    e.valid = true;
}

std::optional<NodeId> AodvNode::validNextHop(NodeId dest) const {
    auto it = routingTable.find(dest);
    if (it == routingTable.end() || !it->second.valid || it->second.lifetimeExpiry <= w.now())
        return std::nullopt;
    return it->second.nextHop;
}

void AodvNode::expireNeighbor(NodeId n) {
    neighborTable.erase(n);
    w.trace(self, "NBR_LOST", "-", self, n, "hello silence");
    invalidateRoutesVia(n);
}

void AodvNode::invalidateRoutesVia(NodeId brokenHop) {
    // Every valid route through the broken hop is torn down at once; the
    // affected destinations are reported upstream so precursors can purge
    // their own tables.
    std::map<NodeId, std::vector<std::pair<NodeId, int64_t>>> perPrecursor;
    for (auto& [dest, e] : routingTable) {
        if (!e.valid || e.nextHop != brokenHop)
            continue;
        e.valid = false;
        e.destSeq += 1;
        for (NodeId p : e.precursors)
            perPrecursor[p].emplace_back(dest, e.destSeq);
        e.precursors.clear();
    }
    for (const auto& [p, list] : perPrecursor)
        sendRerr(list, {p});
}

void AodvNode::sendRerr(const std::vector<std::pair<NodeId, int64_t>>& unreachable,
                        const std::set<NodeId>& recipients) {
    for (NodeId r : recipients) {
        Message m;
        m.kind = MessageKind::RERR;
        m.originator = self;
        m.destination = r;
        m.ttl = 1;
        m.unreachable = unreachable;
        w.sendUnicast(self, r, m);
    }
}

void AodvNode::onRerr(const Message& m) {
    std::map<NodeId, std::vector<std::pair<NodeId, int64_t>>> perPrecursor;
    for (const auto& [dest, seq] : m.unreachable) {
        auto it = routingTable.find(dest);
        if (it == routingTable.end() || !it->second.valid || it->second.nextHop != m.src)
            continue;
        RoutingTableEntry& e = it->second;
        e.valid = false;
        e.destSeq = std::max(e.destSeq, seq);
        for (NodeId p : e.precursors)
            perPrecursor[p].emplace_back(dest, e.destSeq);
        e.precursors.clear();
    }
    for (const auto& [p, list] : perPrecursor)
        sendRerr(list, {p});
}

void AodvNode::originateData(NodeId dst, uint64_t payloadBits, uint64_t flowId,
                             uint64_t dataSeq) {
    if (dst == self) {
        w.countDelivered();
        return;
    }
    Message m;
    m.kind = MessageKind::DATA;
    m.originator = self;
    m.destination = dst;
    m.payloadBits = payloadBits;
    m.headerBits = w.config().sizes.dataHeaderBits;
    m.ttl = cfg.netDiameter;
    m.flowId = flowId;
    m.dataSeq = dataSeq;
    forwardData(m, true);
}

void AodvNode::onData(const Message& m) {
    if (m.destination == self) {
        w.countDelivered();
        w.trace(self, "DELIVERED", "DATA", m.originator, self, "");
        return;
    }
    forwardData(m, false);
}

void AodvNode::forwardData(Message m, bool locallyOriginated) {
    auto it = routingTable.find(m.destination);
    RoutingTableEntry* entry = it == routingTable.end() ? nullptr : &it->second;
    const bool usable = entry && entry->valid && entry->lifetimeExpiry > w.now();

    if (usable) {
        // Using a route keeps it alive for another ACTIVE_ROUTE_TIMEOUT.
        entry->lifetimeExpiry = w.now() + cfg.activeRouteTimeout;
        if (auto hop = routingTable.find(entry->nextHop);
            hop != routingTable.end() && hop->second.valid)
            hop->second.lifetimeExpiry =
                std::max(hop->second.lifetimeExpiry, w.now() + cfg.activeRouteTimeout);
        if (!locallyOriginated)
            entry->precursors.insert(m.src);
        if (m.ttl == 0) {
            w.trace(self, "DROP", "DATA", m.originator, m.destination, "ttl exhausted");
            return;
        }
        m.ttl -= 1;
        w.sendUnicast(self, entry->nextHop, m);
        return;
    }

    if (locallyOriginated) {
        auto backoff = unreachableUntil.find(m.destination);
        if (backoff != unreachableUntil.end() && backoff->second > w.now()) {
            ++w.counters().unreachableDrops;
            w.trace(self, "DROP", "DATA", self, m.destination, "destination unreachable");
            return;
        }
        if (dataBuffer.size() >= cfg.bufferCap) {
            dataBuffer.pop_front();
            ++w.counters().bufferDrops;
        }
        dataBuffer.push_back(m);
        if (!discoveries.count(m.destination))
            startDiscovery(m.destination);
        return;
    }

    // Mid-path hole: tell the previous hop and drop the packet.
    int64_t seq = entry ? entry->destSeq + 1 : 0;
    sendRerr({{m.destination, seq}}, {m.src});
    w.trace(self, "DROP", "DATA", m.originator, m.destination, "no route at intermediate");
}

void AodvNode::startDiscovery(NodeId dest) {
    Discovery d;
    d.attempt = 1;
    d.scheduleIndex = 0;
    discoveries[dest] = d;
    sendRreqAttempt(dest);
}

void AodvNode::sendRreqAttempt(NodeId dest) {
    Discovery& d = discoveries[dest];
    // The originator's sequence number is incremented before each RREQ.
    ++seqNo;
    const uint32_t id = nextRreqId++;
    seenRreqs.insert({self, id});

    Message m;
    m.kind = MessageKind::RREQ;
    m.originator = self;
    m.destination = dest;
    m.rreqId = id;
    m.origSeq = seqNo;
    auto it = routingTable.find(dest);
    m.destSeq = it == routingTable.end() ? -1 : it->second.destSeq;
    m.hopCount = 0;
    m.ttl = ttls[d.scheduleIndex];
    w.sendBroadcast(self, m);

    const uint32_t attempt = d.attempt;
    w.schedule(w.now() + cfg.rreqWait * attempt, [this, dest, attempt] { rreqTimeout(dest, attempt); });
}

void AodvNode::rreqTimeout(NodeId dest, uint32_t attempt) {
    auto it = discoveries.find(dest);
    if (it == discoveries.end() || it->second.attempt != attempt)
        return; // resolved or superseded
    if (validNextHop(dest)) {
        discoveries.erase(it);
        flushBuffer(dest);
        return;
    }
    if (it->second.scheduleIndex + 1 >= ttls.size()) {
        declareUnreachable(dest);
        return;
    }
    it->second.attempt += 1;
    it->second.scheduleIndex += 1;
    sendRreqAttempt(dest);
}

void AodvNode::declareUnreachable(NodeId dest) {
    discoveries.erase(dest);
    unreachableUntil[dest] = w.now() + cfg.unreachableBackoff;
    w.trace(self, "UNREACHABLE", "-", self, dest, "rreq retries exhausted");
    for (auto it = dataBuffer.begin(); it != dataBuffer.end();) {
        if (it->destination == dest) {
            ++w.counters().unreachableDrops;
            it = dataBuffer.erase(it);
        } else {
            ++it;
        }
    }
}

void AodvNode::flushBuffer(NodeId dest) {
    std::vector<Message> ready;
    for (auto it = dataBuffer.begin(); it != dataBuffer.end();) {
        if (it->destination == dest) {
            ready.push_back(*it);
            it = dataBuffer.erase(it);
        } else {
            ++it;
        }
    }
    for (auto& m : ready)
        forwardData(m, true);
}

bool AodvNode::onDuplicateRreq(const Message&) {
    return false; // classic AODV drops duplicates outright
}

void AodvNode::onRreq(const Message& m) {
    if (m.originator == self)
        return;
    refreshNeighborRoute(m.src, -1);
    if (seenRreqs.count({m.originator, m.rreqId})) {
        onDuplicateRreq(m);
        return;
    }
    seenRreqs.insert({m.originator, m.rreqId});

    updateRoute(m.originator, RouteCandidate{m.src, m.hopCount + 1, m.origSeq});

    if (m.destination == self) {
        // Destination reply: bump own sequence number so the reply is fresh.
        seqNo = std::max(seqNo, m.destSeq);
        ++seqNo;
        sendRrep(m.originator, self, 0, seqNo);
        return;
    }

    auto it = routingTable.find(m.destination);
    if (it != routingTable.end() && it->second.valid && it->second.lifetimeExpiry > w.now() &&
        it->second.destSeq >= m.destSeq && it->second.nextHop != m.src) {
        // An intermediate with a fresh enough cached route answers on the
        // destination's behalf. A route whose next hop is the asker itself
        // is never advertised back; that would weld a two-node cycle.
        if (auto rev = validNextHop(m.originator))
            it->second.precursors.insert(*rev);
        sendRrep(m.originator, m.destination, it->second.hopCount, it->second.destSeq);
        return;
    }

    if (m.ttl <= 1)
        return; // ring boundary; a TTL of zero is never forwarded
    Message fwd = m;
    fwd.ttl -= 1;
    fwd.hopCount += 1;
    w.sendBroadcast(self, fwd);
}

void AodvNode::sendRrep(NodeId toward, NodeId routeDest, uint32_t hopCount, int64_t destSeq) {
    auto rev = validNextHop(toward);
    if (!rev) {
        ++w.counters().brokenReversePath;
        w.trace(self, "DROP", "RREP", routeDest, toward, "no reverse route");
        return;
    }
    Message m;
    m.kind = MessageKind::RREP;
    m.originator = toward;
    m.destination = routeDest;
    m.destSeq = destSeq;
    m.hopCount = hopCount;
    m.ttl = cfg.netDiameter;
    w.sendUnicast(self, *rev, m);
}

void AodvNode::onRrep(const Message& m) {
    refreshNeighborRoute(m.src, -1);
    const bool accepted =
        updateRoute(m.destination, RouteCandidate{m.src, m.hopCount + 1, m.destSeq});

    if (m.originator == self) {
        auto it = discoveries.find(m.destination);
        if (it != discoveries.end()) {
            discoveries.erase(it);
            if (auto route = routingTable.find(m.destination); route != routingTable.end())
                w.recordDiscovery(self, m.destination, route->second.hopCount);
            flushBuffer(m.destination);
        }
        return;
    }

    auto rev = validNextHop(m.originator);
    if (!rev) {
        ++w.counters().brokenReversePath;
        w.trace(self, "DROP", "RREP", m.destination, m.originator, "broken reverse path");
        return;
    }
    if (m.ttl == 0 || !accepted)
        return; // worse than what we already forwarded
    routingTable[m.destination].precursors.insert(*rev);
    Message fwd = m;
    fwd.hopCount += 1;
    fwd.ttl -= 1;
    w.sendUnicast(self, *rev, fwd);
}

} // namespace manet
