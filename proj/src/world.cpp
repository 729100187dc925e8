#include "manet/world.hpp"

#include <cmath>
#include <cstring>

#include "manet/pcaodv.hpp"
#include "manet/rng.hpp"

namespace manet {

namespace {

uint64_t fnvMix(uint64_t h, uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (i * 8)) & 0xff;
        h *= 0x100000001b3ULL;
    }
    return h;
}

uint64_t doubleBits(double d) {
    uint64_t u;
    std::memcpy(&u, &d, sizeof(u));
    return u;
}

} // namespace

World::World(const ScenarioConfig& config, TraceSink* trace)
    : config_(config.resolved()), traceSink_(trace) {
    const ScenarioConfig& c = config_;

    std::vector<Position> positions;
    if (c.placement == PlacementMode::EXPLICIT) {
        positions.resize(c.nodes);
        for (const auto& [id, p] : c.explicitPositions)
            positions[id] = p;
    } else {
        positions = placeNodes(c.nodes, c.areaW, c.areaH, streamSeed(c.seed, "placement"));
    }
    topology_ = std::make_unique<Topology>(std::move(positions), c.areaW, c.areaH, c.commRangeM);

    std::vector<double> energies(c.nodes, c.eMax);
    switch (c.energyInit) {
    case EnergyInitMode::UNIFORM:
        energies = assignInitialEnergy(c.nodes, streamSeed(c.seed, "energy"), *c.energyLo,
                                       *c.energyHi);
        break;
    case EnergyInitMode::EXPLICIT:
        for (const auto& [id, e] : c.explicitEnergies)
            energies[id] = e;
        break;
    case EnergyInitMode::BIMODAL: {
        SplitMix64 rng(streamSeed(c.seed, "energy"));
        for (auto& e : energies) {
            const bool low = rng.nextDouble() < c.bimodalLowFraction;
            e = low ? rng.nextRange(c.bimodalLowLo, c.bimodalLowHi)
                    : rng.nextRange(c.bimodalHighLo, c.bimodalHighHi);
        }
        break;
    }
    }

    batteries_.resize(c.nodes);
    for (NodeId n = 0; n < c.nodes; ++n) {
        batteries_[n].level = energies[n];
        batteries_[n].eMax = c.eMax;
        batteries_[n].voltage = c.txVoltageV;
        batteries_[n].current = c.txCurrentA;
        batteries_[n].deathThreshold = *c.deathThreshold;
    }
    initialEnergy_ = energies;
    drained_.assign(c.nodes, 0.0);

    const AodvConfig aodvCfg = AodvConfig::fromScenario(c);
    const PcConfig pcCfg = PcConfig::fromScenario(c);
    engines_.reserve(c.nodes);
    for (NodeId n = 0; n < c.nodes; ++n) {
        if (c.protocol == Protocol::PC_AODV)
            engines_.push_back(std::make_unique<PcAodvNode>(*this, n, aodvCfg, pcCfg));
        else
            engines_.push_back(std::make_unique<AodvNode>(*this, n, aodvCfg));
    }

    flows_ = c.flows;
    if (c.autoFlows > 0) {
        SplitMix64 rng(streamSeed(c.seed, "flows"));
        for (uint32_t i = 0; i < c.autoFlows; ++i) {
            FlowSpec f;
            f.src = static_cast<NodeId>(rng.nextBelow(c.nodes));
            f.dst = static_cast<NodeId>(rng.nextBelow(c.nodes - 1));
            if (f.dst >= f.src)
                ++f.dst;
            f.startS = c.autoFlowStartS;
            f.intervalS = c.autoFlowIntervalS;
            f.count = c.autoFlowCount;
            flows_.push_back(f);
        }
    }

    for (auto& e : engines_)
        e->start();
    startFlows();
}

World::~World() = default;

void World::startFlows() {
    for (size_t i = 0; i < flows_.size(); ++i) {
        const FlowSpec& f = flows_[i];
        schedule(f.startS, [this, i] { flowPacket(i, 0); });
    }
}

void World::flowPacket(size_t flowIndex, uint64_t packetIndex) {
    const FlowSpec& f = flows_[flowIndex];
    const PayloadConfig& p = f.payload ? *f.payload : config_.payload;
    if (alive(f.src)) {
        ++report_.counters.dataOriginated;
        engines_[f.src]->originateData(f.dst, dataPayloadBits(p), flowIndex, packetIndex);
    }
    const uint64_t next = packetIndex + 1;
    if (f.count == 0 || next < f.count) {
        const double t = f.startS + static_cast<double>(next) * f.intervalS;
        if (t <= config_.simTimeS)
            schedule(t, [this, flowIndex, next] { flowPacket(flowIndex, next); });
    }
}

void World::run() {
    runUntil(config_.simTimeS);
    finalizeReport();
}

uint64_t World::runUntil(double t) {
    return queue_.runUntil(t);
}

MetricsReport& World::finalizeReport() {
    Counters& c = report_.counters;
    report_.overhead = overhead(c);
    report_.pdrRrep = pdr(c.rrepSent, c.rrepRecv);
    report_.pdrData = pdr(c.dataOriginated, c.dataDelivered);
    double total = 0.0;
    for (double d : drained_)
        total += d;
    report_.totalEnergyDrained = total;
    finalized_ = true;
    return report_;
}

void World::countSent(MessageKind k) {
    Counters& c = report_.counters;
    switch (k) {
    case MessageKind::HELLO:
        ++c.helloSent;
        break;
    case MessageKind::HELLO_ACK:
        ++c.ackSent;
        break;
    case MessageKind::RREQ:
        ++c.rreqSent;
        break;
    case MessageKind::RREP:
        ++c.rrepSent;
        break;
    case MessageKind::RERR:
        ++c.rerrSent;
        break;
    case MessageKind::DATA:
        ++c.dataSent;
        break;
    }
}

void World::countRecv(MessageKind k) {
    Counters& c = report_.counters;
    switch (k) {
    case MessageKind::HELLO:
        ++c.helloRecv;
        break;
    case MessageKind::HELLO_ACK:
        ++c.ackRecv;
        break;
    case MessageKind::RREQ:
        ++c.rreqRecv;
        break;
    case MessageKind::RREP:
        ++c.rrepRecv;
        break;
    case MessageKind::RERR:
        ++c.rerrRecv;
        break;
    case MessageKind::DATA:
        ++c.dataRecv;
        break;
    }
}

double World::airtimeOf(const Message& m) const {
    return packetAirtime(static_cast<double>(messageHeaderBits(m, config_.sizes)),
                         static_cast<double>(messagePayloadBits(m)));
}

double World::messageCost(NodeId sender, const Message& m) const {
    if (config_.costMode == CostMode::LINK) {
        LinkEnergyParams p;
        p.packetBits = static_cast<double>(messageSizeBits(m, config_.sizes));
        p.txPowerW = config_.linkTxPowerW;
        p.dataRateBps = config_.linkDataRateBps;
        p.pCorrect = config_.linkPCorrect;
        return txEnergyLinkModel(p);
    }
    return txEnergyTimeModel(static_cast<double>(messageHeaderBits(m, config_.sizes)),
                             static_cast<double>(messagePayloadBits(m)), batteries_[sender]);
}

double World::drain(NodeId n, double amount) {
    Battery& b = batteries_[n];
    const bool wasAlive = b.alive();
    const double before = b.level;
    b.level = std::max(0.0, b.level - amount);
    drained_[n] += before - b.level;
    if (wasAlive && !b.alive())
        trace(n, "DEATH", "-", n, n, "battery exhausted");
    return b.level;
}

size_t World::sendBroadcast(NodeId src, Message m) {
    if (!alive(src))
        return 0;
    m.src = src;
    countSent(m.kind);
    trace(src, "SEND", messageKindName(m.kind), src, INVALID_NODE, "bcast");
    drain(src, messageCost(src, m));
    const double arrive = now() + airtimeOf(m) + config_.propDelayS;
    const auto& targets = topology_->neighborsOf(src);
    for (NodeId t : targets)
        schedule(arrive, [this, t, m] { deliver(t, m); });
    return targets.size();
}

bool World::sendUnicast(NodeId src, NodeId dst, Message m) {
    if (!alive(src))
        return false;
    m.src = src;
    countSent(m.kind);
    trace(src, "SEND", messageKindName(m.kind), src, dst, "ucast");
    drain(src, messageCost(src, m));
    if (!topology_->inRange(src, dst))
        return false; // transmission spent, nobody in range to hear it
    const double arrive = now() + airtimeOf(m) + config_.propDelayS;
    schedule(arrive, [this, dst, m] { deliver(dst, m); });
    return true;
}

void World::deliver(NodeId target, const Message& m) {
    if (!alive(target)) {
        trace(target, "LOST", messageKindName(m.kind), m.src, target, "receiver dead");
        return;
    }
    countRecv(m.kind);
    trace(target, "RECV", messageKindName(m.kind), m.src, target, "");
    engines_[target]->onMessage(m);
}

void World::recordDiscovery(NodeId src, NodeId dst, uint32_t discoveredHops) {
    report_.routeMatches.push_back(routeVsOracle(discoveredHops, dijkstraOracle(*topology_, src, dst)));
}

void World::trace(NodeId node, const char* event, const char* kind, NodeId src, NodeId dst,
                  const std::string& detail) {
    if (traceSink_)
        traceSink_->emit(now(), node, event, kind, src, dst, detail);
}

bool World::energyConserved(double relTol) const {
    for (NodeId n = 0; n < batteries_.size(); ++n) {
        const double spent = initialEnergy_[n] - batteries_[n].level;
        const double recorded = drained_[n];
        const double scale = std::max({std::abs(spent), std::abs(recorded), 1e-12});
        if (std::abs(spent - recorded) / scale > relTol)
            return false;
    }
    return true;
}

bool World::routesLoopFree() const {
    const size_t n = engines_.size();
    for (NodeId start = 0; start < n; ++start) {
        for (const auto& [dest, entry] : engines_[start]->routes()) {
            if (!entry.valid)
                continue;
            // Walk valid next hops toward dest; revisiting any node is a loop.
            std::vector<bool> visited(n, false);
            NodeId at = start;
            while (at != dest) {
                if (visited[at])
                    return false;
                visited[at] = true;
                auto hop = engines_[at]->validNextHop(dest);
                if (!hop)
                    break;
                at = *hop;
            }
        }
    }
    return true;
}

uint64_t World::stateHash() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    h = fnvMix(h, doubleBits(queue_.now()));
    for (NodeId n = 0; n < batteries_.size(); ++n) {
        h = fnvMix(h, doubleBits(batteries_[n].level));
        h = fnvMix(h, doubleBits(drained_[n]));
        for (const auto& [dest, e] : engines_[n]->routes()) {
            h = fnvMix(h, dest);
            h = fnvMix(h, static_cast<uint64_t>(e.nextHop));
            h = fnvMix(h, e.hopCount);
            h = fnvMix(h, static_cast<uint64_t>(e.destSeq));
            h = fnvMix(h, e.valid ? 1 : 0);
        }
    }
    const Counters& c = report_.counters;
    for (uint64_t v : {c.helloSent, c.helloRecv, c.ackSent, c.ackRecv, c.rreqSent, c.rreqRecv,
                       c.rrepSent, c.rrepRecv, c.rerrSent, c.rerrRecv, c.dataSent, c.dataRecv,
                       c.dataOriginated, c.dataDelivered, c.forcedUnsafe})
        h = fnvMix(h, v);
    return h;
}

} // namespace manet
