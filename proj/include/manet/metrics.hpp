#ifndef MANET_METRICS_HPP
#define MANET_METRICS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "manet/model.hpp"
#include "manet/topology.hpp"

namespace manet {

enum class Protocol { AODV, PC_AODV };

const char* protocolName(Protocol p);
std::optional<Protocol> protocolFromName(const std::string& name);

/// Raw per-run event counters. *Sent counts transmissions (one per
/// broadcast, regardless of audience); *Recv counts receptions by alive
/// nodes.
struct Counters {
    uint64_t helloSent = 0;
    uint64_t helloRecv = 0;
    uint64_t ackSent = 0;
    uint64_t ackRecv = 0;
    uint64_t rreqSent = 0;
    uint64_t rreqRecv = 0;
    uint64_t rrepSent = 0;
    uint64_t rrepRecv = 0;
    uint64_t rerrSent = 0;
    uint64_t rerrRecv = 0;
    uint64_t dataSent = 0;
    uint64_t dataRecv = 0;
    uint64_t dataOriginated = 0;
    uint64_t dataDelivered = 0;
    uint64_t forcedUnsafe = 0;
    uint64_t unsolicitedAcks = 0;
    uint64_t bufferDrops = 0;
    uint64_t unreachableDrops = 0;
    uint64_t brokenReversePath = 0;

    uint64_t controlSent() const {
        return helloSent + ackSent + rreqSent + rrepSent + rerrSent;
    }
};

/// One completed route discovery against the shortest-path oracle.
struct RouteMatch {
    uint32_t discoveredHops = 0;
    uint32_t oracleHops = 0;
    bool match = false;
    int64_t slack = 0; // discovered - oracle, never negative
};

struct MetricsReport {
    Counters counters;
    double overhead = 0.0;
    double pdrRrep = 0.0;
    double pdrData = 0.0;
    double totalEnergyDrained = 0.0;
    std::vector<RouteMatch> routeMatches;
};

/// Identifies one simulation run for reporting.
struct RunResult {
    Protocol protocol = Protocol::AODV;
    uint32_t nodes = 0;
    uint64_t seed = 0;
    double simTime = 0.0;
    MetricsReport report;
};

/// Control transmissions over control-plus-data transmissions; 0 for an
/// empty run. HELLO_ACK counts as control: under PC-AODV the acks replace
/// hellos, so leaving them out would make the comparison meaningless.
double overhead(const Counters& c);

/// Received over transmitted, 0 when nothing was transmitted.
double pdr(uint64_t transmitted, uint64_t received);

/// Minimum hop count over the unit-weight connectivity graph, or nullopt if
/// disconnected.
std::optional<uint32_t> dijkstraOracle(const Topology& topo, NodeId src, NodeId dst);

/// Closed-form hello-exchange energy n*C*T/HI. Both protocols evaluate to
/// the same expression: the per-node ack term (n-1)*C*T/((n-1)*HI) collapses
/// to C*T/HI, so the scaled interval exactly pays for the acks.
double analyticHelloEnergy(uint32_t nodes, double costPerMessage, double horizon,
                           double helloInterval, Protocol protocol);

/// Pair a discovered hop count with its oracle value. Throws
/// ORACLE_UNREACHABLE_BUT_ROUTED (as RANGE_ERROR) when the oracle says the
/// pair is disconnected, which would mean the simulator invented a route.
RouteMatch routeVsOracle(uint32_t discoveredHops, std::optional<uint32_t> oracleHops);

/// Fixed-column CSV, 6 fractional digits on decimals, header always
/// present, one row per run in the order given (callers sort first).
void emitCsv(const std::vector<RunResult>& runs, std::ostream& out);
void writeCsvFile(const std::vector<RunResult>& runs, const std::string& path);

} // namespace manet

#endif
