#ifndef MANET_WORLD_HPP
#define MANET_WORLD_HPP

#include <functional>
#include <memory>
#include <vector>

#include "manet/energy.hpp"
#include "manet/event_queue.hpp"
#include "manet/metrics.hpp"
#include "manet/model.hpp"
#include "manet/scenario.hpp"
#include "manet/topology.hpp"
#include "manet/trace.hpp"

namespace manet {

class AodvNode;

/// One self-contained simulation: event queue, static topology, batteries,
/// one protocol engine per node, and the metric counters. Strictly
/// single-threaded; independent worlds may run on separate threads with no
/// shared state.
class World {
  public:
    World(const ScenarioConfig& config, TraceSink* trace = nullptr);
    ~World();

    /// Run to the configured horizon and finalize the report.
    void run();

    /// Run the clock forward in pieces (tests drive this directly).
    uint64_t runUntil(double t);

    const MetricsReport& report() const { return report_; }
    MetricsReport& finalizeReport();

    // --- services used by the protocol engines ---
    double now() const { return queue_.now(); }
    EventId schedule(double t, std::function<void()> fn) { return queue_.schedule(t, std::move(fn)); }
    void cancelEvent(EventId id) { queue_.cancel(id); }

    /// One transmission, delivered to every in-range neighbor after airtime
    /// plus propagation delay. Returns the delivered set size. Silently does
    /// nothing when the source battery is below the death threshold.
    size_t sendBroadcast(NodeId src, Message m);

    /// Point-to-point delivery; target must be in range or nothing arrives.
    bool sendUnicast(NodeId src, NodeId dst, Message m);

    bool alive(NodeId n) const { return batteries_[n].alive(); }
    Battery& battery(NodeId n) { return batteries_[n]; }
    const Battery& battery(NodeId n) const { return batteries_[n]; }

    /// Explicit battery drain with the floor-at-zero and death bookkeeping.
    double drain(NodeId n, double amount);

    const Topology& topology() const { return *topology_; }
    const ScenarioConfig& config() const { return config_; }
    Counters& counters() { return report_.counters; }
    AodvNode& node(NodeId n) { return *engines_[n]; }

    double airtimeOf(const Message& m) const;
    double messageCost(NodeId sender, const Message& m) const;

    /// Completed route discovery at `src` toward `dst`; verified against the
    /// shortest-path oracle and recorded in the report.
    void recordDiscovery(NodeId src, NodeId dst, uint32_t discoveredHops);

    void countDelivered() { ++report_.counters.dataDelivered; }

    void trace(NodeId node, const char* event, const char* kind, NodeId src, NodeId dst,
               const std::string& detail = "");

    // --- diagnostics used by tests ---
    double drainedTotal(NodeId n) const { return drained_[n]; }
    double initialEnergy(NodeId n) const { return initialEnergy_[n]; }
    bool energyConserved(double relTol) const;
    bool routesLoopFree() const;
    uint64_t stateHash() const;
    const std::vector<FlowSpec>& flows() const { return flows_; }

  private:
    void deliver(NodeId target, const Message& m);
    void countSent(MessageKind k);
    void countRecv(MessageKind k);
    void startFlows();
    void flowPacket(size_t flowIndex, uint64_t packetIndex);

    ScenarioConfig config_;
    EventQueue queue_;
    std::unique_ptr<Topology> topology_;
    std::vector<Battery> batteries_;
    std::vector<double> initialEnergy_;
    std::vector<double> drained_;
    std::vector<std::unique_ptr<AodvNode>> engines_;
    std::vector<FlowSpec> flows_;
    MetricsReport report_;
    TraceSink* traceSink_;
    bool finalized_ = false;
};

} // namespace manet

#endif
