#ifndef MANET_SCENARIO_HPP
#define MANET_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "manet/metrics.hpp"
#include "manet/model.hpp"
#include "manet/topology.hpp"

namespace manet {

struct FlowSpec {
    NodeId src = 0;
    NodeId dst = 0;
    double startS = 0.0;
    double intervalS = 1.0;
    uint64_t count = 0; // 0 = until the end of the run
    std::optional<PayloadConfig> payload;
};

enum class PlacementMode { RANDOM, EXPLICIT };
enum class EnergyInitMode { UNIFORM, EXPLICIT, BIMODAL };
enum class CostMode { TIME, LINK };

/// Declarative run description, the parsed form of the flat key = value
/// scenario file. Optional fields resolve against e_max in resolved().
struct ScenarioConfig {
    std::string name = "scenario";
    double simTimeS = 1800.0;
    double areaW = 1000.0;
    double areaH = 1000.0;
    uint32_t nodes = 0;
    PlacementMode placement = PlacementMode::RANDOM;
    std::vector<std::pair<NodeId, Position>> explicitPositions;
    double commRangeM = 250.0;
    Protocol protocol = Protocol::AODV;
    uint64_t seed = 1;

    double hiS = 1.0;
    double artS = 3.0;
    uint32_t allowedHelloLoss = 2;
    uint32_t ttlStart = 1;
    uint32_t ttlIncrement = 2;
    uint32_t ttlThreshold = 7;
    uint32_t netDiameter = 35;
    uint32_t rreqRetries = 2;
    std::optional<double> rreqWaitS; // default 2 * art
    double unreachableBackoffS = 10.0;
    uint32_t dataBufferCap = 64;

    double deltaTS = 0.002;
    double eMax = 15.0;
    EnergyInitMode energyInit = EnergyInitMode::UNIFORM;
    std::optional<double> energyLo; // default e_max
    std::optional<double> energyHi;
    double bimodalLowLo = 0.0;
    double bimodalLowHi = 0.0;
    double bimodalHighLo = 0.0;
    double bimodalHighHi = 0.0;
    double bimodalLowFraction = 0.0;
    std::vector<std::pair<NodeId, double>> explicitEnergies;
    std::optional<double> energyThreshold; // default e_max / 10
    std::optional<double> deathThreshold;  // default e_max / 100
    std::optional<double> tAckS;           // default delta_t * e_max / energy_threshold

    SizeConfig sizes;
    PayloadConfig payload;
    CostMode costMode = CostMode::TIME;
    double txCurrentA = 1.0;
    double txVoltageV = 1.0;
    double linkTxPowerW = 0.1;
    double linkDataRateBps = 54e6;
    double linkPCorrect = 1.0;
    double propDelayS = 1e-6;

    std::vector<FlowSpec> flows;
    uint32_t autoFlows = 0; // drawn from the flow seed stream when > 0
    double autoFlowIntervalS = 0.5;
    uint64_t autoFlowCount = 0;
    double autoFlowStartS = 10.0;

    /// Defaults applied and invariants checked; throws RANGE_ERROR.
    ScenarioConfig resolved() const;
};

/// Parse the documented flat format. Unknown keys are rejected with
/// PARSE_ERROR carrying the line number; invariant violations raise
/// RANGE_ERROR. The returned config is already resolved.
ScenarioConfig parseScenario(const std::string& text);
ScenarioConfig loadScenarioFile(const std::string& path);

/// Canonical text form; parse(serialize(c)) == c field for field.
std::string serializeScenario(const ScenarioConfig& c);

} // namespace manet

#endif
