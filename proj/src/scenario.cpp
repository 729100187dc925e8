#include "manet/scenario.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "manet/errors.hpp"

namespace manet {

namespace {

[[noreturn]] void parseFail(int line, const std::string& what) {
    throw SimError(ErrorCode::PARSE_ERROR, "line " + std::to_string(line) + ": " + what);
}

[[noreturn]] void rangeFail(const std::string& what) {
    throw SimError(ErrorCode::RANGE_ERROR, what);
}

std::vector<std::string> tokenize(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

double parseDouble(const std::string& tok, int line) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        parseFail(line, "expected a number, got '" + tok + "'");
    }
    if (pos != tok.size())
        parseFail(line, "trailing characters in number '" + tok + "'");
    return v;
}

uint64_t parseUnsigned(const std::string& tok, int line) {
    size_t pos = 0;
    uint64_t v;
    try {
        v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
        parseFail(line, "expected a non-negative integer, got '" + tok + "'");
    }
    if (pos != tok.size())
        parseFail(line, "trailing characters in integer '" + tok + "'");
    return v;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

ScenarioConfig ScenarioConfig::resolved() const {
    ScenarioConfig c = *this;
    if (!c.energyLo)
        c.energyLo = c.eMax;
    if (!c.energyHi)
        c.energyHi = c.eMax;
    if (!c.energyThreshold)
        c.energyThreshold = c.eMax / 10.0;
    if (!c.deathThreshold)
        c.deathThreshold = c.eMax / 100.0;
    if (!c.rreqWaitS)
        c.rreqWaitS = 2.0 * c.artS;
    if (!c.tAckS)
        c.tAckS = c.deltaTS * c.eMax / *c.energyThreshold;

    if (c.nodes < 1)
        rangeFail("nodes must be >= 1");
    if (c.simTimeS <= 0 || c.hiS <= 0 || c.artS <= 0 || c.deltaTS <= 0)
        rangeFail("durations must be positive");
    if (c.areaW <= 0 || c.areaH <= 0 || c.commRangeM <= 0)
        rangeFail("area and comm range must be positive");
    if (c.eMax <= 0)
        rangeFail("e_max must be positive");
    if (!(c.ttlStart <= c.ttlThreshold && c.ttlThreshold <= c.netDiameter))
        rangeFail("need ttl_start <= ttl_threshold <= net_diameter");
    if (*c.energyThreshold <= 0 || *c.energyThreshold >= c.eMax)
        rangeFail("energy_threshold must lie in (0, e_max)");
    if (*c.deathThreshold < 0 || *c.deathThreshold > *c.energyThreshold)
        rangeFail("death_threshold must lie in [0, energy_threshold]");
    if (*c.tAckS < c.deltaTS * c.eMax / *c.energyThreshold - 1e-12)
        rangeFail("t_ack_s too small to hear the weakest acceptable battery");
    if (c.energyInit == EnergyInitMode::UNIFORM &&
        !(0 <= *c.energyLo && *c.energyLo <= *c.energyHi && *c.energyHi <= c.eMax))
        rangeFail("need 0 <= energy lo <= hi <= e_max");
    if (c.energyInit == EnergyInitMode::BIMODAL) {
        if (!(0 <= c.bimodalLowLo && c.bimodalLowLo <= c.bimodalLowHi &&
              c.bimodalHighLo <= c.bimodalHighHi && c.bimodalHighHi <= c.eMax))
            rangeFail("bimodal energy bounds out of order");
        if (c.bimodalLowFraction < 0 || c.bimodalLowFraction > 1)
            rangeFail("bimodal low fraction must lie in [0, 1]");
    }
    if (c.placement == PlacementMode::EXPLICIT) {
        if (c.explicitPositions.size() != c.nodes)
            rangeFail("explicit placement must cover every node exactly once");
        std::vector<bool> seen(c.nodes, false);
        for (const auto& [id, pos] : c.explicitPositions) {
            if (id >= c.nodes || seen[id])
                rangeFail("position id out of range or duplicated");
            seen[id] = true;
            if (pos.x < 0 || pos.x > c.areaW || pos.y < 0 || pos.y > c.areaH)
                rangeFail("position outside the area");
        }
    }
    if (c.energyInit == EnergyInitMode::EXPLICIT) {
        if (c.explicitEnergies.size() != c.nodes)
            rangeFail("explicit energies must cover every node exactly once");
        std::vector<bool> seen(c.nodes, false);
        for (const auto& [id, e] : c.explicitEnergies) {
            if (id >= c.nodes || seen[id])
                rangeFail("energy id out of range or duplicated");
            seen[id] = true;
            if (e < 0 || e > c.eMax)
                rangeFail("energy outside [0, e_max]");
        }
    }
    for (const auto& f : c.flows) {
        if (f.src >= c.nodes || f.dst >= c.nodes)
            rangeFail("flow references an unknown node id");
        if (f.src == f.dst)
            rangeFail("flow source and destination must differ");
        if (f.intervalS <= 0 || f.startS < 0)
            rangeFail("flow timing must be positive");
    }
    return c;
}

ScenarioConfig parseScenario(const std::string& text) {
    ScenarioConfig c;
    std::istringstream in(text);
    std::string raw;
    int lineNo = 0;
    bool sawPositions = false;
    bool sawEnergies = false;
    while (std::getline(in, raw)) {
        ++lineNo;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            parseFail(lineNo, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            parseFail(lineNo, "empty key or value");
        auto toks = tokenize(value);

        auto one = [&]() -> const std::string& {
            if (toks.size() != 1)
                parseFail(lineNo, key + " takes exactly one value");
            return toks[0];
        };

        if (key == "name") {
            c.name = one();
        } else if (key == "sim_time_s") {
            c.simTimeS = parseDouble(one(), lineNo);
        } else if (key == "area_m") {
            if (toks.size() != 2)
                parseFail(lineNo, "area_m takes width and height");
            c.areaW = parseDouble(toks[0], lineNo);
            c.areaH = parseDouble(toks[1], lineNo);
        } else if (key == "nodes") {
            c.nodes = static_cast<uint32_t>(parseUnsigned(one(), lineNo));
        } else if (key == "placement") {
            const std::string& v = one();
            if (v == "random")
                c.placement = PlacementMode::RANDOM;
            else if (v == "explicit")
                c.placement = PlacementMode::EXPLICIT;
            else
                parseFail(lineNo, "placement must be random or explicit");
        } else if (key == "comm_range_m") {
            c.commRangeM = parseDouble(one(), lineNo);
        } else if (key == "protocol") {
            auto p = protocolFromName(one());
            if (!p)
                parseFail(lineNo, "protocol must be aodv or pc-aodv");
            c.protocol = *p;
        } else if (key == "seed") {
            c.seed = parseUnsigned(one(), lineNo);
        } else if (key == "hi_s") {
            c.hiS = parseDouble(one(), lineNo);
        } else if (key == "art_s") {
            c.artS = parseDouble(one(), lineNo);
        } else if (key == "allowed_hello_loss") {
            c.allowedHelloLoss = static_cast<uint32_t>(parseUnsigned(one(), lineNo));
        } else if (key == "ttl_start") {
            c.ttlStart = static_cast<uint32_t>(parseUnsigned(one(), lineNo));
        } else if (key == "ttl_increment") {
            c.ttlIncrement = static_cast<uint32_t>(parseUnsigned(one(), lineNo));
        } else if (key == "ttl_threshold") {
            c.ttlThreshold = static_cast<uint32_t>(parseUnsigned(one(), lineNo));
        } else if (key == "net_diameter") {
            c.netDiameter = static_cast<uint32_t>(parseUnsigned(one(), lineNo));
        } else if (key == "rreq_retries") {
            c.rreqRetries = static_cast<uint32_t>(parseUnsigned(one(), lineNo));
        } else if (key == "rreq_wait_s") {
            c.rreqWaitS = parseDouble(one(), lineNo);
        } else if (key == "unreachable_backoff_s") {
            c.unreachableBackoffS = parseDouble(one(), lineNo);
        } else if (key == "data_buffer") {
            c.dataBufferCap = static_cast<uint32_t>(parseUnsigned(one(), lineNo));
        } else if (key == "delta_t_s") {
            c.deltaTS = parseDouble(one(), lineNo);
        } else if (key == "e_max") {
            c.eMax = parseDouble(one(), lineNo);
        } else if (key == "energy_init") {
            if (toks[0] == "uniform") {
                if (toks.size() != 3)
                    parseFail(lineNo, "energy_init = uniform LO HI");
                c.energyInit = EnergyInitMode::UNIFORM;
                c.energyLo = parseDouble(toks[1], lineNo);
                c.energyHi = parseDouble(toks[2], lineNo);
            } else if (toks[0] == "explicit") {
                c.energyInit = EnergyInitMode::EXPLICIT;
            } else if (toks[0] == "bimodal") {
                if (toks.size() != 6)
                    parseFail(lineNo, "energy_init = bimodal LOW_LO LOW_HI HIGH_LO HIGH_HI FRACTION");
                c.energyInit = EnergyInitMode::BIMODAL;
                c.bimodalLowLo = parseDouble(toks[1], lineNo);
                c.bimodalLowHi = parseDouble(toks[2], lineNo);
                c.bimodalHighLo = parseDouble(toks[3], lineNo);
                c.bimodalHighHi = parseDouble(toks[4], lineNo);
                c.bimodalLowFraction = parseDouble(toks[5], lineNo);
            } else {
                parseFail(lineNo, "energy_init must be uniform, explicit or bimodal");
            }
        } else if (key == "energy_threshold") {
            c.energyThreshold = parseDouble(one(), lineNo);
        } else if (key == "death_threshold") {
            c.deathThreshold = parseDouble(one(), lineNo);
        } else if (key == "t_ack_s") {
            c.tAckS = parseDouble(one(), lineNo);
        } else if (key == "control_header_bits") {
            c.sizes.controlHeaderBits = parseUnsigned(one(), lineNo);
        } else if (key == "data_header_bits") {
            c.sizes.dataHeaderBits = parseUnsigned(one(), lineNo);
        } else if (key == "payload_data_bytes") {
            c.payload.dataBytes = parseUnsigned(one(), lineNo);
        } else if (key == "payload_udp_bytes") {
            c.payload.udpBytes = parseUnsigned(one(), lineNo);
        } else if (key == "payload_ip_bytes") {
            c.payload.ipBytes = parseUnsigned(one(), lineNo);
        } else if (key == "payload_multiplier") {
            c.payload.multiplier = parseUnsigned(one(), lineNo);
        } else if (key == "cost_mode") {
            const std::string& v = one();
            if (v == "time")
                c.costMode = CostMode::TIME;
            else if (v == "link")
                c.costMode = CostMode::LINK;
            else
                parseFail(lineNo, "cost_mode must be time or link");
        } else if (key == "tx_current_a") {
            c.txCurrentA = parseDouble(one(), lineNo);
        } else if (key == "tx_voltage_v") {
            c.txVoltageV = parseDouble(one(), lineNo);
        } else if (key == "link_tx_power_w") {
            c.linkTxPowerW = parseDouble(one(), lineNo);
        } else if (key == "link_data_rate_bps") {
            c.linkDataRateBps = parseDouble(one(), lineNo);
        } else if (key == "link_p_correct") {
            c.linkPCorrect = parseDouble(one(), lineNo);
        } else if (key == "prop_delay_s") {
            c.propDelayS = parseDouble(one(), lineNo);
        } else if (key == "position") {
            if (toks.size() != 3)
                parseFail(lineNo, "position = id x y");
            NodeId id = static_cast<NodeId>(parseUnsigned(toks[0], lineNo));
            Position p{parseDouble(toks[1], lineNo), parseDouble(toks[2], lineNo)};
            c.explicitPositions.emplace_back(id, p);
            sawPositions = true;
        } else if (key == "energy") {
            if (toks.size() != 2)
                parseFail(lineNo, "energy = id value");
            NodeId id = static_cast<NodeId>(parseUnsigned(toks[0], lineNo));
            c.explicitEnergies.emplace_back(id, parseDouble(toks[1], lineNo));
            sawEnergies = true;
        } else if (key == "flow") {
            if (toks.size() != 5 && toks.size() != 9)
                parseFail(lineNo, "flow = src dst start_s interval_s count [data udp ip mult]");
            FlowSpec f;
            f.src = static_cast<NodeId>(parseUnsigned(toks[0], lineNo));
            f.dst = static_cast<NodeId>(parseUnsigned(toks[1], lineNo));
            f.startS = parseDouble(toks[2], lineNo);
            f.intervalS = parseDouble(toks[3], lineNo);
            f.count = parseUnsigned(toks[4], lineNo);
            if (toks.size() == 9) {
                PayloadConfig p;
                p.dataBytes = parseUnsigned(toks[5], lineNo);
                p.udpBytes = parseUnsigned(toks[6], lineNo);
                p.ipBytes = parseUnsigned(toks[7], lineNo);
                p.multiplier = parseUnsigned(toks[8], lineNo);
                f.payload = p;
            }
            c.flows.push_back(f);
        } else if (key == "auto_flows") {
            if (toks.size() != 4)
                parseFail(lineNo, "auto_flows = count start_s interval_s packet_count");
            c.autoFlows = static_cast<uint32_t>(parseUnsigned(toks[0], lineNo));
            c.autoFlowStartS = parseDouble(toks[1], lineNo);
            c.autoFlowIntervalS = parseDouble(toks[2], lineNo);
            c.autoFlowCount = parseUnsigned(toks[3], lineNo);
        } else {
            parseFail(lineNo, "unknown key '" + key + "'");
        }
    }
    if (sawPositions)
        c.placement = PlacementMode::EXPLICIT;
    if (sawEnergies)
        c.energyInit = EnergyInitMode::EXPLICIT;
    return c.resolved();
}

ScenarioConfig loadScenarioFile(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw SimError(ErrorCode::IO_ERROR, "cannot open scenario file " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parseScenario(buf.str());
}

std::string serializeScenario(const ScenarioConfig& cfg) {
    const ScenarioConfig c = cfg.resolved();
    std::ostringstream out;
    char buf[256];
    auto kv = [&](const char* key, const std::string& v) { out << key << " = " << v << "\n"; };
    auto kd = [&](const char* key, double v) {
        std::snprintf(buf, sizeof(buf), "%.9g", v);
        out << key << " = " << buf << "\n";
    };
    auto ku = [&](const char* key, uint64_t v) { out << key << " = " << v << "\n"; };

    kv("name", c.name);
    kd("sim_time_s", c.simTimeS);
    std::snprintf(buf, sizeof(buf), "%.9g %.9g", c.areaW, c.areaH);
    kv("area_m", buf);
    ku("nodes", c.nodes);
    kv("placement", c.placement == PlacementMode::RANDOM ? "random" : "explicit");
    kd("comm_range_m", c.commRangeM);
    kv("protocol", protocolName(c.protocol));
    ku("seed", c.seed);
    kd("hi_s", c.hiS);
    kd("art_s", c.artS);
    ku("allowed_hello_loss", c.allowedHelloLoss);
    ku("ttl_start", c.ttlStart);
    ku("ttl_increment", c.ttlIncrement);
    ku("ttl_threshold", c.ttlThreshold);
    ku("net_diameter", c.netDiameter);
    ku("rreq_retries", c.rreqRetries);
    kd("rreq_wait_s", *c.rreqWaitS);
    kd("unreachable_backoff_s", c.unreachableBackoffS);
    ku("data_buffer", c.dataBufferCap);
    kd("delta_t_s", c.deltaTS);
    kd("e_max", c.eMax);
    if (c.energyInit == EnergyInitMode::UNIFORM) {
        std::snprintf(buf, sizeof(buf), "uniform %.9g %.9g", *c.energyLo, *c.energyHi);
        kv("energy_init", buf);
    } else if (c.energyInit == EnergyInitMode::BIMODAL) {
        std::snprintf(buf, sizeof(buf), "bimodal %.9g %.9g %.9g %.9g %.9g", c.bimodalLowLo,
                      c.bimodalLowHi, c.bimodalHighLo, c.bimodalHighHi, c.bimodalLowFraction);
        kv("energy_init", buf);
    } else {
        kv("energy_init", "explicit");
    }
    kd("energy_threshold", *c.energyThreshold);
    kd("death_threshold", *c.deathThreshold);
    kd("t_ack_s", *c.tAckS);
    ku("control_header_bits", c.sizes.controlHeaderBits);
    ku("data_header_bits", c.sizes.dataHeaderBits);
    ku("payload_data_bytes", c.payload.dataBytes);
    ku("payload_udp_bytes", c.payload.udpBytes);
    ku("payload_ip_bytes", c.payload.ipBytes);
    ku("payload_multiplier", c.payload.multiplier);
    kv("cost_mode", c.costMode == CostMode::TIME ? "time" : "link");
    kd("tx_current_a", c.txCurrentA);
    kd("tx_voltage_v", c.txVoltageV);
    kd("link_tx_power_w", c.linkTxPowerW);
    kd("link_data_rate_bps", c.linkDataRateBps);
    kd("link_p_correct", c.linkPCorrect);
    kd("prop_delay_s", c.propDelayS);
    for (const auto& [id, p] : c.explicitPositions) {
        std::snprintf(buf, sizeof(buf), "%u %.9g %.9g", id, p.x, p.y);
        kv("position", buf);
    }
    for (const auto& [id, e] : c.explicitEnergies) {
        std::snprintf(buf, sizeof(buf), "%u %.9g", id, e);
        kv("energy", buf);
    }
    for (const auto& f : c.flows) {
        if (f.payload) {
            std::snprintf(buf, sizeof(buf),
                          "%u %u %.9g %.9g %" PRIu64 " %" PRIu64 " %" PRIu64 " %" PRIu64
                          " %" PRIu64,
                          f.src, f.dst, f.startS, f.intervalS, f.count, f.payload->dataBytes,
                          f.payload->udpBytes, f.payload->ipBytes, f.payload->multiplier);
        } else {
            std::snprintf(buf, sizeof(buf), "%u %u %.9g %.9g %" PRIu64, f.src, f.dst, f.startS,
                          f.intervalS, f.count);
        }
        kv("flow", buf);
    }
    if (c.autoFlows > 0) {
        std::snprintf(buf, sizeof(buf), "%u %.9g %.9g %" PRIu64, c.autoFlows, c.autoFlowStartS,
                      c.autoFlowIntervalS, c.autoFlowCount);
        kv("auto_flows", buf);
    }
    return out.str();
}

} // namespace manet
