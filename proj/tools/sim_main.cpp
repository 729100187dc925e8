#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "manet/runner.hpp"
#include "manet/trace.hpp"
#include "manet/world.hpp"

using namespace manet;

namespace {

void applyOverrides(ScenarioConfig& cfg, const std::string& protocol, int64_t seed) {
    if (!protocol.empty()) {
        auto p = protocolFromName(protocol);
        if (!p)
            throw SimError(ErrorCode::RANGE_ERROR, "unknown protocol " + protocol);
        cfg.protocol = *p;
    }
    if (seed >= 0)
        cfg.seed = static_cast<uint64_t>(seed);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MANET discrete-event simulator: AODV vs PC-AODV"};
    app.require_subcommand(1);

    std::string scenarioPath;
    std::string outPath;
    std::string tracePath;
    std::string protocolOverride;
    std::string seedSpec;
    std::string nodeSpec;
    int64_t seedOverride = -1;
    unsigned threads = 0;

    auto* runCmd = app.add_subcommand("run", "single scenario run");
    runCmd->add_option("--scenario", scenarioPath, "scenario file")->required();
    runCmd->add_option("--protocol", protocolOverride, "aodv | pc-aodv (overrides the file)");
    runCmd->add_option("--seed", seedOverride, "seed override");
    runCmd->add_option("--trace", tracePath, "write an event trace here");
    runCmd->add_option("--out", outPath, "CSV report path")->required();

    auto* compareCmd = app.add_subcommand("compare", "A/B both protocols over seeds");
    compareCmd->add_option("--scenario", scenarioPath, "scenario file")->required();
    compareCmd->add_option("--seeds", seedSpec, "A..B or comma list")->required();
    compareCmd->add_option("--threads", threads, "worker threads (default: hardware)");
    compareCmd->add_option("--out", outPath, "CSV report path")->required();

    auto* sweepCmd = app.add_subcommand("sweep", "compare across node counts");
    sweepCmd->add_option("--scenario", scenarioPath, "scenario file")->required();
    sweepCmd->add_option("--nodes", nodeSpec, "comma list of node counts")->required();
    sweepCmd->add_option("--seeds", seedSpec, "A..B or comma list")->required();
    sweepCmd->add_option("--threads", threads, "worker threads (default: hardware)");
    sweepCmd->add_option("--out", outPath, "CSV report path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        ScenarioConfig cfg = loadScenarioFile(scenarioPath);

        if (runCmd->parsed()) {
            applyOverrides(cfg, protocolOverride, seedOverride);
            std::ofstream traceFile;
            TraceSink trace;
            TraceSink* sink = nullptr;
            if (!tracePath.empty()) {
                traceFile.open(tracePath, std::ios::binary);
                if (!traceFile)
                    throw SimError(ErrorCode::IO_ERROR, "cannot open trace file " + tracePath);
                trace.setStream(&traceFile);
                sink = &trace;
            }
            RunResult r = runScenario(cfg, sink);
            writeCsvFile({r}, outPath);
            std::cout << "run complete: " << protocolName(r.protocol) << " nodes=" << r.nodes
                      << " seed=" << r.seed << " overhead=" << r.report.overhead
                      << " pdr_data=" << r.report.pdrData << "\n";
        } else if (compareCmd->parsed()) {
            auto seeds = parseSeedSpec(seedSpec);
            auto runs = compareRuns(cfg, seeds, threads);
            writeCompareCsvFile(runs, outPath);
            std::cout << "compare complete: " << runs.size() << " runs -> " << outPath << "\n";
        } else if (sweepCmd->parsed()) {
            auto seeds = parseSeedSpec(seedSpec);
            auto nodes = parseNodeList(nodeSpec);
            auto runs = sweepRuns(cfg, nodes, seeds, threads);
            writeCompareCsvFile(runs, outPath);
            std::cout << "sweep complete: " << runs.size() << " runs -> " << outPath << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
