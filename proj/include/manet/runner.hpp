#ifndef MANET_RUNNER_HPP
#define MANET_RUNNER_HPP

#include <string>
#include <vector>

#include "manet/metrics.hpp"
#include "manet/scenario.hpp"

namespace manet {

/// Build a world from the config, run it to the horizon, return the report.
RunResult runScenario(const ScenarioConfig& config, TraceSink* trace = nullptr);

/// Both protocol arms per seed on identical topology and traffic. The
/// protocol never touches the placement/energy/flow seed streams, so the
/// arms see the same world.
std::vector<RunResult> compareRuns(const ScenarioConfig& base, const std::vector<uint64_t>& seeds,
                                   unsigned threads = 0);

/// compare across a list of node counts.
std::vector<RunResult> sweepRuns(const ScenarioConfig& base,
                                 const std::vector<uint32_t>& nodeCounts,
                                 const std::vector<uint64_t>& seeds, unsigned threads = 0);

/// Deterministic output order: (nodes, protocol, seed).
void sortRuns(std::vector<RunResult>& runs);

/// Paired CSV plus one trailing `delta` row holding the per-column mean of
/// (PC-AODV minus AODV).
void emitCompareCsv(const std::vector<RunResult>& runs, std::ostream& out);
void writeCompareCsvFile(const std::vector<RunResult>& runs, const std::string& path);

/// "A..B" inclusive, or a comma-separated list.
std::vector<uint64_t> parseSeedSpec(const std::string& spec);
std::vector<uint32_t> parseNodeList(const std::string& spec);

} // namespace manet

#endif
