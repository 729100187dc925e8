#include "manet/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "manet/errors.hpp"
#include "manet/world.hpp"

namespace manet {

RunResult runScenario(const ScenarioConfig& config, TraceSink* trace) {
    const ScenarioConfig cfg = config.resolved();
    World world(cfg, trace);
    world.run();
    RunResult r;
    r.protocol = cfg.protocol;
    r.nodes = cfg.nodes;
    r.seed = cfg.seed;
    r.simTime = cfg.simTimeS;
    r.report = world.report();
    return r;
}

namespace {

std::vector<RunResult> runMany(const std::vector<ScenarioConfig>& specs, unsigned threads) {
    std::vector<RunResult> results(specs.size());
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, specs.size() == 0 ? 1 : specs.size());

    std::atomic<size_t> nextIndex{0};
    std::atomic<bool> failed{false};
    std::string firstError;
    std::mutex errorLock;

    auto worker = [&] {
        for (;;) {
            const size_t i = nextIndex.fetch_add(1);
            if (i >= specs.size())
                return;
            try {
                results[i] = runScenario(specs[i]);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(errorLock);
                if (!failed.exchange(true))
                    firstError = e.what();
            }
        }
    };

    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();

    if (failed)
        throw SimError(ErrorCode::RANGE_ERROR, "run failed: " + firstError);
    return results;
}

} // namespace

void sortRuns(std::vector<RunResult>& runs) {
    std::sort(runs.begin(), runs.end(), [](const RunResult& a, const RunResult& b) {
        if (a.nodes != b.nodes)
            return a.nodes < b.nodes;
        if (a.protocol != b.protocol)
            return a.protocol < b.protocol; // AODV sorts first
        return a.seed < b.seed;
    });
}

std::vector<RunResult> compareRuns(const ScenarioConfig& base, const std::vector<uint64_t>& seeds,
                                   unsigned threads) {
    std::vector<ScenarioConfig> specs;
    specs.reserve(seeds.size() * 2);
    for (uint64_t seed : seeds)
        for (Protocol p : {Protocol::AODV, Protocol::PC_AODV}) {
            ScenarioConfig c = base;
            c.seed = seed;
            c.protocol = p;
            specs.push_back(std::move(c));
        }
    auto runs = runMany(specs, threads);
    sortRuns(runs);
    return runs;
}

std::vector<RunResult> sweepRuns(const ScenarioConfig& base,
                                 const std::vector<uint32_t>& nodeCounts,
                                 const std::vector<uint64_t>& seeds, unsigned threads) {
    std::vector<ScenarioConfig> specs;
    specs.reserve(nodeCounts.size() * seeds.size() * 2);
    for (uint32_t n : nodeCounts)
        for (uint64_t seed : seeds)
            for (Protocol p : {Protocol::AODV, Protocol::PC_AODV}) {
                ScenarioConfig c = base;
                c.nodes = n;
                c.seed = seed;
                c.protocol = p;
                specs.push_back(std::move(c));
            }
    auto runs = runMany(specs, threads);
    sortRuns(runs);
    return runs;
}

namespace {

struct MeanRow {
    double helloSent = 0, helloRecv = 0, ackSent = 0, ackRecv = 0, rreqSent = 0, rrepSent = 0,
           rerrSent = 0, dataSent = 0, dataDelivered = 0, overhead = 0, pdrRrep = 0, pdrData = 0,
           drained = 0, forcedUnsafe = 0;
    uint64_t count = 0;

    void add(const RunResult& r) {
        const Counters& c = r.report.counters;
        helloSent += c.helloSent;
        helloRecv += c.helloRecv;
        ackSent += c.ackSent;
        ackRecv += c.ackRecv;
        rreqSent += c.rreqSent;
        rrepSent += c.rrepSent;
        rerrSent += c.rerrSent;
        dataSent += c.dataSent;
        dataDelivered += c.dataDelivered;
        overhead += r.report.overhead;
        pdrRrep += r.report.pdrRrep;
        pdrData += r.report.pdrData;
        drained += r.report.totalEnergyDrained;
        forcedUnsafe += c.forcedUnsafe;
        ++count;
    }

    MeanRow normalized() const {
        MeanRow m = *this;
        if (count == 0)
            return m;
        const double k = 1.0 / static_cast<double>(count);
        m.helloSent *= k;
        m.helloRecv *= k;
        m.ackSent *= k;
        m.ackRecv *= k;
        m.rreqSent *= k;
        m.rrepSent *= k;
        m.rerrSent *= k;
        m.dataSent *= k;
        m.dataDelivered *= k;
        m.overhead *= k;
        m.pdrRrep *= k;
        m.pdrData *= k;
        m.drained *= k;
        m.forcedUnsafe *= k;
        return m;
    }
};

} // namespace

void emitCompareCsv(const std::vector<RunResult>& runs, std::ostream& out) {
    emitCsv(runs, out);
    MeanRow aodv, pc;
    uint32_t nodes = 0;
    double simTime = 0;
    for (const auto& r : runs) {
        (r.protocol == Protocol::AODV ? aodv : pc).add(r);
        nodes = r.nodes;
        simTime = r.simTime;
    }
    const MeanRow a = aodv.normalized();
    const MeanRow p = pc.normalized();
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "0,delta,%u,0,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,"
                  "%.6f,%.6f,%.6f\n",
                  nodes, simTime, p.helloSent - a.helloSent, p.helloRecv - a.helloRecv,
                  p.ackSent - a.ackSent, p.ackRecv - a.ackRecv, p.rreqSent - a.rreqSent,
                  p.rrepSent - a.rrepSent, p.rerrSent - a.rerrSent, p.dataSent - a.dataSent,
                  p.dataDelivered - a.dataDelivered, p.overhead - a.overhead,
                  p.pdrRrep - a.pdrRrep, p.pdrData - a.pdrData, p.drained - a.drained,
                  p.forcedUnsafe - a.forcedUnsafe);
    out << buf;
}

void writeCompareCsvFile(const std::vector<RunResult>& runs, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw SimError(ErrorCode::IO_ERROR, "cannot open " + path + " for writing");
    emitCompareCsv(runs, f);
    if (!f.good())
        throw SimError(ErrorCode::IO_ERROR, "write failed for " + path);
}

std::vector<uint64_t> parseSeedSpec(const std::string& spec) {
    std::vector<uint64_t> seeds;
    if (auto dots = spec.find(".."); dots != std::string::npos) {
        const uint64_t a = std::stoull(spec.substr(0, dots));
        const uint64_t b = std::stoull(spec.substr(dots + 2));
        if (b < a)
            throw SimError(ErrorCode::RANGE_ERROR, "seed range must be ascending");
        for (uint64_t s = a; s <= b; ++s)
            seeds.push_back(s);
        return seeds;
    }
    std::istringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (!tok.empty())
            seeds.push_back(std::stoull(tok));
    if (seeds.empty())
        throw SimError(ErrorCode::RANGE_ERROR, "no seeds given");
    return seeds;
}

std::vector<uint32_t> parseNodeList(const std::string& spec) {
    std::vector<uint32_t> nodes;
    std::istringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (!tok.empty())
            nodes.push_back(static_cast<uint32_t>(std::stoul(tok)));
    if (nodes.empty())
        throw SimError(ErrorCode::RANGE_ERROR, "no node counts given");
    return nodes;
}

} // namespace manet
