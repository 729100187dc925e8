#include "manet/topology.hpp"

#include <cmath>
#include <utility>

#include "manet/errors.hpp"

namespace manet {

Topology::Topology(std::vector<Position> positions, double areaW, double areaH, double commRange)
    : positions_(std::move(positions)), areaW_(areaW), areaH_(areaH), commRange_(commRange) {
    const size_t n = positions_.size();
    adjacency_.resize(n);
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = a + 1; b < n; ++b)
            if (distance(a, b) <= commRange_) {
                adjacency_[a].push_back(b);
                adjacency_[b].push_back(a);
            }
}

double Topology::distance(NodeId a, NodeId b) const {
    const double dx = positions_[a].x - positions_[b].x;
    const double dy = positions_[a].y - positions_[b].y;
    return std::sqrt(dx * dx + dy * dy);
}

bool Topology::inRange(NodeId a, NodeId b) const {
    return a != b && distance(a, b) <= commRange_;
}

std::vector<Position> placeNodes(size_t n, double areaW, double areaH, uint64_t seed) {
    if (n < 1 || areaW <= 0.0 || areaH <= 0.0)
        throw SimError(ErrorCode::RANGE_ERROR, "placement needs n >= 1 and a positive area");
    SplitMix64 rng(seed);
    std::vector<Position> out(n);
    for (auto& p : out) {
        p.x = rng.nextDouble() * areaW;
        p.y = rng.nextDouble() * areaH;
    }
    return out;
}

std::vector<double> assignInitialEnergy(size_t n, uint64_t seed, double eLo, double eHi) {
    if (eLo < 0.0 || eHi < eLo)
        throw SimError(ErrorCode::RANGE_ERROR, "energy bounds need 0 <= lo <= hi");
    SplitMix64 rng(seed);
    std::vector<double> out(n);
    for (auto& e : out)
        e = rng.nextRange(eLo, eHi);
    return out;
}

} // namespace manet
