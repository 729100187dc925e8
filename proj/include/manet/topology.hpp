#ifndef MANET_TOPOLOGY_HPP
#define MANET_TOPOLOGY_HPP

#include <cstdint>
#include <vector>

#include "manet/model.hpp"
#include "manet/rng.hpp"

namespace manet {

struct Position {
    double x = 0.0;
    double y = 0.0;
};

/// Static node placement plus the unit-disk radio model. Links are
/// symmetric by construction; a pair is connected iff their Euclidean
/// distance is at most commRange (closed ball, so exactly-at-range counts).
class Topology {
  public:
    Topology(std::vector<Position> positions, double areaW, double areaH, double commRange);

    size_t nodeCount() const { return positions_.size(); }
    const Position& positionOf(NodeId n) const { return positions_[n]; }
    double areaWidth() const { return areaW_; }
    double areaHeight() const { return areaH_; }
    double commRange() const { return commRange_; }

    bool inRange(NodeId a, NodeId b) const;
    double distance(NodeId a, NodeId b) const;

    /// Adjacency is precomputed once; the topology never changes mid-run.
    const std::vector<NodeId>& neighborsOf(NodeId n) const { return adjacency_[n]; }
    size_t degree(NodeId n) const { return adjacency_[n].size(); }

  private:
    std::vector<Position> positions_;
    std::vector<std::vector<NodeId>> adjacency_;
    double areaW_;
    double areaH_;
    double commRange_;
};

/// Uniform i.i.d. placement over the area from the given seeded stream;
/// identical seeds reproduce identical placements on every platform.
std::vector<Position> placeNodes(size_t n, double areaW, double areaH, uint64_t seed);

/// Per-node initial charge, uniform in [eLo, eHi].
std::vector<double> assignInitialEnergy(size_t n, uint64_t seed, double eLo, double eHi);

} // namespace manet

#endif
