#pragma once

#include <vector>

#include "graph.hpp"
#include "layered.hpp"

namespace lcf {

struct UEdge {
  int u;
  int v;
  int id;
};

// Oriented trail: verts has one more entry than edges for paths; for cycles
// verts.front() == verts.back(). Edge i joins verts[i] and verts[i+1].
struct Trail {
  std::vector<int> verts;
  std::vector<int> edges;
};

struct EulerianPartition {
  std::vector<Trail> cycles;
  std::vector<Trail> paths;  // verts.front() is the designated source
};

// Full edge cover (zero slack). Paths get a source endpoint in `prefer` when
// one of their endpoints is in it.
EulerianPartition eulerian_partition(int num_vertices, const std::vector<UEdge>& edges,
                                     const std::vector<char>* prefer = nullptr);

// Values on H+ become 2c, all other covered arcs 0. Partition edge ids are
// arc ids of g.
ArcFlow flow_turn_update(const Digraph& g, const ArcFlow& bit_flow,
                         const EulerianPartition& part);

std::vector<int64_t> round_fixed_flow(const LayeredDag& d, const FixedFlow& f);
ArcFlow round_flow(const LayeredDag& d, const ArcFlow& f, double eps);

}  // namespace lcf
