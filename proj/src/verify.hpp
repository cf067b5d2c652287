#pragma once

#include <string>
#include <vector>

#include "graph.hpp"

// Independent checkers. Nothing here depends on the solver modules.

namespace lcf {

// Simple S-T paths of length <= h whose only S vertex is the first and only
// T vertex the last (every S-T path contains one). Throws past `limit`.
std::vector<std::vector<int>> enumerate_h_paths(const Digraph& g, int64_t h, size_t limit);

struct Verdict {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

Verdict verify_moving_cut(const Digraph& g, const MovingCut& w, int64_t h);
// Paths simple, contiguous, S to T, length <= h; eta * load <= U exactly.
Verdict verify_flow(const Digraph& g, const PathFlow& f, int64_t h);
Verdict verify_blocker(const Digraph& g, const IntegralFlow& f, const MovingCut& w, int64_t h,
                       const ScaledReal& lambda, double eps);
// Integral flow within U on delta+(S) and delta-(T) and gamma U elsewhere;
// cut cost <= phi (U+(S) - val); S-T distance under the cutmatch lengths > h.
Verdict verify_cutmatch(const Digraph& g, const PathFlow& f, const MovingCut& w, int64_t h,
                        double phi, double gamma);

struct DisjointSpec {
  bool vertex = false;    // vertex-disjoint rather than edge-disjoint
  bool directed = true;
};

// A path in the input graph: vertex sequence and the arc (edge) ids used.
struct VertexPath {
  std::vector<int> vertices;
  std::vector<int> edges;
};

// Every path valid and h-length, pairwise disjoint per `spec`.
Verdict verify_disjoint_paths(const Digraph& g, DisjointSpec spec, int64_t h,
                              const std::vector<VertexPath>& paths);
// Additionally no h-length S-T path survives deleting what the paths use.
Verdict verify_maximal(const Digraph& g, DisjointSpec spec, int64_t h,
                       const std::vector<VertexPath>& paths);

// Exhaustive optima. Throw once `cap` paths (nodes for b-matching) are exceeded.
int brute_force_disjoint_paths(const Digraph& g, DisjointSpec spec, int64_t h, size_t cap);
int64_t brute_force_b_matching(const Digraph& g, const std::vector<int64_t>& budget, size_t cap);

Verdict verify_b_matching(const Digraph& g, const std::vector<int64_t>& budget,
                          const std::vector<int64_t>& x);

}  // namespace lcf
