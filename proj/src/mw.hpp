#pragma once

#include <string>
#include <vector>

#include "blocker.hpp"
#include "graph.hpp"
#include "layered.hpp"

namespace lcf {

struct MwParams {
  double eps = 0.0;
  double eps0 = 0.0;
  double zeta = 0.0;
  double eta = 0.0;
  double ln_m = 0.0;  // natural log of max(m, 2)
  long double log2_m = 0.0L;
  ScaledReal w0;      // (1/m)^zeta
  int64_t inner_cap = 0;

  static MwParams make(int n, int m, int64_t h, double eps);
  // w0 * (1+eps0)^(count/cap); arcs without capacity are pinned at 1.
  ScaledReal weight(int64_t count, int64_t cap) const;
};

struct Commodity {
  VertexSet sources;
  VertexSet sinks;
};

struct MwOptions {
  double eps = 0.5;
  BlockMode mode = BlockMode::kDeterministic;
  uint64_t seed = 0;
};

struct MwStats {
  int64_t blocker_calls = 0;
  int64_t lambda_steps = 0;
  int64_t blocker_iterations = 0;
  double flow_scale = 1.0;  // factor applied when eta * counts overshot a capacity
};

struct MwResult {
  std::vector<PathFlow> flows;  // one per commodity
  MovingCut cut;
  std::vector<int64_t> counts;  // per-arc total blocker load
  MwStats stats;
};

MwResult solve_pair(const Digraph& g, int64_t h, const MwOptions& opt);

// Batches list commodity indices; pairs inside a batch must be more than 2h
// apart in undirected length distance.
MwResult solve_multi(const Digraph& g, const std::vector<Commodity>& commodities,
                     const std::vector<std::vector<int>>& batches, int64_t h,
                     const MwOptions& opt);

// Throws when some batch violates separation or has overlapping terminals.
void check_batches(const Digraph& g, const std::vector<Commodity>& commodities,
                   const std::vector<std::vector<int>>& batches, int64_t h);

struct CertReport {
  bool flow_feasible = false;
  bool cut_feasible = false;
  long double primal = 0;
  long double dual = 0;
  long double slack = 0;  // m * U_max * (1/m)^zeta
  long double gap = 0;    // primal / dual, 1 when both vanish
  ScaledReal min_distance;
  std::string reason;
  bool pass() const;
};

CertReport certify_pair(const Digraph& g, const PathFlow& f, const MovingCut& w, int64_t h,
                        double eps);
CertReport certify_multi(const Digraph& g, const std::vector<Commodity>& commodities,
                         const std::vector<PathFlow>& f, const MovingCut& w, int64_t h,
                         double eps);

}  // namespace lcf
