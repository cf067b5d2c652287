#pragma once

#include <vector>

#include "graph.hpp"
#include "layered.hpp"

namespace lcf {

// Weights rounded up to multiples of g = eps * lambda / h, stored as integer
// multiples. Multiples above `clamp` are reported as clamp + 1.
struct RoundedWeights {
  double granularity = 0.0;
  ScaledReal g;
  std::vector<int64_t> mult;
};

RoundedWeights round_weights(const MovingCut& w, double eps, const ScaledReal& lambda,
                             int64_t h, int64_t clamp = INT64_MAX / 4);

// Largest weight index kept in the expanded DAG: (1+2 eps) h / eps.
int64_t weight_index_bound(double eps, int64_t h);
double copy_threshold(double eps, int64_t h);

struct ExpandedDag {
  LayeredDag dag;
  std::vector<int> orig_arc;     // per copy arc
  std::vector<int> orig_vertex;  // per copy vertex
  std::vector<int64_t> x;        // weight index per copy vertex
  std::vector<int64_t> len;      // length coordinate per copy vertex
  RoundedWeights weights;
  int64_t x_bound = 0;
  double kappa = 0.0;
};

// Copies of arcs with residual[a] > 0 only; residual defaults to the caps.
// The result keeps only copies on some V'(S)-V'(T) path.
ExpandedDag build_expanded_dag(const Digraph& g, const MovingCut& w, int64_t h,
                               const ScaledReal& lambda, double eps,
                               const std::vector<int64_t>* residual = nullptr);

// Copy walk projected to g with cycles shortcut.
std::vector<int> project_path(const ExpandedDag& e, const Digraph& g,
                              const std::vector<int>& copy_arcs);

// Greedy weighted independent set on the path conflict graph: two paths
// conflict when they share an arc whose total load exceeds its capacity.
// `caps` defaults to g's capacities.
IntegralFlow decongest(const Digraph& g, const IntegralFlow& f, int64_t alpha,
                       const std::vector<int64_t>* caps = nullptr);

struct BlockerStats {
  int64_t iterations = 0;
  int64_t max_copy_arcs = 0;
};

// Integral h-length flow on paths of weight <= (1+2 eps) lambda saturating an
// arc on every h-length path of weight <= (1+eps) lambda. `dist`, when given,
// is the known h-length distance used for the precondition check.
IntegralFlow lightest_path_blocker(const Digraph& g, const MovingCut& w, int64_t h,
                                   const ScaledReal& lambda, double eps, BlockMode mode,
                                   Rng* rng = nullptr, const ScaledReal* dist = nullptr,
                                   BlockerStats* stats = nullptr);

}  // namespace lcf
