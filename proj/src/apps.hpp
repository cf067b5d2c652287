#pragma once

#include <string>
#include <vector>

#include "graph.hpp"
#include "mw.hpp"

namespace lcf {

enum class Variant { kVertex, kEdge, kDirectedVertex, kDirectedArc };

Variant parse_variant(const std::string& s);
const char* variant_name(Variant v);

// Transformed unit-capacity digraph on which arc-disjoint paths correspond to
// disjoint paths of the requested variant. For the undirected variants each
// input arc is one undirected edge.
struct ReductionMap {
  Variant variant = Variant::kDirectedArc;
  Digraph g;
  int64_t h = 0;
  std::vector<int> arc_edge;     // transformed arc -> original edge/arc, or -1
  std::vector<int> vertex_orig;  // transformed vertex -> original vertex, or -1
};

ReductionMap reduce_to_arc_disjoint(const Digraph& orig, Variant variant, int64_t h);

struct OrigPath {
  std::vector<int> vertices;
  std::vector<int> edges;  // input arc ids; for undirected variants, edge ids
};

OrigPath back_project(const ReductionMap& r, const std::vector<int>& arcs);

// Arc-disjoint paths picked from the components of an arc-disjoint flow: the
// best component per source filtered to stay disjoint, the single best
// component, or a greedy pass over all components, whichever is largest.
IntegralFlow pick_disjoint(const Digraph& g, const PathFlow& f);

std::vector<OrigPath> maximal_disjoint_paths(const Digraph& orig, Variant variant, int64_t h,
                                             const MwOptions& opt);
std::vector<OrigPath> maximum_disjoint_paths(const Digraph& orig, Variant variant, int64_t h,
                                             const MwOptions& opt);

struct BMatching {
  std::vector<int64_t> x;  // per edge
  int64_t value = 0;
  std::vector<int> side;   // 0 or 1 per vertex
};

// Edges are the arcs of g (direction ignored), U_e their capacities. Missing
// budgets default to 1.
BMatching b_matching(const Digraph& g, const std::vector<int64_t>& budget, double eps,
                     const MwOptions& opt);

std::vector<int> saturated_arcs(const Digraph& g, const PathFlow& f, double c);

struct CutMatch {
  PathFlow flow;   // eta = 1, integral
  MovingCut cut;
  double gamma = 0.0;      // measured congestion off the boundary
  double gamma_cap = 0.0;  // capacity scale used while routing
  double phi = 1.0;
  int64_t phases = 0;
  int64_t iterations = 0;
};

// delta+(S) union delta-(T)
std::vector<char> boundary_arcs(const Digraph& g);

// Integral flow built from eta * sum_j f_j that respects `res` on boundary
// arcs: first arcs keep the components that load them most, last arcs keep
// those carrying the most first-arc weight, and symmetrically from the sink
// side; the side with more weight on `chosen` wins.
IntegralFlow decongest_cutmatch(const Digraph& g, const PathFlow& f,
                                const std::vector<char>& chosen, const MovingCut& w,
                                const std::vector<int64_t>& res);

struct CutmatchOptions {
  double eps = 0.08;
  BlockMode mode = BlockMode::kDeterministic;
  uint64_t seed = 0;
  int64_t max_iterations = 400;
};

CutMatch cutmatch(const Digraph& g, int64_t h, double phi, const CutmatchOptions& opt);

double cutmatch_gamma_bound(const Digraph& g, double phi);

}  // namespace lcf
