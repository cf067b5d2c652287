#pragma once

#include <vector>

#include "graph.hpp"
#include "layered.hpp"

namespace lcf {

struct RationalPath {
  std::vector<int> arcs;
  mpq_class value;
};

// Path decomposition of a zero-deficit flow on a layered DAG. Arcs at each
// vertex are consumed in index order and pending path prefixes in FIFO order,
// so a prefix is split only when the arc it is being routed on runs out.
IntegralFlow sparse_decompose(const LayeredDag& d, const std::vector<int64_t>& f);
std::vector<RationalPath> sparse_decompose(const LayeredDag& d, const ArcFlow& f);

}  // namespace lcf
