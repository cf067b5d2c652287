#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

#include "graph.hpp"

namespace lcf {

// S-T DAG with a topological layering: every arc goes to a strictly larger
// layer, sources have no in-arcs, sinks no out-arcs, and every other vertex
// has both. Isolated vertices are tolerated.
struct LayeredDag {
  Digraph g;
  std::vector<int> layer;
  int num_layers = 0;
  std::vector<int> order;  // vertices sorted by layer
};

LayeredDag validate_layered_dag(const Digraph& g);

struct PathCounts {
  std::vector<mpz_class> n_plus;
  std::vector<mpz_class> n_minus;
  std::vector<mpz_class> n_arc;
};

PathCounts path_counts(const LayeredDag& d);

enum class BlockMode { kDeterministic, kRandomized };

using Rng = std::mt19937_64;

// Fixed-point flow: value_a = num[a] / 2^bits.
struct FixedFlow {
  int bits = 0;
  std::vector<int64_t> num;
};

int rounding_bits(const Digraph& g);

FixedFlow iterated_path_count_flow_fixed(const LayeredDag& d, int bits);
ArcFlow iterated_path_count_flow(const LayeredDag& d);

std::vector<int64_t> sampled_integral_flow(const LayeredDag& d,
                                           const mpz_class& delta, Rng& rng);

std::vector<int64_t> blocking_integral_flow(const LayeredDag& d, BlockMode mode,
                                            Rng* rng = nullptr);

// Sweeps that drop flow not originating in S or not ending in T. Works on
// any integer grid (callers pass numerators).
std::vector<int64_t> extract_st_subflow(const LayeredDag& d,
                                        std::vector<int64_t> f);

bool is_blocking(const LayeredDag& d, const std::vector<int64_t>& f);
bool is_blocking(const LayeredDag& d, const ArcFlow& f);

// Same DAG with capacities replaced.
LayeredDag with_caps(const LayeredDag& d, const std::vector<int64_t>& caps);

}  // namespace lcf
