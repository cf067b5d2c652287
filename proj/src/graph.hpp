#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "error.hpp"
#include "scaled_real.hpp"

namespace lcf {

struct Arc {
  int tail;
  int head;
  int64_t cap;
  int64_t len;
};

using VertexSet = std::vector<int>;

class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n) : out_(n), in_(n), is_s_(n, 0), is_t_(n, 0) {}

  int add_vertex();
  int add_arc(int tail, int head, int64_t cap, int64_t len);
  void set_terminals(VertexSet sources, VertexSet sinks);

  int n() const { return static_cast<int>(out_.size()); }
  int m() const { return static_cast<int>(arcs_.size()); }
  const Arc& arc(int a) const { return arcs_[a]; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<int>& out(int v) const { return out_[v]; }
  const std::vector<int>& in(int v) const { return in_[v]; }
  const VertexSet& sources() const { return S_; }
  const VertexSet& sinks() const { return T_; }
  bool is_source(int v) const { return is_s_[v] != 0; }
  bool is_sink(int v) const { return is_t_[v] != 0; }
  void set_cap(int a, int64_t c) { arcs_[a].cap = c; }
  int64_t max_cap() const;

  // Throws on S and T overlapping, nonpositive lengths, negative capacities.
  void validate() const;

 private:
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_, in_;
  VertexSet S_, T_;
  std::vector<char> is_s_, is_t_;
};

// Per-arc nonnegative weights.
using MovingCut = std::vector<ScaledReal>;

// Exact per-arc values; not necessarily conserving.
using ArcFlow = std::vector<mpq_class>;

struct WeightedPath {
  std::vector<int> arcs;
  int64_t mult = 0;
};

using IntegralFlow = std::vector<WeightedPath>;

// eta * sum_j f_j with each f_j integral.
struct PathFlow {
  double eta = 1.0;
  std::vector<IntegralFlow> components;

  // Sum over components of the multiplicity through each arc.
  std::vector<int64_t> arc_counts(int m) const;
  int64_t total_multiplicity() const;
  long double value() const { return eta * static_cast<long double>(total_multiplicity()); }
};

std::vector<int64_t> arc_load(const IntegralFlow& f, int m);
int64_t flow_value(const IntegralFlow& f);
// Vertex sequence of an arc path.
std::vector<int> path_vertices(const Digraph& g, const std::vector<int>& arcs);

// Minimum w-weight over paths of total length <= h from `from` to `to`.
// Arcs with usable[a] == 0 are skipped when a mask is given.
ScaledReal h_length_distance(const Digraph& g, const MovingCut& w, int64_t h,
                             const VertexSet& from, const VertexSet& to,
                             const std::vector<char>* usable = nullptr);

struct DeficitReport {
  std::vector<mpq_class> per_vertex;
  mpq_class total;
};
DeficitReport deficit(const Digraph& g, const ArcFlow& f);

struct BitFlow {
  int power;                 // bit value is 2^power
  std::vector<char> on;      // per arc
};
// f = sum of bit flows, top bit at floor(log2 U_max). Values must be
// multiples of 2^-frac_bits.
std::vector<BitFlow> bitwise_decompose(const ArcFlow& f, int64_t u_max,
                                       int frac_bits);

int ceil_log2(const mpz_class& x);
int ceil_log2_u64(uint64_t x);

}  // namespace lcf
