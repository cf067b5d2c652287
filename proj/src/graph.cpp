#include "graph.hpp"

#include <algorithm>
#include <string>

namespace lcf {

int Digraph::add_vertex() {
  out_.emplace_back();
  in_.emplace_back();
  is_s_.push_back(0);
  is_t_.push_back(0);
  return n() - 1;
}

int Digraph::add_arc(int tail, int head, int64_t cap, int64_t len) {
  if (tail < 0 || tail >= n() || head < 0 || head >= n()) {
    fail_input("arc endpoint out of range");
  }
  arcs_.push_back({tail, head, cap, len});
  int id = m() - 1;
  out_[tail].push_back(id);
  in_[head].push_back(id);
  return id;
}

void Digraph::set_terminals(VertexSet sources, VertexSet sinks) {
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  std::sort(sinks.begin(), sinks.end());
  sinks.erase(std::unique(sinks.begin(), sinks.end()), sinks.end());
  std::fill(is_s_.begin(), is_s_.end(), 0);
  std::fill(is_t_.begin(), is_t_.end(), 0);
  for (int v : sources) {
    if (v < 0 || v >= n()) fail_input("source out of range");
    is_s_[v] = 1;
  }
  for (int v : sinks) {
    if (v < 0 || v >= n()) fail_input("sink out of range");
    is_t_[v] = 1;
  }
  S_ = std::move(sources);
  T_ = std::move(sinks);
}

int64_t Digraph::max_cap() const {
  int64_t u = 0;
  for (const Arc& a : arcs_) u = std::max(u, a.cap);
  return u;
}

void Digraph::validate() const {
  for (int v : S_) {
    if (is_t_[v]) fail_precondition("S and T intersect at vertex " + std::to_string(v + 1));
  }
  for (const Arc& a : arcs_) {
    if (a.len < 1) fail_input("arc length must be a positive integer");
    if (a.cap < 0) fail_input("arc capacity must be nonnegative");
  }
}

std::vector<int64_t> PathFlow::arc_counts(int m) const {
  std::vector<int64_t> c(m, 0);
  for (const IntegralFlow& f : components) {
    for (const WeightedPath& p : f) {
      for (int a : p.arcs) c[a] += p.mult;
    }
  }
  return c;
}

int64_t PathFlow::total_multiplicity() const {
  int64_t t = 0;
  for (const IntegralFlow& f : components) t += flow_value(f);
  return t;
}

std::vector<int64_t> arc_load(const IntegralFlow& f, int m) {
  std::vector<int64_t> c(m, 0);
  for (const WeightedPath& p : f) {
    for (int a : p.arcs) c[a] += p.mult;
  }
  return c;
}

int64_t flow_value(const IntegralFlow& f) {
  int64_t t = 0;
  for (const WeightedPath& p : f) t += p.mult;
  return t;
}

std::vector<int> path_vertices(const Digraph& g, const std::vector<int>& arcs) {
  std::vector<int> vs;
  if (arcs.empty()) return vs;
  vs.push_back(g.arc(arcs[0]).tail);
  for (int a : arcs) vs.push_back(g.arc(a).head);
  return vs;
}

ScaledReal h_length_distance(const Digraph& g, const MovingCut& w, int64_t h,
                             const VertexSet& from, const VertexSet& to,
                             const std::vector<char>* usable) {
  if (h < 0 || from.empty() || to.empty()) return ScaledReal::infinity();
  const int n = g.n();
  const ScaledReal inf = ScaledReal::infinity();
  // best[r][v]: lightest walk from `from` to v with total length <= r.
  std::vector<std::vector<ScaledReal>> best(h + 1, std::vector<ScaledReal>(n, inf));
  for (int s : from) best[0][s] = ScaledReal::zero();
  for (int64_t r = 1; r <= h; ++r) {
    std::vector<ScaledReal>& cur = best[r];
    cur = best[r - 1];
    for (int a = 0; a < g.m(); ++a) {
      if (usable && !(*usable)[a]) continue;
      const Arc& arc = g.arc(a);
      if (arc.len > r) continue;
      const ScaledReal& du = best[r - arc.len][arc.tail];
      if (du.is_inf()) continue;
      ScaledReal cand = du + w[a];
      if (cand < cur[arc.head]) cur[arc.head] = cand;
    }
  }
  ScaledReal d = inf;
  for (int t : to) {
    if (best[h][t] < d) d = best[h][t];
  }
  return d;
}

DeficitReport deficit(const Digraph& g, const ArcFlow& f) {
  DeficitReport r;
  r.per_vertex.assign(g.n(), 0);
  std::vector<mpq_class> net(g.n(), 0);
  for (int a = 0; a < g.m(); ++a) {
    net[g.arc(a).tail] += f[a];
    net[g.arc(a).head] -= f[a];
  }
  r.total = 0;
  for (int v = 0; v < g.n(); ++v) {
    if (g.is_source(v) || g.is_sink(v)) continue;
    r.per_vertex[v] = abs(net[v]);
    r.total += r.per_vertex[v];
  }
  return r;
}

int ceil_log2(const mpz_class& x) {
  if (x <= 1) return 0;
  mpz_class y = x - 1;
  return static_cast<int>(mpz_sizeinbase(y.get_mpz_t(), 2));
}

int ceil_log2_u64(uint64_t x) {
  int k = 0;
  while (k < 64 && (uint64_t{1} << k) < x) ++k;
  return k;
}

std::vector<BitFlow> bitwise_decompose(const ArcFlow& f, int64_t u_max,
                                       int frac_bits) {
  int top = 0;
  while ((int64_t{1} << (top + 1)) <= u_max) ++top;
  mpz_class scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), frac_bits);
  std::vector<mpz_class> num(f.size());
  for (size_t a = 0; a < f.size(); ++a) {
    if (f[a] < 0) fail_precondition("negative flow value");
    mpq_class scaled = f[a] * scale;
    if (scaled.get_den() != 1) {
      fail_precondition("flow value not representable with the given bit depth");
    }
    num[a] = scaled.get_num();
    if (mpz_sizeinbase(num[a].get_mpz_t(), 2) > static_cast<size_t>(top + 1 + frac_bits) &&
        num[a] != 0) {
      fail_precondition("flow value exceeds U_max");
    }
  }
  std::vector<BitFlow> out;
  for (int p = top; p >= -frac_bits; --p) {
    BitFlow b{p, std::vector<char>(f.size(), 0)};
    bool any = false;
    for (size_t a = 0; a < f.size(); ++a) {
      if (mpz_tstbit(num[a].get_mpz_t(), p + frac_bits)) {
        b.on[a] = 1;
        any = true;
      }
    }
    if (any) out.push_back(std::move(b));
  }
  return out;
}

}  // namespace lcf
