#include "blocker.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "decompose.hpp"

namespace lcf {

int64_t weight_index_bound(double eps, int64_t h) {
  return static_cast<int64_t>(std::floor((1.0 + 2.0 * eps) * static_cast<double>(h) / eps + 1e-9));
}

double copy_threshold(double eps, int64_t h) {
  const double hd = static_cast<double>(h);
  return hd * (hd / eps + 2.0 * hd);
}

RoundedWeights round_weights(const MovingCut& w, double eps, const ScaledReal& lambda,
                             int64_t h, int64_t clamp) {
  if (lambda.is_zero() || lambda.is_inf()) fail_precondition("lambda must be positive and finite");
  if (h < 1) fail_precondition("h must be positive");
  RoundedWeights r;
  r.g = lambda * ScaledReal::from_double(eps / static_cast<double>(h));
  r.granularity = r.g.to_double();
  r.mult.resize(w.size());
  const long double lclamp = std::log2(static_cast<long double>(clamp));
  for (size_t a = 0; a < w.size(); ++a) {
    if (w[a].is_zero()) {
      r.mult[a] = 0;
      continue;
    }
    ScaledReal q = w[a] / r.g;
    if (q.is_inf() || q.log2() > lclamp) {
      r.mult[a] = clamp + 1;
      continue;
    }
    r.mult[a] = static_cast<int64_t>(std::ceil(q.to_double()));
  }
  return r;
}

ExpandedDag build_expanded_dag(const Digraph& g, const MovingCut& w, int64_t h,
                               const ScaledReal& lambda, double eps,
                               const std::vector<int64_t>* residual) {
  ExpandedDag e;
  e.x_bound = weight_index_bound(eps, h);
  e.kappa = copy_threshold(eps, h);
  e.weights = round_weights(w, eps, lambda, h, e.x_bound);
  const int n = g.n();
  const int64_t X = e.x_bound;
  const std::vector<int64_t>& mult = e.weights.mult;
  auto res = [&](int a) { return residual ? (*residual)[a] : g.arc(a).cap; };
  auto usable = [&](int a) { return res(a) > 0 && g.arc(a).len <= h && mult[a] <= X; };

  // dT[r][v]: least rounded weight from v to T with length <= r.
  const int64_t kInf = INT64_MAX / 4;
  std::vector<std::vector<int64_t>> dT(h + 1, std::vector<int64_t>(n, kInf));
  for (int64_t r = 0; r <= h; ++r) {
    std::vector<int64_t>& cur = dT[r];
    for (int t : g.sinks()) cur[t] = 0;
    if (r == 0) continue;
    for (int v = 0; v < n; ++v) {
      if (g.is_sink(v)) continue;
      int64_t best = dT[r - 1][v];
      for (int a : g.out(v)) {
        if (!usable(a) || g.arc(a).len > r) continue;
        int64_t rest = dT[r - g.arc(a).len][g.arc(a).head];
        if (rest < kInf) best = std::min(best, rest + mult[a]);
      }
      cur[v] = best;
    }
  }

  Digraph& eg = e.dag.g;
  std::unordered_map<int64_t, int> id;
  auto key = [&](int v, int64_t x, int64_t hp) {
    return (static_cast<int64_t>(v) * (X + 1) + x) * (h + 1) + hp;
  };
  std::vector<std::vector<int>> bucket(h + 1);
  auto state = [&](int v, int64_t x, int64_t hp) {
    auto [it, fresh] = id.emplace(key(v, x, hp), eg.n());
    if (fresh) {
      eg.add_vertex();
      e.orig_vertex.push_back(v);
      e.x.push_back(x);
      e.len.push_back(hp);
      bucket[hp].push_back(it->second);
    }
    return it->second;
  };
  VertexSet src, snk;
  for (int s : g.sources()) {
    if (dT[h][s] <= X) src.push_back(state(s, 0, 0));
  }
  for (int64_t hp = 0; hp <= h; ++hp) {
    for (size_t i = 0; i < bucket[hp].size(); ++i) {
      const int cv = bucket[hp][i];
      const int v = e.orig_vertex[cv];
      const int64_t x = e.x[cv];
      if (g.is_sink(v)) {
        snk.push_back(cv);
        continue;
      }
      for (int a : g.out(v)) {
        if (!usable(a)) continue;
        const Arc& arc = g.arc(a);
        const int64_t nh = hp + arc.len;
        const int64_t nx = x + mult[a];
        if (nh > h || nx > X) continue;
        if (dT[h - nh][arc.head] > X - nx) continue;
        int cu = state(arc.head, nx, nh);
        const int64_t r = res(a);
        const int64_t cap = static_cast<double>(r) <= e.kappa
                                ? 1
                                : static_cast<int64_t>(std::floor(static_cast<double>(r) / e.kappa));
        eg.add_arc(cv, cu, std::max<int64_t>(1, cap), 1);
        e.orig_arc.push_back(a);
      }
    }
  }
  eg.set_terminals(src, snk);
  e.dag = validate_layered_dag(eg);
  return e;
}

std::vector<int> project_path(const ExpandedDag& e, const Digraph& g,
                              const std::vector<int>& copy_arcs) {
  std::vector<int> verts, arcs;
  if (copy_arcs.empty()) return arcs;
  verts.push_back(g.arc(e.orig_arc[copy_arcs[0]]).tail);
  for (int ca : copy_arcs) {
    const int a = e.orig_arc[ca];
    const int u = g.arc(a).head;
    auto it = std::find(verts.begin(), verts.end(), u);
    if (it != verts.end()) {
      size_t k = it - verts.begin();
      verts.resize(k + 1);
      arcs.resize(k);
      continue;
    }
    arcs.push_back(a);
    verts.push_back(u);
  }
  return arcs;
}

IntegralFlow decongest(const Digraph& g, const IntegralFlow& f, int64_t alpha,
                       const std::vector<int64_t>* caps) {
  const int m = g.m();
  auto cap = [&](int a) { return caps ? (*caps)[a] : g.arc(a).cap; };
  std::vector<int64_t> load = arc_load(f, m);
  std::vector<char> over(m, 0);
  for (int a = 0; a < m; ++a) {
    if (load[a] <= cap(a)) continue;
    over[a] = 1;
    if (load[a] > alpha * std::max<int64_t>(1, cap(a))) {
      fail_precondition("flow is more than alpha-congested");
    }
  }
  std::vector<int> idx(f.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return f[a].mult > f[b].mult; });
  std::vector<char> taken(m, 0);
  std::vector<char> keep(f.size(), 0);
  for (int i : idx) {
    bool ok = true;
    for (int a : f[i].arcs) {
      if (over[a] && taken[a]) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    keep[i] = 1;
    for (int a : f[i].arcs) {
      if (over[a]) taken[a] = 1;
    }
  }
  IntegralFlow out;
  for (size_t i = 0; i < f.size(); ++i) {
    if (keep[i]) out.push_back(f[i]);
  }
  return out;
}

IntegralFlow lightest_path_blocker(const Digraph& g, const MovingCut& w, int64_t h,
                                   const ScaledReal& lambda, double eps, BlockMode mode,
                                   Rng* rng, const ScaledReal* dist, BlockerStats* stats) {
  if (!(eps > 0.0 && eps < 1.0)) fail_precondition("eps must lie in (0,1)");
  if (h < 1) fail_precondition("h must be positive");
  if (static_cast<int>(w.size()) != g.m()) fail_precondition("weight vector size mismatch");
  ScaledReal d = dist ? *dist : h_length_distance(g, w, h, g.sources(), g.sinks());
  if (!ScaledReal::approx_le(lambda, d)) {
    fail_precondition("lambda exceeds the h-length distance");
  }
  std::vector<int64_t> R(g.m());
  for (int a = 0; a < g.m(); ++a) R[a] = g.arc(a).cap;

  const double logn = std::max(1, ceil_log2_u64(static_cast<uint64_t>(g.n())));
  const double cap_iters = 64.0 * std::pow(static_cast<double>(h), 7) / (eps * eps) * logn * logn;
  const int64_t alpha = (weight_index_bound(eps, h) + 1) * (h + 1);

  std::map<std::vector<int>, size_t> where;
  IntegralFlow out;
  int64_t iters = 0;
  for (;;) {
    ExpandedDag e = build_expanded_dag(g, w, h, lambda, eps, &R);
    if (stats) stats->max_copy_arcs = std::max<int64_t>(stats->max_copy_arcs, e.dag.g.m());
    if (e.dag.g.m() == 0) break;
    if (++iters > cap_iters) fail_internal("blocker exceeded its iteration cap");
    std::vector<int64_t> fb = blocking_integral_flow(e.dag, mode, rng);
    IntegralFlow cand;
    for (WeightedPath& p : sparse_decompose(e.dag, fb)) {
      std::vector<int> arcs = project_path(e, g, p.arcs);
      if (arcs.empty()) fail_internal("projected blocker path is empty");
      cand.push_back({std::move(arcs), p.mult});
    }
    IntegralFlow sel = decongest(g, cand, alpha, &R);
    if (sel.empty()) fail_internal("decongestion selected nothing");
    for (WeightedPath& p : sel) {
      for (int a : p.arcs) {
        R[a] -= p.mult;
        if (R[a] < 0) fail_internal("blocker exceeded a capacity");
      }
      auto [it, fresh] = where.emplace(p.arcs, out.size());
      if (fresh) {
        out.push_back(std::move(p));
      } else {
        out[it->second].mult += p.mult;
      }
    }
  }
  if (stats) stats->iterations = iters;
  return out;
}

}  // namespace lcf
