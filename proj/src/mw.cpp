#include "mw.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace lcf {

MwParams MwParams::make(int n, int m, int64_t h, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) fail_precondition("eps must lie in (0,1)");
  MwParams p;
  p.eps = eps;
  p.eps0 = eps / 6.0;
  p.zeta = (1.0 + 2.0 * p.eps0) / p.eps0 + 1.0;
  p.ln_m = std::log(static_cast<double>(std::max(m, 2)));
  p.eta = p.eps0 / ((1.0 + p.eps0) * p.zeta) / p.ln_m;
  p.log2_m = std::log2(static_cast<long double>(std::max(m, 2)));
  p.w0 = ScaledReal::exp2(-static_cast<long double>(p.zeta) * p.log2_m);
  // Within this many blocker calls at one lambda some arc of every light path
  // has been saturated often enough to push its weight past 2.
  const long double per_arc = std::ceil((std::log(2.0L) + p.zeta * p.ln_m) /
                                        std::log1p(static_cast<long double>(p.eps0)));
  p.inner_cap = static_cast<int64_t>(h * per_arc) + 1;
  (void)n;
  return p;
}

ScaledReal MwParams::weight(int64_t count, int64_t cap) const {
  if (cap <= 0) return ScaledReal::from_double(1.0);
  long double e = -static_cast<long double>(zeta) * log2_m +
                  static_cast<long double>(count) / static_cast<long double>(cap) *
                      std::log2(1.0L + static_cast<long double>(eps0));
  return ScaledReal::exp2(e);
}

namespace {

Digraph with_terminals(const Digraph& g, const Commodity& c) {
  Digraph r = g;
  r.set_terminals(c.sources, c.sinks);
  return r;
}

ScaledReal dual_value(const Digraph& g, const MovingCut& w) {
  ScaledReal d = ScaledReal::zero();
  for (int a = 0; a < g.m(); ++a) {
    if (g.arc(a).cap == 0) continue;
    d += w[a] * ScaledReal::from_double(static_cast<double>(g.arc(a).cap));
  }
  return d;
}

MwResult mw_core(const Digraph& g, const std::vector<Commodity>& comms,
                 const std::vector<std::vector<int>>& batches, int64_t h,
                 const MwOptions& opt) {
  if (h < 1) fail_precondition("h must be positive");
  const MwParams p = MwParams::make(g.n(), g.m(), h, opt.eps);
  const int m = g.m();
  const int k = static_cast<int>(comms.size());
  std::vector<Digraph> gi;
  for (const Commodity& c : comms) {
    gi.push_back(with_terminals(g, c));
    gi.back().validate();
    if (c.sources.empty() || c.sinks.empty()) fail_precondition("commodity without sources or sinks");
  }
  Rng rng(opt.seed);
  Rng* rp = opt.mode == BlockMode::kRandomized ? &rng : nullptr;

  MwResult res;
  res.flows.assign(k, PathFlow{});
  for (PathFlow& f : res.flows) f.eta = p.eta;
  res.counts.assign(m, 0);
  MovingCut w(m);
  for (int a = 0; a < m; ++a) w[a] = p.weight(0, g.arc(a).cap);

  std::vector<ScaledReal> dist(k);
  for (int i = 0; i < k; ++i) dist[i] = h_length_distance(gi[i], w, h, gi[i].sources(), gi[i].sinks());
  auto min_dist = [&]() {
    ScaledReal d = ScaledReal::infinity();
    for (const ScaledReal& x : dist) d = std::min(d, x);
    return d;
  };

  // Best normalized dual seen so far: w / d minimizes D / d.
  ScaledReal best_ratio = ScaledReal::infinity();
  MovingCut best_w;
  ScaledReal best_d;
  auto track = [&]() {
    ScaledReal d = min_dist();
    if (d.is_inf()) {
      best_ratio = ScaledReal::zero();
      best_w = w;
      best_d = d;
      return;
    }
    ScaledReal r = dual_value(g, w) / d;
    if (r < best_ratio) {
      best_ratio = r;
      best_w = w;
      best_d = d;
    }
  };
  track();

  const ScaledReal one = ScaledReal::from_double(1.0);
  const ScaledReal grow = ScaledReal::from_double(1.0 + p.eps0);
  ScaledReal lambda = p.w0;
  while (lambda < one && !best_ratio.is_zero()) {
    for (const std::vector<int>& batch : batches) {
      for (int i : batch) {
        const ScaledReal target = lambda * grow;
        int64_t inner = 0;
        while (!ScaledReal::approx_ge(dist[i], target)) {
          if (++inner > p.inner_cap) fail_internal("multiplicative-weights inner loop exceeded its cap");
          BlockerStats bs;
          // A pair whose light paths all cross uncapacitated arcs can sit
          // below lambda; its blocker is then run at its own distance.
          const ScaledReal lam = std::min(lambda, dist[i]);
          IntegralFlow fb = lightest_path_blocker(gi[i], w, h, lam, p.eps0, opt.mode, rp,
                                                  &dist[i], &bs);
          ++res.stats.blocker_calls;
          res.stats.blocker_iterations += bs.iterations;
          if (fb.empty()) break;
          std::vector<int64_t> load = arc_load(fb, m);
          for (int a = 0; a < m; ++a) {
            if (load[a] == 0) continue;
            res.counts[a] += load[a];
            w[a] = p.weight(res.counts[a], g.arc(a).cap);
          }
          res.flows[i].components.push_back(std::move(fb));
          for (int j = 0; j < k; ++j) {
            dist[j] = h_length_distance(gi[j], w, h, gi[j].sources(), gi[j].sinks());
          }
          track();
        }
      }
    }
    lambda = lambda * grow;
    ++res.stats.lambda_steps;
  }

  // eta * counts may overshoot a capacity by one blocker's worth of load.
  long double r = 1.0L;
  for (int a = 0; a < m; ++a) {
    if (res.counts[a] == 0) continue;
    long double ratio = static_cast<long double>(p.eta) * res.counts[a] /
                        static_cast<long double>(g.arc(a).cap);
    r = std::max(r, ratio);
  }
  if (r > 1.0L) {
    res.stats.flow_scale = static_cast<double>(1.0L / r);
    for (PathFlow& f : res.flows) f.eta = static_cast<double>(p.eta / r) * (1.0 - 1e-15);
  }
  res.cut.assign(m, ScaledReal::zero());
  if (!best_d.is_inf()) {
    for (int a = 0; a < m; ++a) res.cut[a] = best_w[a] / best_d;
  }
  return res;
}

// Undirected length distances from `from`, explored only up to `limit`.
std::vector<int64_t> bounded_undirected(const Digraph& g, const VertexSet& from, int64_t limit) {
  const int64_t kInf = INT64_MAX;
  std::vector<int64_t> d(g.n(), kInf);
  using Item = std::pair<int64_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  for (int v : from) {
    d[v] = 0;
    pq.push({0, v});
  }
  while (!pq.empty()) {
    auto [dv, v] = pq.top();
    pq.pop();
    if (dv != d[v] || dv > limit) continue;
    auto relax = [&](int u, int64_t len) {
      if (dv + len < d[u] && dv + len <= limit) {
        d[u] = dv + len;
        pq.push({d[u], u});
      }
    };
    for (int a : g.out(v)) relax(g.arc(a).head, g.arc(a).len);
    for (int a : g.in(v)) relax(g.arc(a).tail, g.arc(a).len);
  }
  return d;
}

}  // namespace

void check_batches(const Digraph& g, const std::vector<Commodity>& comms,
                   const std::vector<std::vector<int>>& batches, int64_t h) {
  std::vector<int> seen(comms.size(), 0);
  for (const std::vector<int>& batch : batches) {
    for (int i : batch) {
      if (i < 0 || i >= static_cast<int>(comms.size())) fail_precondition("batch names an unknown commodity");
      ++seen[i];
    }
    for (size_t x = 0; x < batch.size(); ++x) {
      const Commodity& c = comms[batch[x]];
      VertexSet ends = c.sources;
      ends.insert(ends.end(), c.sinks.begin(), c.sinks.end());
      std::vector<int64_t> d = bounded_undirected(g, ends, 2 * h);
      for (size_t y = 0; y < batch.size(); ++y) {
        if (y == x) continue;
        const Commodity& o = comms[batch[y]];
        for (const VertexSet* vs : {&o.sources, &o.sinks}) {
          for (int v : *vs) {
            if (d[v] <= 2 * h) {
              fail_precondition("commodities " + std::to_string(batch[x] + 1) + " and " +
                                std::to_string(batch[y] + 1) + " are not separated in their batch");
            }
          }
        }
      }
    }
  }
  for (size_t i = 0; i < comms.size(); ++i) {
    if (seen[i] != 1) fail_precondition("every commodity must appear in exactly one batch");
  }
}

MwResult solve_pair(const Digraph& g, int64_t h, const MwOptions& opt) {
  if (g.sources().empty() || g.sinks().empty()) fail_precondition("S and T must be nonempty");
  return mw_core(g, {Commodity{g.sources(), g.sinks()}}, {{0}}, h, opt);
}

MwResult solve_multi(const Digraph& g, const std::vector<Commodity>& comms,
                     const std::vector<std::vector<int>>& batches, int64_t h,
                     const MwOptions& opt) {
  check_batches(g, comms, batches, h);
  return mw_core(g, comms, batches, h, opt);
}

bool CertReport::pass() const { return flow_feasible && cut_feasible && reason.empty(); }

namespace {

long double to_ld(const ScaledReal& x) {
  if (x.is_zero()) return 0.0L;
  return std::exp2(x.log2());
}

// Checks that every stored path is a simple S-T path of length <= h.
bool check_paths(const Digraph& g, const Commodity& c, const PathFlow& f, int64_t h,
                 std::string& why) {
  std::vector<char> is_s(g.n(), 0), is_t(g.n(), 0);
  for (int v : c.sources) is_s[v] = 1;
  for (int v : c.sinks) is_t[v] = 1;
  for (const IntegralFlow& comp : f.components) {
    for (const WeightedPath& p : comp) {
      if (p.mult <= 0 || p.arcs.empty()) {
        why = "empty path or nonpositive multiplicity";
        return false;
      }
      int64_t len = 0;
      std::vector<int> vs{g.arc(p.arcs[0]).tail};
      for (size_t i = 0; i < p.arcs.size(); ++i) {
        int a = p.arcs[i];
        if (a < 0 || a >= g.m()) {
          why = "arc id out of range";
          return false;
        }
        if (g.arc(a).tail != vs.back()) {
          why = "path is not contiguous";
          return false;
        }
        vs.push_back(g.arc(a).head);
        len += g.arc(a).len;
      }
      if (!is_s[vs.front()] || !is_t[vs.back()]) {
        why = "path does not run from S to T";
        return false;
      }
      if (len > h) {
        why = "path longer than h";
        return false;
      }
      std::vector<int> sorted = vs;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        why = "path is not simple";
        return false;
      }
    }
  }
  return true;
}

}  // namespace

CertReport certify_multi(const Digraph& g, const std::vector<Commodity>& comms,
                         const std::vector<PathFlow>& f, const MovingCut& w, int64_t h,
                         double eps) {
  CertReport r;
  if (f.size() != comms.size() || static_cast<int>(w.size()) != g.m()) {
    r.reason = "shape mismatch";
    return r;
  }
  const int m = g.m();
  std::string why;
  bool ok = true;
  mpq_class primal = 0;
  for (size_t i = 0; i < comms.size() && ok; ++i) {
    ok = check_paths(g, comms[i], f[i], h, why);
    primal += mpq_class(f[i].eta) * mpq_class(static_cast<long>(f[i].total_multiplicity()));
  }
  if (ok) {
    // Capacity check in exact rationals per arc.
    std::vector<mpq_class> load(m, 0);
    for (size_t i = 0; i < comms.size(); ++i) {
      std::vector<int64_t> ci = f[i].arc_counts(m);
      mpq_class eta(f[i].eta);
      for (int a = 0; a < m; ++a) {
        if (ci[a]) load[a] += eta * mpq_class(static_cast<long>(ci[a]));
      }
    }
    for (int a = 0; a < m && ok; ++a) {
      if (load[a] > g.arc(a).cap) {
        ok = false;
        why = "capacity exceeded on arc " + std::to_string(a + 1);
      }
    }
  }
  r.flow_feasible = ok;
  if (!ok) r.reason = why;

  ScaledReal dmin = ScaledReal::infinity();
  for (const Commodity& c : comms) {
    dmin = std::min(dmin, h_length_distance(g, w, h, c.sources, c.sinks));
  }
  r.min_distance = dmin;
  r.cut_feasible = ScaledReal::approx_ge(dmin, ScaledReal::from_double(1.0));
  if (!r.cut_feasible && r.reason.empty()) r.reason = "moving cut is infeasible";

  const MwParams p = MwParams::make(g.n(), m, h, eps);
  ScaledReal dual = ScaledReal::zero();
  for (int a = 0; a < m; ++a) {
    dual += w[a] * ScaledReal::from_double(static_cast<double>(g.arc(a).cap));
  }
  r.primal = static_cast<long double>(primal.get_d());
  r.dual = to_ld(dual);
  r.slack = static_cast<long double>(m) * static_cast<long double>(std::max<int64_t>(1, g.max_cap())) *
            to_ld(p.w0);
  r.gap = r.dual > 0 ? r.primal / r.dual : 1.0L;
  const long double lhs = (1.0L - eps) * (r.dual - r.slack);
  const long double rhs = r.primal + 1e-6L * r.dual;
  if (lhs > rhs && r.reason.empty()) r.reason = "duality gap exceeds (1-eps)";
  return r;
}

CertReport certify_pair(const Digraph& g, const PathFlow& f, const MovingCut& w, int64_t h,
                        double eps) {
  return certify_multi(g, {Commodity{g.sources(), g.sinks()}}, {f}, w, h, eps);
}

}  // namespace lcf
