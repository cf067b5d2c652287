#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

#include "apps.hpp"

namespace lcf {

namespace {

long double to_ld(const ScaledReal& x) {
  if (x.is_zero()) return 0.0L;
  if (x.is_inf()) return HUGE_VALL;
  return std::exp2(x.log2());
}

// Real-valued Dijkstra distance from S to T.
long double real_distance(const Digraph& g, const std::vector<long double>& len) {
  std::vector<long double> d(g.n(), HUGE_VALL);
  using Item = std::pair<long double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  for (int s : g.sources()) {
    d[s] = 0;
    pq.push({0, s});
  }
  while (!pq.empty()) {
    auto [dv, v] = pq.top();
    pq.pop();
    if (dv != d[v]) continue;
    if (g.is_sink(v)) return dv;
    for (int a : g.out(v)) {
      int u = g.arc(a).head;
      if (dv + len[a] < d[u]) {
        d[u] = dv + len[a];
        pq.push({d[u], u});
      }
    }
  }
  return HUGE_VALL;
}

struct Pick {
  int comp;
  size_t path;
};

// One side of the preference construction. `first` selects which end of a
// path is resolved first.
std::vector<Pick> prefer(const Digraph& g, const PathFlow& f, const std::vector<long double>& w,
                         const std::vector<int64_t>& res, bool source_side) {
  const auto& comps = f.components;
  auto end1 = [&](const WeightedPath& p) { return source_side ? p.arcs.front() : p.arcs.back(); };
  auto end2 = [&](const WeightedPath& p) { return source_side ? p.arcs.back() : p.arcs.front(); };
  const int m = g.m();
  // Stage 1: each end-1 arc keeps the components loading it most.
  std::vector<std::map<int, int64_t>> load1(m);  // arc -> comp -> load
  for (size_t j = 0; j < comps.size(); ++j) {
    for (const WeightedPath& p : comps[j]) load1[end1(p)][static_cast<int>(j)] += p.mult;
  }
  std::vector<std::vector<char>> keep1(m);
  std::vector<std::map<int, char>> pref1(m);
  for (int a = 0; a < m; ++a) {
    if (load1[a].empty()) continue;
    std::vector<std::pair<int64_t, int>> order;
    for (auto [j, v] : load1[a]) order.push_back({v, j});
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    int64_t used = 0;
    for (auto [v, j] : order) {
      if (used + v > res[a]) break;
      used += v;
      pref1[a][j] = 1;
    }
  }
  std::vector<Pick> stage1;
  for (size_t j = 0; j < comps.size(); ++j) {
    for (size_t i = 0; i < comps[j].size(); ++i) {
      if (pref1[end1(comps[j][i])].count(static_cast<int>(j))) stage1.push_back({static_cast<int>(j), i});
    }
  }
  // Stage 2: each end-2 arc keeps the surviving components carrying the most
  // end-1 weight through it.
  std::vector<std::map<int, std::pair<long double, int64_t>>> x2(m);  // arc -> comp -> (x, load)
  for (const Pick& pk : stage1) {
    const WeightedPath& p = comps[pk.comp][pk.path];
    auto& e = x2[end2(p)][pk.comp];
    e.first += static_cast<long double>(p.mult) * w[end1(p)];
    e.second += p.mult;
  }
  std::vector<std::map<int, char>> pref2(m);
  for (int a = 0; a < m; ++a) {
    if (x2[a].empty()) continue;
    std::vector<std::pair<std::pair<long double, int64_t>, int>> order;
    for (auto& [j, v] : x2[a]) order.push_back({v, j});
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& x, const auto& y) { return x.first.first > y.first.first; });
    int64_t used = 0;
    for (auto& [v, j] : order) {
      if (used + v.second > res[a]) break;
      used += v.second;
      pref2[a][j] = 1;
    }
  }
  std::vector<Pick> out;
  for (const Pick& pk : stage1) {
    if (pref2[end2(comps[pk.comp][pk.path])].count(pk.comp)) out.push_back(pk);
  }
  return out;
}

}  // namespace

std::vector<char> boundary_arcs(const Digraph& g) {
  std::vector<char> b(g.m(), 0);
  for (int a = 0; a < g.m(); ++a) {
    b[a] = g.is_source(g.arc(a).tail) || g.is_sink(g.arc(a).head);
  }
  return b;
}

double cutmatch_gamma_bound(const Digraph& g, double phi) {
  uint64_t mu = static_cast<uint64_t>(std::max(1, g.m())) *
                static_cast<uint64_t>(std::max<int64_t>(1, g.max_cap()));
  double l = ceil_log2_u64(mu + 2);
  return 8.0 * l * l / phi;
}

IntegralFlow decongest_cutmatch(const Digraph& g, const PathFlow& f,
                                const std::vector<char>& chosen, const MovingCut& w,
                                const std::vector<int64_t>& res) {
  const int m = g.m();
  std::vector<long double> wl(m);
  for (int a = 0; a < m; ++a) wl[a] = to_ld(w[a]);
  auto score = [&](const std::vector<Pick>& picks) {
    long double s = 0;
    for (const Pick& pk : picks) {
      const WeightedPath& p = f.components[pk.comp][pk.path];
      for (int a : p.arcs) {
        if (chosen[a]) s += static_cast<long double>(p.mult) * wl[a];
      }
    }
    return s;
  };
  std::vector<Pick> fs = prefer(g, f, wl, res, true);
  std::vector<Pick> ft = prefer(g, f, wl, res, false);
  const std::vector<Pick>& win = score(fs) >= score(ft) ? fs : ft;

  // Clip against every residual (the boundary already fits; this enforces
  // the budgets elsewhere), heaviest paths on `chosen` first.
  std::vector<std::pair<long double, Pick>> order;
  for (const Pick& pk : win) {
    const WeightedPath& p = f.components[pk.comp][pk.path];
    long double s = 0;
    for (int a : p.arcs) {
      if (chosen[a]) s += wl[a];
    }
    order.push_back({s, pk});
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<int64_t> left = res;
  std::map<std::vector<int>, size_t> where;
  IntegralFlow out;
  for (const auto& [s, pk] : order) {
    const WeightedPath& p = f.components[pk.comp][pk.path];
    int64_t k = p.mult;
    for (int a : p.arcs) k = std::min(k, left[a]);
    if (k <= 0) continue;
    for (int a : p.arcs) left[a] -= k;
    auto [it, fresh] = where.emplace(p.arcs, out.size());
    if (fresh) {
      out.push_back({p.arcs, k});
    } else {
      out[it->second].mult += k;
    }
  }
  return out;
}

CutMatch cutmatch(const Digraph& g, int64_t h, double phi, const CutmatchOptions& opt) {
  if (!(phi > 0.0 && phi <= 1.0)) fail_precondition("phi must lie in (0,1]");
  if (h < 1) fail_precondition("h must be positive");
  g.validate();
  const int m = g.m();
  const double eps = opt.eps;
  CutMatch cm;
  cm.phi = phi;
  cm.flow.eta = 1.0;
  cm.cut.assign(m, ScaledReal::zero());
  cm.gamma_cap = cutmatch_gamma_bound(g, phi);
  const std::vector<char> bnd = boundary_arcs(g);

  std::vector<int64_t> res(m);   // boundary residual or interior budget
  std::vector<int64_t> load(m, 0);
  for (int a = 0; a < m; ++a) {
    const int64_t u = g.arc(a).cap;
    res[a] = bnd[a] ? u : static_cast<int64_t>(std::floor(cm.gamma_cap * static_cast<double>(u)));
    // Uncapacitated arcs off the boundary are cut for free.
    if (!bnd[a] && u == 0) cm.cut[a] = ScaledReal::from_double(1.0);
  }
  auto saturated = [&](int a) { return bnd[a] && load[a] >= g.arc(a).cap; };
  auto real_lengths = [&](const MovingCut& cut, long double t) {
    std::vector<long double> len(m);
    for (int a = 0; a < m; ++a) {
      len[a] = saturated(a) ? static_cast<long double>(h + 1)
                            : static_cast<long double>(g.arc(a).len) + h * t * to_ld(cut[a]);
    }
    return len;
  };
  auto done = [&]() { return real_distance(g, real_lengths(cm.cut, 1)) > h; };
  // Working instance: boundary arcs at their residual, others at gamma' U,
  // arcs into S or out of T unused, lengths l + floor(h w).
  auto working = [&]() {
    Digraph w(g.n());
    for (int a = 0; a < m; ++a) {
      const Arc& arc = g.arc(a);
      int64_t cap = bnd[a] ? res[a]
                           : static_cast<int64_t>(std::floor(cm.gamma_cap * static_cast<double>(arc.cap)));
      if (g.is_source(arc.head) || g.is_sink(arc.tail)) cap = 0;
      long double extra = std::floor(h * to_ld(cm.cut[a]));
      int64_t len = arc.len + static_cast<int64_t>(std::min<long double>(extra, h + 1));
      w.add_arc(arc.tail, arc.head, cap, len);
    }
    w.set_terminals(g.sources(), g.sinks());
    return w;
  };
  MwOptions mo;
  mo.eps = eps;
  mo.mode = opt.mode;
  mo.seed = opt.seed;
  const ScaledReal boost = ScaledReal::from_double(1.0 / (2.0 * eps));

  while (!done()) {
    ++cm.phases;
    Digraph wg = working();
    MwResult first = solve_pair(wg, h, mo);
    const MovingCut w = first.cut;
    std::vector<long double> wl(m);
    for (int a = 0; a < m; ++a) wl[a] = to_ld(w[a]);
    bool reuse = true;
    bool case_two = false;
    for (;;) {
      if (done()) break;
      if (++cm.iterations > opt.max_iterations) fail_internal("cutmatch exceeded its iteration cap");
      MwResult cur = reuse ? std::move(first) : solve_pair(wg, h, mo);
      reuse = false;
      const PathFlow& f = cur.flows[0];
      long double D = 0, on_chosen = 0;
      std::vector<int64_t> cnt = f.arc_counts(m);
      std::vector<char> chosen(m, 0);
      for (int a = 0; a < m; ++a) {
        const long double u = wg.arc(a).cap;
        D += u * wl[a];
        if (bnd[a] && u > 0 && 2.0L * f.eta * cnt[a] >= u) {
          chosen[a] = 1;
          on_chosen += u * wl[a];
        }
      }
      if (f.value() < (1.0L - 2.0L * eps) * D) break;  // not a (1 +- 2 eps) pair: new phase
      bool progress = false;
      if (on_chosen >= (0.5L - 6.0L * eps) * D) {
        IntegralFlow add = decongest_cutmatch(wg, f, chosen, w, res);
        if (!add.empty()) {
          progress = true;
          for (const WeightedPath& p : add) {
            for (int a : p.arcs) {
              load[a] += p.mult;
              res[a] -= p.mult;
            }
          }
          cm.flow.components.push_back(std::move(add));
          for (int a = 0; a < m; ++a) {
            if (bnd[a] && !(g.is_source(g.arc(a).head) || g.is_sink(g.arc(a).tail))) wg.set_cap(a, res[a]);
          }
        }
      }
      if (!progress) {
        case_two = true;
        break;
      }
    }
    if (case_two) {
      for (int a = 0; a < m; ++a) {
        if (!bnd[a]) cm.cut[a] += w[a] * boost;
      }
    }
  }

  // Trim the cut: smallest uniform scale that keeps d > h, then drop
  // individual arcs while it still holds.
  const long double need = h * (1.0L + 1e-9L) + 1e-12L;
  auto ok = [&](const MovingCut& cut, long double t) {
    return real_distance(g, real_lengths(cut, t)) > need;
  };
  if (ok(cm.cut, 0)) {
    for (int a = 0; a < m; ++a) {
      if (g.arc(a).cap > 0) cm.cut[a] = ScaledReal::zero();
    }
  } else if (ok(cm.cut, 1)) {
    long double lo = 0, hi = 1;
    for (int it = 0; it < 60; ++it) {
      long double mid = (lo + hi) / 2;
      (ok(cm.cut, mid) ? hi : lo) = mid;
    }
    for (ScaledReal& x : cm.cut) x = x * ScaledReal::from_double(static_cast<double>(hi));
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<long double> cost(m);
    for (int a = 0; a < m; ++a) cost[a] = to_ld(cm.cut[a]) * g.arc(a).cap;
    std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return cost[x] > cost[y]; });
    for (int a : idx) {
      if (cost[a] <= 0) break;
      ScaledReal keep = cm.cut[a];
      cm.cut[a] = ScaledReal::zero();
      if (!ok(cm.cut, 1)) cm.cut[a] = keep;
    }
  }

  for (int a = 0; a < m; ++a) {
    if (bnd[a] || g.arc(a).cap == 0) continue;
    cm.gamma = std::max(cm.gamma, static_cast<double>(load[a]) / static_cast<double>(g.arc(a).cap));
  }
  return cm;
}

}  // namespace lcf
