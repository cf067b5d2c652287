#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <sstream>

namespace lcf {

namespace {

Verdict bad(const std::string& why) { return Verdict{false, why}; }

template <typename... Args>
std::string str(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

// Both orientations of every arc: arc 2e is e forward, 2e+1 backward.
Digraph symmetric(const Digraph& g) {
  Digraph s(g.n());
  for (const Arc& a : g.arcs()) {
    s.add_arc(a.tail, a.head, a.cap, a.len);
    s.add_arc(a.head, a.tail, a.cap, a.len);
  }
  s.set_terminals(g.sources(), g.sinks());
  return s;
}

long double dijkstra(const Digraph& g, const std::vector<long double>& len,
                     const std::vector<char>* usable = nullptr,
                     const std::vector<char>* alive = nullptr) {
  std::vector<long double> d(g.n(), HUGE_VALL);
  using Item = std::pair<long double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  for (int s : g.sources()) {
    if (alive && !(*alive)[s]) continue;
    d[s] = 0;
    pq.push({0, s});
  }
  long double best = HUGE_VALL;
  while (!pq.empty()) {
    auto [dv, v] = pq.top();
    pq.pop();
    if (dv != d[v]) continue;
    if (g.is_sink(v)) best = std::min(best, dv);
    for (int a : g.out(v)) {
      if (usable && !(*usable)[a]) continue;
      int u = g.arc(a).head;
      if (alive && !(*alive)[u]) continue;
      if (dv + len[a] < d[u]) {
        d[u] = dv + len[a];
        pq.push({d[u], u});
      }
    }
  }
  return best;
}

// Shared path checks; returns the path length or an error.
Verdict check_arc_path(const Digraph& g, const std::vector<int>& arcs, int64_t h) {
  if (arcs.empty()) return bad("empty path");
  for (int a : arcs) {
    if (a < 0 || a >= g.m()) return bad(str("arc id ", a, " out of range"));
  }
  int64_t len = 0;
  std::set<int> seen{g.arc(arcs[0]).tail};
  for (size_t i = 0; i < arcs.size(); ++i) {
    const Arc& arc = g.arc(arcs[i]);
    if (i > 0 && g.arc(arcs[i - 1]).head != arc.tail) return bad("path is not contiguous");
    if (!seen.insert(arc.head).second) return bad("path repeats a vertex");
    len += arc.len;
  }
  if (!g.is_source(g.arc(arcs.front()).tail)) return bad("path does not start in S");
  if (!g.is_sink(g.arc(arcs.back()).head)) return bad("path does not end in T");
  if (len > h) return bad(str("path length ", len, " exceeds h = ", h));
  return {};
}

}  // namespace

std::vector<std::vector<int>> enumerate_h_paths(const Digraph& g, int64_t h, size_t limit) {
  std::vector<std::vector<int>> out;
  std::vector<char> on(g.n(), 0);
  std::vector<int> stack;
  std::function<void(int, int64_t)> go = [&](int v, int64_t len) {
    for (int a : g.out(v)) {
      const Arc& arc = g.arc(a);
      if (on[arc.head] || g.is_source(arc.head) || len + arc.len > h) continue;
      stack.push_back(a);
      if (g.is_sink(arc.head)) {
        if (out.size() >= limit) fail_precondition("path enumeration limit exceeded");
        out.push_back(stack);
      } else {
        on[arc.head] = 1;
        go(arc.head, len + arc.len);
        on[arc.head] = 0;
      }
      stack.pop_back();
    }
  };
  for (int s : g.sources()) {
    if (g.is_sink(s)) continue;
    on[s] = 1;
    go(s, 0);
    on[s] = 0;
  }
  return out;
}

Verdict verify_moving_cut(const Digraph& g, const MovingCut& w, int64_t h) {
  if (static_cast<int>(w.size()) != g.m()) return bad("cut size does not match the arc count");
  ScaledReal d = h_length_distance(g, w, h, g.sources(), g.sinks());
  if (!ScaledReal::approx_ge(d, ScaledReal::from_double(1.0))) {
    return bad("some h-length path has weight " + d.to_string() + " < 1");
  }
  return {};
}

Verdict verify_flow(const Digraph& g, const PathFlow& f, int64_t h) {
  if (!(f.eta > 0) || !std::isfinite(f.eta)) return bad("eta is not positive");
  std::vector<mpz_class> load(g.m(), 0);
  for (const IntegralFlow& c : f.components) {
    for (const WeightedPath& p : c) {
      if (p.mult <= 0) return bad("nonpositive multiplicity");
      if (Verdict v = check_arc_path(g, p.arcs, h); !v) return v;
      for (int a : p.arcs) load[a] += mpz_class(std::to_string(p.mult));
    }
  }
  const mpq_class eta(f.eta);
  for (int a = 0; a < g.m(); ++a) {
    if (eta * load[a] > g.arc(a).cap) return bad(str("capacity exceeded on arc ", a));
  }
  return {};
}

Verdict verify_blocker(const Digraph& g, const IntegralFlow& f, const MovingCut& w, int64_t h,
                       const ScaledReal& lambda, double eps) {
  PathFlow pf;
  pf.components.push_back(f);
  if (Verdict v = verify_flow(g, pf, h); !v) return v;
  const ScaledReal heavy = lambda.scaled((1.0 + 2.0 * eps) * (1.0 + 1e-9));
  for (const WeightedPath& p : f) {
    ScaledReal wt = ScaledReal::zero();
    for (int a : p.arcs) wt += w[a];
    if (wt > heavy) return bad("support path weight " + wt.to_string() + " above (1+2eps) lambda");
  }
  std::vector<int64_t> load = arc_load(f, g.m());
  std::vector<char> usable(g.m());
  for (int a = 0; a < g.m(); ++a) usable[a] = load[a] < g.arc(a).cap;
  ScaledReal d = h_length_distance(g, w, h, g.sources(), g.sinks(), &usable);
  if (!(d > lambda.scaled(1.0 + eps))) {
    return bad("unsaturated light path of weight " + d.to_string() + " remains");
  }
  return {};
}

Verdict verify_cutmatch(const Digraph& g, const PathFlow& f, const MovingCut& w, int64_t h,
                        double phi, double gamma) {
  if (f.eta != 1.0) return bad("cutmatch flow is not integral");
  if (static_cast<int>(w.size()) != g.m()) return bad("cut size does not match the arc count");
  std::vector<int64_t> load(g.m(), 0);
  int64_t val = 0;
  for (const IntegralFlow& c : f.components) {
    for (const WeightedPath& p : c) {
      if (p.mult <= 0) return bad("nonpositive multiplicity");
      if (Verdict v = check_arc_path(g, p.arcs, h); !v) return v;
      for (int a : p.arcs) load[a] += p.mult;
      val += p.mult;
    }
  }
  long double cost = 0, out_s = 0;
  std::vector<long double> len(g.m());
  for (int a = 0; a < g.m(); ++a) {
    const Arc& arc = g.arc(a);
    const bool bnd = g.is_source(arc.tail) || g.is_sink(arc.head);
    if (bnd ? load[a] > arc.cap
            : static_cast<long double>(load[a]) >
                  static_cast<long double>(gamma) * arc.cap * (1 + 1e-12L)) {
      return bad(str("congestion exceeded on arc ", a));
    }
    if (g.is_source(arc.tail)) out_s += arc.cap;
    const long double wa = w[a].is_zero() ? 0.0L : std::exp2(w[a].log2());
    cost += wa * arc.cap;
    len[a] = bnd && load[a] == arc.cap ? static_cast<long double>(h + 1) : arc.len + h * wa;
  }
  const long double budget = phi * (out_s - val);
  if (cost > budget * (1 + 1e-9L) + 1e-12L) return bad(str("cut cost ", cost, " above ", budget));
  const long double d = dijkstra(g, len);
  if (!(d > h)) return bad(str("S-T distance ", d, " is at most h"));
  return {};
}

namespace {

// Resources a path occupies: vertices or edges.
std::vector<int> resources(const VertexPath& p, DisjointSpec spec) {
  std::vector<int> r = spec.vertex ? p.vertices : p.edges;
  std::sort(r.begin(), r.end());
  return r;
}

bool overlap(const std::vector<int>& a, const std::vector<int>& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    (a[i] < b[j] ? i : j)++;
  }
  return false;
}

Verdict check_vertex_path(const Digraph& g, DisjointSpec spec, int64_t h, const VertexPath& p) {
  if (p.vertices.size() < 2 || p.edges.size() + 1 != p.vertices.size()) {
    return bad("malformed path");
  }
  int64_t len = 0;
  std::set<int> seen;
  for (int v : p.vertices) {
    if (v < 0 || v >= g.n()) return bad("vertex out of range");
    if (!seen.insert(v).second) return bad("path repeats a vertex");
  }
  for (size_t i = 0; i < p.edges.size(); ++i) {
    int e = p.edges[i];
    if (e < 0 || e >= g.m()) return bad("edge out of range");
    const Arc& a = g.arc(e);
    const int u = p.vertices[i], v = p.vertices[i + 1];
    const bool fwd = a.tail == u && a.head == v;
    const bool bwd = !spec.directed && a.tail == v && a.head == u;
    if (!fwd && !bwd) return bad(str("edge ", e, " does not join consecutive vertices"));
    len += a.len;
  }
  if (!g.is_source(p.vertices.front())) return bad("path does not start in S");
  if (!g.is_sink(p.vertices.back())) return bad("path does not end in T");
  if (len > h) return bad("path longer than h");
  return {};
}

std::vector<VertexPath> candidate_paths(const Digraph& g, DisjointSpec spec, int64_t h,
                                        size_t cap) {
  const Digraph work = spec.directed ? g : symmetric(g);
  std::vector<VertexPath> out;
  for (const auto& arcs : enumerate_h_paths(work, h, cap)) {
    VertexPath p;
    p.vertices = path_vertices(work, arcs);
    for (int a : arcs) p.edges.push_back(spec.directed ? a : a / 2);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

Verdict verify_disjoint_paths(const Digraph& g, DisjointSpec spec, int64_t h,
                              const std::vector<VertexPath>& paths) {
  std::vector<std::vector<int>> res;
  for (const VertexPath& p : paths) {
    if (Verdict v = check_vertex_path(g, spec, h, p); !v) return v;
    res.push_back(resources(p, spec));
  }
  for (size_t i = 0; i < res.size(); ++i) {
    for (size_t j = i + 1; j < res.size(); ++j) {
      if (overlap(res[i], res[j])) return bad(str("paths ", i, " and ", j, " are not disjoint"));
    }
  }
  return {};
}

Verdict verify_maximal(const Digraph& g, DisjointSpec spec, int64_t h,
                       const std::vector<VertexPath>& paths) {
  if (Verdict v = verify_disjoint_paths(g, spec, h, paths); !v) return v;
  const Digraph work = spec.directed ? g : symmetric(g);
  std::vector<char> alive(g.n(), 1), usable(work.m(), 1);
  for (const VertexPath& p : paths) {
    if (spec.vertex) {
      for (int v : p.vertices) alive[v] = 0;
    } else {
      for (int e : p.edges) {
        if (spec.directed) {
          usable[e] = 0;
        } else {
          usable[2 * e] = usable[2 * e + 1] = 0;
        }
      }
    }
  }
  std::vector<long double> len(work.m());
  for (int a = 0; a < work.m(); ++a) len[a] = static_cast<long double>(work.arc(a).len);
  if (dijkstra(work, len, &usable, &alive) <= h) return bad("an h-length path survives");
  return {};
}

int brute_force_disjoint_paths(const Digraph& g, DisjointSpec spec, int64_t h, size_t cap) {
  std::vector<VertexPath> paths = candidate_paths(g, spec, h, cap);
  std::vector<std::vector<int>> res;
  for (const VertexPath& p : paths) res.push_back(resources(p, spec));
  int best = 0;
  size_t nodes = 0;
  std::function<void(std::vector<int>&, int)> go = [&](std::vector<int>& cand, int size) {
    if (++nodes > cap * 1000) fail_precondition("disjoint path search limit exceeded");
    if (size + static_cast<int>(cand.size()) <= best) return;
    if (cand.empty()) {
      best = size;
      return;
    }
    const int c = cand.back();
    std::vector<int> keep;
    for (int x : cand) {
      if (x != c && !overlap(res[x], res[c])) keep.push_back(x);
    }
    go(keep, size + 1);
    std::vector<int> rest(cand.begin(), cand.end() - 1);
    go(rest, size);
  };
  std::vector<int> all(paths.size());
  for (size_t i = 0; i < paths.size(); ++i) all[i] = static_cast<int>(i);
  go(all, 0);
  return best;
}

int64_t brute_force_b_matching(const Digraph& g, const std::vector<int64_t>& budget, size_t cap) {
  std::vector<int64_t> left(g.n());
  for (int v = 0; v < g.n(); ++v) left[v] = v < static_cast<int>(budget.size()) ? budget[v] : 1;
  const int m = g.m();
  std::vector<int64_t> reach(m + 1, 0);  // optimistic value of edges i..m-1
  for (int e = m - 1; e >= 0; --e) {
    const Arc& a = g.arc(e);
    reach[e] = reach[e + 1] + std::min({a.cap, left[a.tail], left[a.head]});
  }
  int64_t best = 0;
  size_t nodes = 0;
  std::function<void(int, int64_t)> go = [&](int e, int64_t val) {
    if (++nodes > cap) fail_precondition("b-matching search limit exceeded");
    if (val + reach[e] <= best) return;
    if (e == m) {
      best = val;
      return;
    }
    const Arc& a = g.arc(e);
    int64_t hi = std::min({a.cap, left[a.tail], left[a.head]});
    for (int64_t x = hi; x >= 0; --x) {
      left[a.tail] -= x;
      left[a.head] -= x;
      go(e + 1, val + x);
      left[a.tail] += x;
      left[a.head] += x;
    }
  };
  go(0, 0);
  return best;
}

Verdict verify_b_matching(const Digraph& g, const std::vector<int64_t>& budget,
                          const std::vector<int64_t>& x) {
  if (static_cast<int>(x.size()) != g.m()) return bad("matching size does not match edge count");
  std::vector<int64_t> used(g.n(), 0);
  for (int e = 0; e < g.m(); ++e) {
    if (x[e] < 0 || x[e] > g.arc(e).cap) return bad(str("edge ", e, " outside [0, U]"));
    used[g.arc(e).tail] += x[e];
    used[g.arc(e).head] += x[e];
  }
  for (int v = 0; v < g.n(); ++v) {
    int64_t b = v < static_cast<int>(budget.size()) ? budget[v] : 1;
    if (used[v] > b) return bad(str("budget exceeded at vertex ", v));
  }
  return {};
}

}  // namespace lcf
