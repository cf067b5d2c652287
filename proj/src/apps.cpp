#include "apps.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "layered.hpp"
#include "rounding.hpp"

namespace lcf {

Variant parse_variant(const std::string& s) {
  if (s == "vertex") return Variant::kVertex;
  if (s == "edge") return Variant::kEdge;
  if (s == "dvertex") return Variant::kDirectedVertex;
  if (s == "darc") return Variant::kDirectedArc;
  fail_input("unknown variant '" + s + "'");
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::kVertex: return "vertex";
    case Variant::kEdge: return "edge";
    case Variant::kDirectedVertex: return "dvertex";
    case Variant::kDirectedArc: return "darc";
  }
  return "?";
}

ReductionMap reduce_to_arc_disjoint(const Digraph& orig, Variant variant, int64_t h) {
  if (h < 1) fail_precondition("h must be positive");
  orig.validate();
  ReductionMap r;
  r.variant = variant;
  const int n = orig.n();
  VertexSet S, T;
  switch (variant) {
    case Variant::kDirectedArc: {
      r.g = Digraph(n);
      for (int a = 0; a < orig.m(); ++a) {
        const Arc& arc = orig.arc(a);
        r.g.add_arc(arc.tail, arc.head, 1, arc.len);
        r.arc_edge.push_back(a);
      }
      for (int v = 0; v < n; ++v) r.vertex_orig.push_back(v);
      S = orig.sources();
      T = orig.sinks();
      r.h = h;
      break;
    }
    case Variant::kVertex:
    case Variant::kDirectedVertex: {
      // v(i) = 2v, v(o) = 2v+1. Split arcs have length 1 and an arc of
      // length l becomes one of length 2l-1, so a path of length L maps to
      // one of length 2L+1.
      r.g = Digraph(2 * n);
      for (int v = 0; v < n; ++v) {
        r.g.add_arc(2 * v, 2 * v + 1, 1, 1);
        r.arc_edge.push_back(-1);
        r.vertex_orig.push_back(v);
        r.vertex_orig.push_back(v);
      }
      for (int a = 0; a < orig.m(); ++a) {
        const Arc& arc = orig.arc(a);
        if (arc.tail == arc.head) continue;
        r.g.add_arc(2 * arc.tail + 1, 2 * arc.head, 1, 2 * arc.len - 1);
        r.arc_edge.push_back(a);
        if (variant == Variant::kVertex) {
          r.g.add_arc(2 * arc.head + 1, 2 * arc.tail, 1, 2 * arc.len - 1);
          r.arc_edge.push_back(a);
        }
      }
      for (int s : orig.sources()) S.push_back(2 * s);
      for (int t : orig.sinks()) T.push_back(2 * t + 1);
      r.h = 2 * h + 1;
      break;
    }
    case Variant::kEdge: {
      // Edge e = {u,v} becomes u,v -> x(i) -> x(o) -> u,v with every arc of
      // the edge's length.
      r.g = Digraph(n + 2 * orig.m());
      for (int v = 0; v < n; ++v) r.vertex_orig.push_back(v);
      for (int e = 0; e < orig.m(); ++e) {
        r.vertex_orig.push_back(-1);
        r.vertex_orig.push_back(-1);
      }
      for (int e = 0; e < orig.m(); ++e) {
        const Arc& arc = orig.arc(e);
        const int xi = n + 2 * e, xo = xi + 1;
        r.g.add_arc(arc.tail, xi, 1, arc.len);
        r.arc_edge.push_back(-1);
        if (arc.head != arc.tail) {
          r.g.add_arc(arc.head, xi, 1, arc.len);
          r.arc_edge.push_back(-1);
        }
        r.g.add_arc(xi, xo, 1, arc.len);
        r.arc_edge.push_back(e);
        r.g.add_arc(xo, arc.tail, 1, arc.len);
        r.arc_edge.push_back(-1);
        if (arc.head != arc.tail) {
          r.g.add_arc(xo, arc.head, 1, arc.len);
          r.arc_edge.push_back(-1);
        }
      }
      S = orig.sources();
      T = orig.sinks();
      r.h = 3 * h;
      break;
    }
  }
  r.g.set_terminals(S, T);
  return r;
}

OrigPath back_project(const ReductionMap& r, const std::vector<int>& arcs) {
  OrigPath p;
  auto visit = [&](int tv) {
    int v = r.vertex_orig[tv];
    if (v < 0) return;
    if (p.vertices.empty() || p.vertices.back() != v) p.vertices.push_back(v);
  };
  if (arcs.empty()) return p;
  visit(r.g.arc(arcs[0]).tail);
  for (int a : arcs) {
    if (r.arc_edge[a] >= 0) p.edges.push_back(r.arc_edge[a]);
    visit(r.g.arc(a).head);
  }
  return p;
}

IntegralFlow pick_disjoint(const Digraph& g, const PathFlow& f) {
  const auto& comps = f.components;
  IntegralFlow best_global;
  int64_t best_val = 0;
  for (const IntegralFlow& c : comps) {
    int64_t v = flow_value(c);
    if (v > best_val) {
      best_val = v;
      best_global = c;
    }
  }
  // Per source vertex, the component that sends the most out of it.
  std::map<int, std::pair<int64_t, int>> best;  // source -> (value, component)
  for (size_t j = 0; j < comps.size(); ++j) {
    std::map<int, int64_t> out;
    for (const WeightedPath& p : comps[j]) out[g.arc(p.arcs[0]).tail] += p.mult;
    for (auto [s, v] : out) {
      auto it = best.find(s);
      if (it == best.end() || v > it->second.first) best[s] = {v, static_cast<int>(j)};
    }
  }
  IntegralFlow merged;
  std::vector<int64_t> used(g.m(), 0);
  for (auto [s, vj] : best) {
    for (const WeightedPath& p : comps[vj.second]) {
      if (g.arc(p.arcs[0]).tail != s) continue;
      int64_t k = p.mult;
      for (int a : p.arcs) k = std::min(k, g.arc(a).cap - used[a]);
      if (k <= 0) continue;
      for (int a : p.arcs) used[a] += k;
      merged.push_back({p.arcs, k});
    }
  }
  // Greedy over every component's paths, larger components first.
  std::vector<size_t> order(comps.size());
  for (size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return flow_value(comps[x]) > flow_value(comps[y]);
  });
  IntegralFlow greedy;
  std::fill(used.begin(), used.end(), 0);
  for (size_t j : order) {
    for (const WeightedPath& p : comps[j]) {
      int64_t k = p.mult;
      for (int a : p.arcs) k = std::min(k, g.arc(a).cap - used[a]);
      if (k <= 0) continue;
      for (int a : p.arcs) used[a] += k;
      greedy.push_back({p.arcs, k});
    }
  }
  IntegralFlow* pick = flow_value(merged) >= flow_value(best_global) ? &merged : &best_global;
  if (flow_value(greedy) > flow_value(*pick)) pick = &greedy;
  return *pick;
}

namespace {

bool has_h_path(const Digraph& g, int64_t h) {
  std::vector<char> usable(g.m());
  for (int a = 0; a < g.m(); ++a) usable[a] = g.arc(a).cap > 0;
  MovingCut zero(g.m(), ScaledReal::zero());
  return !h_length_distance(g, zero, h, g.sources(), g.sinks(), &usable).is_inf();
}

std::vector<OrigPath> to_orig(const ReductionMap& r, const IntegralFlow& f) {
  std::vector<OrigPath> out;
  for (const WeightedPath& p : f) {
    for (int64_t k = 0; k < p.mult; ++k) out.push_back(back_project(r, p.arcs));
  }
  return out;
}

MwOptions half(const MwOptions& opt) {
  MwOptions o = opt;
  o.eps = 0.5;
  return o;
}

}  // namespace

std::vector<OrigPath> maximal_disjoint_paths(const Digraph& orig, Variant variant, int64_t h,
                                             const MwOptions& opt) {
  ReductionMap r = reduce_to_arc_disjoint(orig, variant, h);
  std::vector<OrigPath> out;
  if (r.g.sources().empty() || r.g.sinks().empty()) return out;
  Digraph work = r.g;
  for (int round = 0; round <= r.g.m(); ++round) {
    if (!has_h_path(work, r.h)) return out;
    MwResult res = solve_pair(work, r.h, half(opt));
    IntegralFlow pick = pick_disjoint(work, res.flows[0]);
    if (pick.empty()) fail_internal("maximal paths round found nothing");
    for (const WeightedPath& p : pick) {
      for (int a : p.arcs) work.set_cap(a, 0);
    }
    for (OrigPath& p : to_orig(r, pick)) out.push_back(std::move(p));
  }
  fail_internal("maximal paths exceeded its round cap");
}

std::vector<OrigPath> maximum_disjoint_paths(const Digraph& orig, Variant variant, int64_t h,
                                             const MwOptions& opt) {
  ReductionMap r = reduce_to_arc_disjoint(orig, variant, h);
  if (r.g.sources().empty() || r.g.sinks().empty() || !has_h_path(r.g, r.h)) return {};
  MwResult res = solve_pair(r.g, r.h, half(opt));
  return to_orig(r, pick_disjoint(r.g, res.flows[0]));
}

BMatching b_matching(const Digraph& g, const std::vector<int64_t>& budget, double eps,
                     const MwOptions& opt) {
  if (!(eps > 0.0 && eps < 1.0)) fail_precondition("eps must lie in (0,1)");
  const int n = g.n();
  BMatching out;
  out.side.assign(n, -1);
  out.x.assign(g.m(), 0);
  std::vector<std::vector<int>> adj(n);
  for (int e = 0; e < g.m(); ++e) {
    const Arc& a = g.arc(e);
    if (a.tail == a.head) fail_input("graph is not bipartite (self-loop)");
    if (a.cap < 0) fail_input("negative edge capacity");
    adj[a.tail].push_back(a.head);
    adj[a.head].push_back(a.tail);
  }
  for (int s = 0; s < n; ++s) {
    if (out.side[s] >= 0) continue;
    out.side[s] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int u : adj[v]) {
        if (out.side[u] < 0) {
          out.side[u] = 1 - out.side[v];
          q.push_back(u);
        } else if (out.side[u] == out.side[v]) {
          fail_input("graph is not bipartite");
        }
      }
    }
  }
  auto b = [&](int v) { return v < static_cast<int>(budget.size()) ? budget[v] : int64_t{1}; };
  for (int v = 0; v < n; ++v) {
    if (b(v) < 0) fail_input("negative budget");
  }
  if (g.m() == 0) return out;

  // v(i) = 2v, v(o) = 2v+1; left vertices feed edges, right vertices drain.
  Digraph d(2 * n);
  std::vector<int> edge_arc(g.m(), -1);
  VertexSet S, T;
  for (int v = 0; v < n; ++v) {
    if (adj[v].empty()) continue;
    d.add_arc(2 * v, 2 * v + 1, b(v), 1);
    (out.side[v] == 0 ? S : T).push_back(out.side[v] == 0 ? 2 * v : 2 * v + 1);
  }
  for (int e = 0; e < g.m(); ++e) {
    int l = g.arc(e).tail, r = g.arc(e).head;
    if (out.side[l] == 1) std::swap(l, r);
    edge_arc[e] = d.add_arc(2 * l + 1, 2 * r, g.arc(e).cap, 1);
  }
  d.set_terminals(S, T);

  const double eps1 = 0.9 * eps;
  const double eps2 = eps / 10.0;
  MwOptions o = opt;
  o.eps = eps1;
  MwResult res = solve_pair(d, 3, o);
  const PathFlow& pf = res.flows[0];
  std::vector<int64_t> cnt = pf.arc_counts(d.m());
  ArcFlow f(d.m());
  mpq_class eta(pf.eta);
  mpq_class shrink = 1;
  for (int a = 0; a < d.m(); ++a) {
    f[a] = eta * mpq_class(static_cast<long>(cnt[a]));
    if (f[a] > d.arc(a).cap) {
      mpq_class q = mpq_class(static_cast<long>(d.arc(a).cap)) / f[a];
      if (q < shrink) shrink = q;
    }
  }
  if (shrink < 1) {
    for (mpq_class& x : f) x *= shrink;
  }
  LayeredDag dag = validate_layered_dag(d);
  ArcFlow rounded = round_flow(dag, f, eps2);
  for (int e = 0; e < g.m(); ++e) {
    out.x[e] = rounded[edge_arc[e]].get_num().get_si();
    out.value += out.x[e];
  }
  return out;
}

std::vector<int> saturated_arcs(const Digraph& g, const PathFlow& f, double c) {
  if (!(c >= 0.0 && c <= 1.0)) fail_precondition("c must lie in [0,1]");
  std::vector<int64_t> cnt = f.arc_counts(g.m());
  std::vector<int> out;
  for (int a = 0; a < g.m(); ++a) {
    long double fa = static_cast<long double>(f.eta) * cnt[a];
    if (c * static_cast<long double>(g.arc(a).cap) <= fa) out.push_back(a);
  }
  return out;
}

}  // namespace lcf
