#pragma once

// Small builders and brute-force references shared by the tests. None of
// the references call into the solver modules.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <random>
#include <vector>

#include "graph.hpp"

namespace testing {

using lcf::Digraph;

struct A {
  int u, v;
  int64_t cap, len;
};

inline Digraph make(int n, const std::vector<A>& arcs, lcf::VertexSet S, lcf::VertexSet T) {
  Digraph g(n);
  for (const A& a : arcs) g.add_arc(a.u, a.v, a.cap, a.len);
  g.set_terminals(std::move(S), std::move(T));
  return g;
}

// s=0, a=1, b=2, t=3; arcs s-a, s-b, a-t, b-t.
inline Digraph diamond(int64_t cap = 1) {
  return make(4, {{0, 1, cap, 1}, {0, 2, cap, 1}, {1, 3, cap, 1}, {2, 3, cap, 1}}, {0}, {3});
}

inline int64_t draw(std::mt19937_64& r, int64_t lo, int64_t hi) {
  return lo + static_cast<int64_t>(r() % static_cast<uint64_t>(hi - lo + 1));
}

// Random S-T DAG: layer sizes in [1, width], arcs forward (sometimes
// skipping layers), patched so that every non-S vertex has an in-arc and
// every non-T vertex an out-arc.
inline Digraph random_layered(std::mt19937_64& r, int layers, int width, int64_t max_cap,
                              int max_vertices = 1 << 30, bool unit_len = true) {
  std::vector<std::vector<int>> L(layers);
  int n = 0;
  for (int i = 0; i < layers; ++i) {
    int size = static_cast<int>(draw(r, 1, width));
    int left = max_vertices - n - (layers - i - 1);
    size = std::max(1, std::min(size, left));
    for (int k = 0; k < size; ++k) L[i].push_back(n++);
  }
  Digraph g(n);
  auto cap = [&] { return draw(r, 1, max_cap); };
  auto len = [&] { return unit_len ? int64_t{1} : draw(r, 1, 3); };
  for (int i = 0; i + 1 < layers; ++i) {
    for (int u : L[i]) {
      for (int v : L[i + 1]) {
        if (r() % 2) g.add_arc(u, v, cap(), len());
      }
    }
    if (i + 2 < layers && r() % 3 == 0) {
      g.add_arc(L[i][r() % L[i].size()], L[i + 2][r() % L[i + 2].size()], cap(), len());
    }
  }
  for (int i = 0; i < layers; ++i) {
    for (int v : L[i]) {
      if (i > 0 && g.in(v).empty()) g.add_arc(L[i - 1][r() % L[i - 1].size()], v, cap(), len());
      if (i + 1 < layers && g.out(v).empty()) {
        g.add_arc(v, L[i + 1][r() % L[i + 1].size()], cap(), len());
      }
    }
  }
  g.set_terminals(L.front(), L.back());
  return g;
}

// Random digraph with random terminals; lengths in [1, max_len].
inline Digraph random_digraph(std::mt19937_64& r, int n, int m, int64_t max_cap, int64_t max_len,
                              int ns = 1, int nt = 1) {
  Digraph g(n);
  for (int i = 0; i < m; ++i) {
    int u = static_cast<int>(r() % n), v = static_cast<int>(r() % n);
    if (u == v) continue;
    g.add_arc(u, v, draw(r, 1, max_cap), draw(r, 1, max_len));
  }
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), r);
  lcf::VertexSet S(perm.begin(), perm.begin() + ns), T(perm.begin() + ns, perm.begin() + ns + nt);
  g.set_terminals(S, T);
  return g;
}

// Every path (as arcs) from `from` that stops at its first vertex
// satisfying `stop`. Walks are simple. No length limit.
inline std::vector<std::vector<int>> all_paths(const Digraph& g, int from,
                                               const std::function<bool(int)>& stop) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<char> on(g.n(), 0);
  std::function<void(int)> go = [&](int v) {
    on[v] = 1;
    for (int a : g.out(v)) {
      int u = g.arc(a).head;
      if (on[u]) continue;
      cur.push_back(a);
      if (stop(u)) {
        out.push_back(cur);
      } else {
        go(u);
      }
      cur.pop_back();
    }
    on[v] = 0;
  };
  go(from);
  return out;
}

// All simple S-T walks whose interior avoids S and T, with their lengths.
inline std::vector<std::vector<int>> st_paths(const Digraph& g) {
  std::vector<std::vector<int>> out;
  for (int s : g.sources()) {
    for (auto& p : all_paths(g, s, [&](int v) { return g.is_sink(v); })) {
      bool ok = true;
      for (size_t i = 0; i + 1 < p.size(); ++i) ok = ok && !g.is_source(g.arc(p[i]).head);
      if (ok && !g.is_source(g.arc(p.back()).head)) out.push_back(p);
    }
  }
  return out;
}

inline int64_t path_len(const Digraph& g, const std::vector<int>& p) {
  int64_t l = 0;
  for (int a : p) l += g.arc(a).len;
  return l;
}

// Edmonds-Karp max S-T flow.
inline int64_t max_flow(const Digraph& g) {
  const int n = g.n() + 2, s = g.n(), t = g.n() + 1;
  struct E {
    int to;
    int64_t cap;
  };
  std::vector<E> e;
  std::vector<std::vector<int>> adj(n);
  auto add = [&](int u, int v, int64_t c) {
    adj[u].push_back(static_cast<int>(e.size()));
    e.push_back({v, c});
    adj[v].push_back(static_cast<int>(e.size()));
    e.push_back({u, 0});
  };
  const int64_t big = int64_t{1} << 50;
  for (const lcf::Arc& a : g.arcs()) add(a.tail, a.head, a.cap);
  for (int v : g.sources()) add(s, v, big);
  for (int v : g.sinks()) add(v, t, big);
  int64_t total = 0;
  for (;;) {
    std::vector<int> via(n, -1);
    std::queue<int> q;
    q.push(s);
    via[s] = -2;
    while (!q.empty() && via[t] == -1) {
      int v = q.front();
      q.pop();
      for (int id : adj[v]) {
        if (e[id].cap > 0 && via[e[id].to] == -1) {
          via[e[id].to] = id;
          q.push(e[id].to);
        }
      }
    }
    if (via[t] == -1) return total;
    int64_t push = big;
    for (int v = t; v != s; v = e[via[v] ^ 1].to) push = std::min(push, e[via[v]].cap);
    for (int v = t; v != s; v = e[via[v] ^ 1].to) {
      e[via[v]].cap -= push;
      e[via[v] ^ 1].cap += push;
    }
    total += push;
  }
}

}  // namespace testing
