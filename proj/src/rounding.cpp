#include "rounding.hpp"

#include <algorithm>
#include <numeric>

namespace lcf {

namespace {

struct Step {
  int edge;  // caller id, or -1 for a pairing edge
  int from;
  int to;
};

int find_root(std::vector<int>& p, int x) {
  while (p[x] != x) {
    p[x] = p[p[x]];
    x = p[x];
  }
  return x;
}

// Splits an open or closed trail into simple cycles plus (for open trails)
// one simple path with the same endpoints.
void split_trail(const std::vector<Step>& steps, int start, std::vector<int>& pos,
                 std::vector<Trail>& cycles, Trail* rest) {
  // pos[v] is v's index on the vertex stack, -1 when absent; restored on exit.
  std::vector<int> vstack{start};
  std::vector<int> estack;
  pos[start] = 0;
  for (const Step& s : steps) {
    estack.push_back(s.edge);
    int at = pos[s.to];
    if (at < 0) {
      pos[s.to] = static_cast<int>(vstack.size());
      vstack.push_back(s.to);
      continue;
    }
    Trail c;
    c.verts.assign(vstack.begin() + at, vstack.end());
    c.verts.push_back(s.to);
    size_t ne = vstack.size() - at;
    c.edges.assign(estack.end() - ne, estack.end());
    cycles.push_back(std::move(c));
    for (size_t i = at + 1; i < vstack.size(); ++i) pos[vstack[i]] = -1;
    vstack.resize(at + 1);
    estack.resize(estack.size() - ne);
  }
  for (int v : vstack) pos[v] = -1;
  if (rest) {
    rest->verts = vstack;
    rest->edges = estack;
  }
}

}  // namespace

EulerianPartition eulerian_partition(int nv, const std::vector<UEdge>& edges,
                                     const std::vector<char>* prefer) {
  EulerianPartition part;
  if (edges.empty()) return part;
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> deg(nv, 0);
  for (const UEdge& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
    parent[find_root(parent, e.u)] = find_root(parent, e.v);
  }
  struct IEdge {
    int u, v, id;
  };
  std::vector<IEdge> all;
  all.reserve(edges.size() + nv / 2 + 1);
  for (const UEdge& e : edges) all.push_back({e.u, e.v, e.id});
  std::vector<int> pending(nv, -1);  // unmatched odd vertex per component root
  for (int v = 0; v < nv; ++v) {
    if (deg[v] % 2 == 0) continue;
    int r = find_root(parent, v);
    if (pending[r] < 0) {
      pending[r] = v;
    } else {
      all.push_back({pending[r], v, -1});
      pending[r] = -1;
    }
  }
  // Flat adjacency: incident edge ids of v are inc[start[v] .. start[v+1]).
  std::vector<int> start(nv + 1, 0);
  for (const IEdge& e : all) {
    ++start[e.u + 1];
    ++start[e.v + 1];
  }
  for (int v = 0; v < nv; ++v) start[v + 1] += start[v];
  std::vector<int> inc(start[nv]);
  std::vector<int> ptr(start.begin(), start.end() - 1);
  for (int i = 0; i < static_cast<int>(all.size()); ++i) {
    inc[ptr[all[i].u]++] = i;
    inc[ptr[all[i].v]++] = i;
  }
  ptr.assign(start.begin(), start.end() - 1);
  std::vector<char> used(all.size(), 0);
  std::vector<int> pos(nv, -1);
  std::vector<std::pair<int, int>> stack, circuit;
  for (const IEdge& first : all) {
    const int root = first.u;
    while (ptr[root] < start[root + 1] && used[inc[ptr[root]]]) ++ptr[root];
    if (ptr[root] == start[root + 1]) continue;
    // Hierholzer, iterative.
    stack.assign(1, {root, -1});
    circuit.clear();  // (vertex, edge used to reach it)
    while (!stack.empty()) {
      auto [v, via] = stack.back();
      while (ptr[v] < start[v + 1] && used[inc[ptr[v]]]) ++ptr[v];
      if (ptr[v] == start[v + 1]) {
        circuit.push_back({v, via});
        stack.pop_back();
        continue;
      }
      int x = inc[ptr[v]];
      used[x] = 1;
      int w = all[x].u == v ? all[x].v : all[x].u;
      stack.push_back({w, x});
    }
    std::reverse(circuit.begin(), circuit.end());
    std::vector<Step> steps;
    for (size_t i = 1; i < circuit.size(); ++i) {
      int x = circuit[i].second;
      steps.push_back({all[x].id, circuit[i - 1].first, circuit[i].first});
    }
    size_t first_virtual = steps.size();
    for (size_t i = 0; i < steps.size(); ++i) {
      if (steps[i].edge < 0) {
        first_virtual = i;
        break;
      }
    }
    if (first_virtual == steps.size()) {
      split_trail(steps, steps.front().from, pos, part.cycles, nullptr);
      continue;
    }
    std::rotate(steps.begin(), steps.begin() + first_virtual + 1, steps.end());
    std::vector<Step> seg;
    for (const Step& s : steps) {
      if (s.edge >= 0) {
        seg.push_back(s);
        continue;
      }
      if (!seg.empty()) {
        Trail p;
        split_trail(seg, seg.front().from, pos, part.cycles, &p);
        if (!p.edges.empty()) {
          if (prefer && !(*prefer)[p.verts.front()] && (*prefer)[p.verts.back()]) {
            std::reverse(p.verts.begin(), p.verts.end());
            std::reverse(p.edges.begin(), p.edges.end());
          }
          part.paths.push_back(std::move(p));
        }
      }
      seg.clear();
    }
  }
  return part;
}

namespace {

// Marks arcs of g on H+ for every element of the partition.
void mark_plus(const Digraph& g, const EulerianPartition& part, std::vector<char>& plus,
               std::vector<char>& covered) {
  auto agrees = [&](const Trail& t, size_t i) {
    return g.arc(t.edges[i]).tail == t.verts[i];
  };
  for (const Trail& c : part.cycles) {
    for (size_t i = 0; i < c.edges.size(); ++i) {
      covered[c.edges[i]] = 1;
      plus[c.edges[i]] = agrees(c, i) ? 1 : 0;
    }
  }
  for (const Trail& p : part.paths) {
    bool first = agrees(p, 0);
    for (size_t i = 0; i < p.edges.size(); ++i) {
      covered[p.edges[i]] = 1;
      plus[p.edges[i]] = agrees(p, i) == first ? 1 : 0;
    }
  }
}

std::vector<UEdge> support_edges(const Digraph& g, const std::vector<char>& on) {
  std::vector<UEdge> e;
  for (int a = 0; a < g.m(); ++a) {
    if (on[a]) e.push_back({g.arc(a).tail, g.arc(a).head, a});
  }
  return e;
}

std::vector<char> source_mask(const Digraph& g) {
  std::vector<char> s(g.n(), 0);
  for (int v : g.sources()) s[v] = 1;
  return s;
}

}  // namespace

ArcFlow flow_turn_update(const Digraph& g, const ArcFlow& bit_flow,
                         const EulerianPartition& part) {
  std::vector<char> plus(g.m(), 0), covered(g.m(), 0);
  mark_plus(g, part, plus, covered);
  ArcFlow out(g.m(), 0);
  mpq_class c = 0;
  for (int a = 0; a < g.m(); ++a) {
    if (bit_flow[a] == 0) {
      if (covered[a]) fail_precondition("partition covers an arc outside the support");
      continue;
    }
    if (c == 0) c = bit_flow[a];
    if (bit_flow[a] != c) fail_precondition("bit flow is not two-valued");
    if (!covered[a]) fail_precondition("partition does not cover the support");
    out[a] = plus[a] ? mpq_class(2 * c) : mpq_class(0);
  }
  return out;
}

std::vector<int64_t> round_fixed_flow(const LayeredDag& d, const FixedFlow& f) {
  const Digraph& g = d.g;
  // Repair the truncation deficit on the fine grid so that every interior
  // vertex has even degree in every bit support.
  std::vector<int64_t> num = extract_st_subflow(d, f.num);
  std::vector<char> prefer = source_mask(g);
  std::vector<char> on(g.m()), plus(g.m()), covered(g.m());
  for (int i = 0; i < f.bits; ++i) {
    const int64_t bit = int64_t{1} << i;
    bool any = false;
    for (int a = 0; a < g.m(); ++a) {
      on[a] = (num[a] & bit) ? 1 : 0;
      any = any || on[a];
    }
    if (!any) continue;
    EulerianPartition part = eulerian_partition(g.n(), support_edges(g, on), &prefer);
    std::fill(plus.begin(), plus.end(), 0);
    std::fill(covered.begin(), covered.end(), 0);
    mark_plus(g, part, plus, covered);
    for (int a = 0; a < g.m(); ++a) {
      if (!on[a]) continue;
      num[a] += plus[a] ? bit : -bit;
    }
  }
  std::vector<int64_t> out(g.m());
  for (int a = 0; a < g.m(); ++a) {
    if (num[a] & ((int64_t{1} << f.bits) - 1)) fail_internal("fractional bit survived rounding");
    out[a] = num[a] >> f.bits;
    if (out[a] > g.arc(a).cap) fail_internal("rounding exceeded a capacity");
  }
  return extract_st_subflow(d, out);
}

ArcFlow round_flow(const LayeredDag& d, const ArcFlow& f, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) fail_precondition("eps must lie in (0,1)");
  const Digraph& g = d.g;
  const int bits = rounding_bits(g);
  const long double umax = static_cast<long double>(std::max<int64_t>(1, g.max_cap()));
  if (umax * std::ldexp(1.0L, bits) > std::ldexp(1.0L, 62)) {
    fail_precondition("instance too large for fixed-point rounding");
  }
  FixedFlow fx;
  fx.bits = bits;
  fx.num.assign(g.m(), 0);
  mpz_class scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
  for (int a = 0; a < g.m(); ++a) {
    if (f[a] < 0 || f[a] > g.arc(a).cap) fail_precondition("input flow is infeasible");
    mpz_class q;
    mpz_class num = f[a].get_num() * scale;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), f[a].get_den_mpz_t());
    fx.num[a] = q.get_si();
  }
  std::vector<int64_t> r = round_fixed_flow(d, fx);
  ArcFlow out(g.m());
  for (int a = 0; a < g.m(); ++a) out[a] = mpq_class(static_cast<long>(r[a]));
  return out;
}

}  // namespace lcf
