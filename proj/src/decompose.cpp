#include "decompose.hpp"

#include <deque>

namespace lcf {

namespace {

template <class V>
struct Piece {
  std::vector<int> arcs;
  V value;
};

template <class V>
std::vector<Piece<V>> decompose(const LayeredDag& d, const std::vector<V>& f) {
  const Digraph& g = d.g;
  if (static_cast<int>(f.size()) != g.m()) fail_precondition("flow size does not match arc count");
  for (int a = 0; a < g.m(); ++a) {
    if (f[a] < 0) fail_precondition("negative flow value");
  }
  for (int v = 0; v < g.n(); ++v) {
    if (g.is_source(v) || g.is_sink(v)) continue;
    V in = 0, out = 0;
    for (int a : g.in(v)) in += f[a];
    for (int a : g.out(v)) out += f[a];
    if (in != out) fail_precondition("flow has nonzero deficit");
  }
  std::vector<std::deque<Piece<V>>> pending(g.n());
  std::vector<Piece<V>> done;
  for (int v : d.order) {
    std::deque<Piece<V>>& q = pending[v];
    if (g.is_sink(v)) {
      for (Piece<V>& p : q) done.push_back(std::move(p));
      q.clear();
      continue;
    }
    if (g.is_source(v)) {
      V out = 0;
      for (int a : g.out(v)) out += f[a];
      if (out > 0) q.push_back({{}, out});
    }
    for (int a : g.out(v)) {
      V left = f[a];
      if (left == 0) continue;
      int u = g.arc(a).head;
      while (left > 0) {
        if (q.empty()) fail_internal("decomposition ran out of path prefixes");
        Piece<V>& p = q.front();
        if (p.value <= left) {
          left -= p.value;
          p.arcs.push_back(a);
          pending[u].push_back(std::move(p));
          q.pop_front();
        } else {
          Piece<V> part{p.arcs, left};
          part.arcs.push_back(a);
          p.value -= left;
          left = 0;
          pending[u].push_back(std::move(part));
        }
      }
    }
    q.clear();
  }
  return done;
}

}  // namespace

IntegralFlow sparse_decompose(const LayeredDag& d, const std::vector<int64_t>& f) {
  IntegralFlow out;
  for (auto& p : decompose<int64_t>(d, f)) out.push_back({std::move(p.arcs), p.value});
  return out;
}

std::vector<RationalPath> sparse_decompose(const LayeredDag& d, const ArcFlow& f) {
  std::vector<RationalPath> out;
  for (auto& p : decompose<mpq_class>(d, f)) out.push_back({std::move(p.arcs), p.value});
  return out;
}

}  // namespace lcf
