#include "layered.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "rounding.hpp"

namespace lcf {

LayeredDag validate_layered_dag(const Digraph& g) {
  g.validate();
  const int n = g.n();
  std::vector<int> indeg(n, 0);
  for (const Arc& a : g.arcs()) ++indeg[a.head];
  for (int v = 0; v < n; ++v) {
    bool isolated = g.in(v).empty() && g.out(v).empty();
    if (isolated) continue;
    if (g.is_source(v) && !g.in(v).empty()) {
      fail_precondition("source " + std::to_string(v + 1) + " has in-arcs");
    }
    if (g.is_sink(v) && !g.out(v).empty()) {
      fail_precondition("sink " + std::to_string(v + 1) + " has out-arcs");
    }
    if (!g.is_source(v) && g.in(v).empty()) {
      fail_precondition("vertex " + std::to_string(v + 1) + " outside S has no in-arcs");
    }
    if (!g.is_sink(v) && g.out(v).empty()) {
      fail_precondition("vertex " + std::to_string(v + 1) + " outside T has no out-arcs");
    }
  }
  LayeredDag d;
  d.g = g;
  d.layer.assign(n, 0);
  std::deque<int> q;
  for (int v = 0; v < n; ++v) {
    if (indeg[v] == 0) q.push_back(v);
  }
  int seen = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    ++seen;
    for (int a : g.out(v)) {
      int u = g.arc(a).head;
      d.layer[u] = std::max(d.layer[u], d.layer[v] + 1);
      if (--indeg[u] == 0) q.push_back(u);
    }
  }
  if (seen != n) fail_precondition("cycle detected");
  for (const Arc& a : g.arcs()) {
    if (d.layer[a.tail] >= d.layer[a.head]) fail_internal("arc within a layer");
  }
  d.num_layers = n == 0 ? 0 : *std::max_element(d.layer.begin(), d.layer.end()) + 1;
  d.order.resize(n);
  for (int v = 0; v < n; ++v) d.order[v] = v;
  std::stable_sort(d.order.begin(), d.order.end(),
                   [&](int a, int b) { return d.layer[a] < d.layer[b]; });
  return d;
}

LayeredDag with_caps(const LayeredDag& d, const std::vector<int64_t>& caps) {
  LayeredDag r = d;
  for (int a = 0; a < r.g.m(); ++a) r.g.set_cap(a, caps[a]);
  return r;
}

namespace {

// Zeroes v in place; mpz limbs stay allocated across calls.
void reset(std::vector<mpz_class>& v, size_t n) {
  v.resize(n);
  for (mpz_class& x : v) mpz_set_ui(x.get_mpz_t(), 0);
}

// Path counts over residual capacities num[a] / 2^bits. All counts carry the
// common factor 2^(bits * Lmax): an arc skipping j layers contributes an
// extra 2^(bits (j-1)) and a sink t starts at 2^(bits (Lmax - layer t)).
void scaled_counts(const LayeredDag& d, const std::vector<int64_t>& num, int bits,
                   std::vector<mpz_class>& np, std::vector<mpz_class>& nm) {
  const Digraph& g = d.g;
  const int n = g.n();
  const int lmax = std::max(0, d.num_layers - 1);
  reset(np, n);
  reset(nm, n);
  mpz_class tmp;
  for (int i = n - 1; i >= 0; --i) {
    int v = d.order[i];
    if (g.is_sink(v)) {
      mpz_set_ui(np[v].get_mpz_t(), 1);
      mpz_mul_2exp(np[v].get_mpz_t(), np[v].get_mpz_t(),
                   static_cast<mp_bitcnt_t>(bits) * (lmax - d.layer[v]));
      continue;
    }
    for (int a : g.out(v)) {
      if (num[a] <= 0) continue;
      int u = g.arc(a).head;
      if (np[u] == 0) continue;
      mpz_mul_si(tmp.get_mpz_t(), np[u].get_mpz_t(), num[a]);
      int skip = d.layer[u] - d.layer[v] - 1;
      if (skip > 0 && bits > 0) {
        mpz_mul_2exp(tmp.get_mpz_t(), tmp.get_mpz_t(),
                     static_cast<mp_bitcnt_t>(bits) * skip);
      }
      np[v] += tmp;
    }
  }
  for (int i = 0; i < n; ++i) {
    int v = d.order[i];
    if (g.is_source(v)) {
      mpz_set_ui(nm[v].get_mpz_t(), 1);
      continue;
    }
    for (int a : g.in(v)) {
      if (num[a] <= 0) continue;
      int u = g.arc(a).tail;
      if (nm[u] == 0) continue;
      mpz_mul_si(tmp.get_mpz_t(), nm[u].get_mpz_t(), num[a]);
      int skip = d.layer[v] - d.layer[u] - 1;
      if (skip > 0 && bits > 0) {
        mpz_mul_2exp(tmp.get_mpz_t(), tmp.get_mpz_t(),
                     static_cast<mp_bitcnt_t>(bits) * skip);
      }
      nm[v] += tmp;
    }
  }
}

void arc_counts(const LayeredDag& d, const std::vector<int64_t>& num, int bits,
                const std::vector<mpz_class>& np, const std::vector<mpz_class>& nm,
                std::vector<mpz_class>& na) {
  const Digraph& g = d.g;
  reset(na, g.m());
  for (int a = 0; a < g.m(); ++a) {
    if (num[a] <= 0) continue;
    const Arc& arc = g.arc(a);
    if (nm[arc.tail] == 0 || np[arc.head] == 0) continue;
    mpz_mul(na[a].get_mpz_t(), nm[arc.tail].get_mpz_t(), np[arc.head].get_mpz_t());
    mpz_mul_si(na[a].get_mpz_t(), na[a].get_mpz_t(), num[a]);
    int skip = d.layer[arc.head] - d.layer[arc.tail] - 1;
    if (skip > 0 && bits > 0) {
      mpz_mul_2exp(na[a].get_mpz_t(), na[a].get_mpz_t(),
                   static_cast<mp_bitcnt_t>(bits) * skip);
    }
  }
}

std::vector<int64_t> caps_of(const Digraph& g) {
  std::vector<int64_t> c(g.m());
  for (int a = 0; a < g.m(); ++a) c[a] = g.arc(a).cap;
  return c;
}

}  // namespace

PathCounts path_counts(const LayeredDag& d) {
  PathCounts pc;
  std::vector<int64_t> caps = caps_of(d.g);
  scaled_counts(d, caps, 0, pc.n_plus, pc.n_minus);
  arc_counts(d, caps, 0, pc.n_plus, pc.n_minus, pc.n_arc);
  return pc;
}

int rounding_bits(const Digraph& g) {
  uint64_t mu = static_cast<uint64_t>(std::max(1, g.m())) *
                static_cast<uint64_t>(std::max<int64_t>(1, g.max_cap()));
  return ceil_log2_u64(mu) + 20;
}

FixedFlow iterated_path_count_flow_fixed(const LayeredDag& d, int bits) {
  const Digraph& g = d.g;
  const int m = g.m();
  FixedFlow out;
  out.bits = bits;
  out.num.assign(m, 0);
  std::vector<int64_t> res(m);
  for (int a = 0; a < m; ++a) {
    if (g.arc(a).cap > (INT64_MAX >> (bits + 1))) {
      fail_precondition("capacity too large for fixed-point path-count flow");
    }
    res[a] = g.arc(a).cap << bits;
  }
  std::vector<mpz_class> np, nm, na;
  mpz_class q, na_arg, lhs, rhs;
  // Every step saturates its argmax arc exactly, so m + 1 steps suffice.
  for (int step = 0; step <= m; ++step) {
    scaled_counts(d, res, bits, np, nm);
    arc_counts(d, res, bits, np, nm, na);
    // Counts already carry the arc's own residual, so the binding arc is
    // the one maximizing na / res.
    int arg = -1;
    for (int a = 0; a < m; ++a) {
      if (na[a] <= 0) continue;
      if (arg >= 0) {
        mpz_mul_si(lhs.get_mpz_t(), na[a].get_mpz_t(), res[arg]);
        mpz_mul_si(rhs.get_mpz_t(), na[arg].get_mpz_t(), res[a]);
      }
      if (arg < 0 || lhs > rhs) arg = a;
    }
    if (arg < 0) return out;
    const int64_t res_arg = res[arg];
    mpz_set(na_arg.get_mpz_t(), na[arg].get_mpz_t());
    for (int a = 0; a < m; ++a) {
      if (na[a] == 0) continue;
      int64_t fa;
      if (a == arg) {
        fa = res[a];
      } else {
        mpz_mul_si(q.get_mpz_t(), na[a].get_mpz_t(), res_arg);
        mpz_fdiv_q(q.get_mpz_t(), q.get_mpz_t(), na_arg.get_mpz_t());
        fa = std::min(q.get_si(), res[a]);
      }
      out.num[a] += fa;
      res[a] -= fa;
    }
  }
  fail_internal("iterated path-count flow did not terminate");
}

ArcFlow iterated_path_count_flow(const LayeredDag& d) {
  int bits = rounding_bits(d.g);
  FixedFlow f = iterated_path_count_flow_fixed(d, bits);
  ArcFlow r(d.g.m());
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  for (int a = 0; a < d.g.m(); ++a) {
    r[a] = mpq_class(mpz_class(static_cast<long>(f.num[a])), den);
    r[a].canonicalize();
  }
  return r;
}

namespace {

int64_t sample_count(const mpz_class& n, const mpz_class& delta64, Rng& rng) {
  // Binomial(n, 1/delta64); Poisson when n is out of int64 range.
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, n.get_mpz_t());
  double md = mpz_get_d_2exp(&ed, delta64.get_mpz_t());
  double p = std::ldexp(1.0 / md, static_cast<int>(-ed));
  if (n.fits_slong_p() && p > 0.0) {
    std::binomial_distribution<long long> bin(n.get_si(), std::min(1.0, p));
    return bin(rng);
  }
  double mu = std::ldexp(mn / md, static_cast<int>(en - ed));
  if (!(mu > 0.0)) return 0;
  std::poisson_distribution<long long> poi(mu);
  return poi(rng);
}

std::vector<int64_t> sample_with_counts(const LayeredDag& d,
                                        const std::vector<mpz_class>& np,
                                        const mpz_class& delta, Rng& rng) {
  const Digraph& g = d.g;
  std::vector<int64_t> flow(g.m(), 0);
  mpz_class delta64 = delta * 64;
  struct Ball {
    std::vector<std::pair<int, int64_t>> hops;  // (arc, parallel copy)
  };
  std::vector<Ball> balls;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> wt;
  for (int s : g.sources()) {
    if (np[s] == 0) continue;
    int64_t k = sample_count(np[s], delta64, rng);
    for (int64_t b = 0; b < k; ++b) {
      Ball ball;
      int v = s;
      while (!g.is_sink(v)) {
        const std::vector<int>& outs = g.out(v);
        wt.assign(outs.size(), 0.0);
        long ev = 0;
        double mv = mpz_get_d_2exp(&ev, np[v].get_mpz_t());
        double total = 0.0;
        for (size_t i = 0; i < outs.size(); ++i) {
          const Arc& arc = g.arc(outs[i]);
          if (arc.cap <= 0 || np[arc.head] == 0) continue;
          long eu = 0;
          double mu = mpz_get_d_2exp(&eu, np[arc.head].get_mpz_t());
          wt[i] = std::ldexp(mu * static_cast<double>(arc.cap) / mv,
                             static_cast<int>(eu - ev));
          total += wt[i];
        }
        if (!(total > 0.0)) fail_internal("ball stuck at a vertex with no path to T");
        double r = unif(rng) * total;
        size_t pick = outs.size();
        for (size_t i = 0; i < outs.size(); ++i) {
          if (wt[i] <= 0.0) continue;
          pick = i;
          if (r < wt[i]) break;
          r -= wt[i];
        }
        const Arc& arc = g.arc(outs[pick]);
        std::uniform_int_distribution<int64_t> copy(0, arc.cap - 1);
        ball.hops.push_back({outs[pick], copy(rng)});
        v = arc.head;
      }
      balls.push_back(std::move(ball));
    }
  }
  if (balls.empty()) return flow;
  std::vector<std::pair<int, int64_t>> all;
  for (const Ball& b : balls) all.insert(all.end(), b.hops.begin(), b.hops.end());
  std::sort(all.begin(), all.end());
  auto used_once = [&](const std::pair<int, int64_t>& h) {
    auto lo = std::lower_bound(all.begin(), all.end(), h);
    auto hi = std::upper_bound(lo, all.end(), h);
    return hi - lo == 1;
  };
  for (const Ball& b : balls) {
    bool keep = true;
    for (const auto& h : b.hops) {
      if (!used_once(h)) {
        keep = false;
        break;
      }
    }
    if (!keep) continue;
    for (const auto& h : b.hops) ++flow[h.first];
  }
  return flow;
}

bool has_residual_path(const LayeredDag& d, const std::vector<int64_t>& res) {
  const Digraph& g = d.g;
  std::vector<char> seen(g.n(), 0);
  std::vector<int> stack;
  for (int s : g.sources()) {
    seen[s] = 1;
    stack.push_back(s);
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (g.is_sink(v)) return true;
    for (int a : g.out(v)) {
      if (res[a] <= 0) continue;
      int u = g.arc(a).head;
      if (!seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
    }
  }
  return false;
}

int64_t out_of_sources(const Digraph& g, const std::vector<int64_t>& f) {
  int64_t v = 0;
  for (int s : g.sources()) {
    for (int a : g.out(s)) v += f[a];
  }
  return v;
}

}  // namespace

std::vector<int64_t> sampled_integral_flow(const LayeredDag& d, const mpz_class& delta,
                                           Rng& rng) {
  if (delta < 1) fail_precondition("sampling scale must be >= 1");
  std::vector<int64_t> caps = caps_of(d.g);
  std::vector<mpz_class> np, nm;
  scaled_counts(d, caps, 0, np, nm);
  return sample_with_counts(d, np, delta, rng);
}

std::vector<int64_t> blocking_integral_flow(const LayeredDag& d, BlockMode mode, Rng* rng) {
  const Digraph& g = d.g;
  const int m = g.m();
  std::vector<int64_t> res = caps_of(g);
  std::vector<int64_t> total(m, 0);
  const int h = std::max(1, d.num_layers - 1);
  const uint64_t mu = static_cast<uint64_t>(std::max(1, m)) *
                      static_cast<uint64_t>(std::max<int64_t>(1, g.max_cap()));
  auto add = [&](const std::vector<int64_t>& f) {
    for (int a = 0; a < m; ++a) {
      total[a] += f[a];
      res[a] -= f[a];
      if (res[a] < 0) fail_internal("blocking flow exceeded a capacity");
    }
  };

  if (mode == BlockMode::kDeterministic) {
    const int64_t cap_rounds = int64_t{64} * h * ceil_log2_u64(mu + 2);
    const int bits = rounding_bits(g);
    for (int64_t round = 0; round < cap_rounds; ++round) {
      if (!has_residual_path(d, res)) return total;
      LayeredDag r = with_caps(d, res);
      FixedFlow frac = iterated_path_count_flow_fixed(r, bits);
      std::vector<int64_t> f = round_fixed_flow(r, frac);
      if (out_of_sources(g, f) == 0) fail_internal("rounded blocking step carried no flow");
      add(f);
    }
    if (!has_residual_path(d, res)) return total;
    fail_internal("deterministic blocking flow exceeded its round cap");
  }

  if (rng == nullptr) fail_precondition("randomized blocking flow needs a generator");
  const int logn = std::max(1, ceil_log2_u64(static_cast<uint64_t>(g.n()) + 1));
  const int logu = std::max(1, ceil_log2_u64(static_cast<uint64_t>(g.max_cap()) + 1));
  const int64_t reps = int64_t{h} * logn * logu;
  std::vector<mpz_class> np, nm, na;
  mpz_class delta;
  int64_t tail_samples = 0;
  const int64_t tail_cap = 4096 * static_cast<int64_t>(std::max(1, m));
  bool first = true;
  for (;;) {
    if (!has_residual_path(d, res)) return total;
    scaled_counts(d, res, 0, np, nm);
    arc_counts(d, res, 0, np, nm, na);
    mpz_class top = 0;
    for (const mpz_class& x : na) {
      if (x > top) top = x;
    }
    if (first) {
      // Levels above the largest arc count sample almost nothing; start at
      // the first power of two that covers it.
      delta = 1;
      mpz_mul_2exp(delta.get_mpz_t(), delta.get_mpz_t(), ceil_log2(top));
      first = false;
    }
    mpz_class eff = delta < top ? top : delta;
    for (int64_t r = 0; r < reps; ++r) {
      if (r > 0) {
        if (!has_residual_path(d, res)) return total;
        scaled_counts(d, res, 0, np, nm);
      }
      LayeredDag cur = with_caps(d, res);
      add(sample_with_counts(cur, np, eff, *rng));
      if (delta == 1 && ++tail_samples > tail_cap) {
        fail_internal("randomized blocking flow exceeded its sample cap");
      }
    }
    if (delta > 1) delta /= 2;
  }
}

std::vector<int64_t> extract_st_subflow(const LayeredDag& d, std::vector<int64_t> f) {
  const Digraph& g = d.g;
  auto trim = [&](const std::vector<int>& arcs, int64_t excess) {
    for (int a : arcs) {
      if (excess <= 0) break;
      int64_t cut = std::min(excess, f[a]);
      f[a] -= cut;
      excess -= cut;
    }
  };
  for (int v : d.order) {
    if (g.is_source(v) || g.is_sink(v)) continue;
    int64_t in = 0, out = 0;
    for (int a : g.in(v)) in += f[a];
    for (int a : g.out(v)) out += f[a];
    if (out > in) trim(g.out(v), out - in);
  }
  for (auto it = d.order.rbegin(); it != d.order.rend(); ++it) {
    int v = *it;
    if (g.is_source(v) || g.is_sink(v)) continue;
    int64_t in = 0, out = 0;
    for (int a : g.in(v)) in += f[a];
    for (int a : g.out(v)) out += f[a];
    if (in > out) trim(g.in(v), in - out);
  }
  return f;
}

bool is_blocking(const LayeredDag& d, const std::vector<int64_t>& f) {
  std::vector<int64_t> res(d.g.m());
  for (int a = 0; a < d.g.m(); ++a) res[a] = d.g.arc(a).cap - f[a];
  return !has_residual_path(d, res);
}

bool is_blocking(const LayeredDag& d, const ArcFlow& f) {
  std::vector<int64_t> res(d.g.m());
  for (int a = 0; a < d.g.m(); ++a) {
    res[a] = f[a] < d.g.arc(a).cap ? 1 : 0;
  }
  return !has_residual_path(d, res);
}

}  // namespace lcf
