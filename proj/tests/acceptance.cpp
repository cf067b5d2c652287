// Acceptance suite: one PASS/FAIL line per criterion. Usage: acceptance [-v] [ids...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "apps.hpp"
#include "decompose.hpp"
#include "helpers.hpp"
#include "io.hpp"
#include "layered.hpp"
#include "mw.hpp"
#include "rounding.hpp"
#include "runner.hpp"
#include "verify.hpp"

using namespace lcf;

namespace {

// Pinned constants.
constexpr double kRoundEps = 0.01;
constexpr double kMatchEps = 0.1;
constexpr double kPathsC = 64.0;
constexpr double kComponentC = 64.0;
constexpr double kTimeBudgetC1 = 300.0;  // seconds

bool g_verbose = false;

struct Outcome {
  bool ok = true;
  std::string detail;
  int failures = 0;
  std::string first;

  void fail(const std::string& why) {
    if (failures++ == 0) first = why;
    ok = false;
  }
};

std::string str_of(const std::function<void(std::ostringstream&)>& f) {
  std::ostringstream os;
  f(os);
  return os.str();
}

MwOptions mw_opts(double eps, BlockMode mode = BlockMode::kDeterministic, uint64_t seed = 0) {
  MwOptions o;
  o.eps = eps;
  o.mode = mode;
  o.seed = seed;
  return o;
}

int64_t st_value(const Digraph& g, const std::vector<int64_t>& f) {
  int64_t v = 0;
  for (int a = 0; a < g.m(); ++a) {
    if (g.is_source(g.arc(a).tail)) v += f[a];
  }
  return v;
}

mpq_class st_value(const Digraph& g, const ArcFlow& f) {
  mpq_class v = 0;
  for (int a = 0; a < g.m(); ++a) {
    if (g.is_source(g.arc(a).tail)) v += f[a];
  }
  return v;
}

// ---- 1, 2: certified pairs on a generated corpus ----

struct CorpusEntry {
  Instance inst;
  int64_t h;
  double eps;
  MwResult res;
};

std::vector<CorpusEntry> g_corpus;

// Arc count range accepted by the layered generator.
std::pair<int, int> layered_range(int n, int64_t h) {
  std::vector<int64_t> size(h + 1);
  for (int64_t i = 0; i <= h; ++i) size[i] = n / (h + 1) + (i < n % (h + 1) ? 1 : 0);
  int64_t need = 0, most = 0;
  for (int64_t i = 0; i < h; ++i) {
    need += std::max(size[i], size[i + 1]);
    most += size[i] * size[i + 1];
  }
  return {static_cast<int>(need), static_cast<int>(most)};
}

// Sizes shrink with eps: the multiplicative-weights work grows like 1/eps^3.
Instance corpus_instance(int i, std::mt19937_64& r, int64_t& h, double& eps) {
  const double eps_of[] = {0.1, 0.3, 0.5};
  eps = eps_of[i % 3];
  const bool layered = (i / 3) % 2 == 1;
  int n, m;
  if (i == 2) {
    n = 60, m = 300, h = 8;
  } else if (eps == 0.5) {
    n = static_cast<int>(testing::draw(r, 20, 40));
    h = testing::draw(r, 4, 8);
    m = std::min(300, n * static_cast<int>(testing::draw(r, 2, 4)));
  } else if (eps == 0.3) {
    n = static_cast<int>(testing::draw(r, 12, 24));
    h = testing::draw(r, 3, 6);
    m = n * static_cast<int>(testing::draw(r, 2, 3));
  } else {
    n = static_cast<int>(testing::draw(r, 8, 14));
    h = testing::draw(r, 2, 4);
    m = n * 2;
  }
  if (layered) {
    h = std::min<int64_t>(h, n / 2 - 1);
    auto [lo, hi] = layered_range(n, h);
    m = std::max(lo, std::min(m, hi));
  }
  // Redraw until some S-T path fits in h, so no instance is trivially empty.
  for (uint64_t seed = 1000 + i;; seed += 100) {
    Instance inst = generate_instance(layered ? "layered" : "random", n, m, h, seed);
    MovingCut ones(inst.g.m(), ScaledReal::from_double(1.0));
    if (!h_length_distance(inst.g, ones, h, inst.g.sources(), inst.g.sinks()).is_inf()) {
      return inst;
    }
  }
}

Outcome criterion1() {
  Outcome o;
  std::mt19937_64 r(2024);
  long double worst_gap = 1;
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 50; ++i) {
    CorpusEntry e;
    e.inst = corpus_instance(i, r, e.h, e.eps);
    const Digraph& g = e.inst.g;
    e.res = solve_pair(g, e.h, mw_opts(e.eps));
    CertReport c = certify_pair(g, e.res.flows[0], e.res.cut, e.h, e.eps);
    if (!c.pass()) o.fail(str_of([&](auto& s) { s << "instance " << i << ": " << c.reason; }));
    if (c.dual > 0) worst_gap = std::min(worst_gap, c.gap);
    if (g_verbose) {
      std::printf("  %2d eps %.1f n %d m %d h %lld gap %.4f k %zu calls %lld %.1f s\n", i, e.eps, g.n(),
                  g.m(), static_cast<long long>(e.h), static_cast<double>(c.gap),
                  e.res.flows[0].components.size(),
                  static_cast<long long>(e.res.stats.blocker_calls),
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      std::fflush(stdout);
    }
    g_corpus.push_back(std::move(e));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > kTimeBudgetC1) {
    o.fail(str_of([&](auto& s) { s << "runtime " << secs << " s above " << kTimeBudgetC1 << " s"; }));
  }
  o.detail = str_of([&](auto& s) {
    s << "50 instances, det mode, min primal/dual " << static_cast<double>(worst_gap) << ", " << secs << " s";
  });
  return o;
}

Outcome criterion2() {
  Outcome o;
  if (g_corpus.empty()) criterion1();
  size_t max_k = 0;
  double min_slack = 1e300;
  for (size_t i = 0; i < g_corpus.size(); ++i) {
    const CorpusEntry& e = g_corpus[i];
    const Digraph& g = e.inst.g;
    const PathFlow& f = e.res.flows[0];
    for (size_t j = 0; j < f.components.size(); ++j) {
      PathFlow one;
      one.components.push_back(f.components[j]);
      Verdict v = verify_flow(g, one, e.h);
      if (!v) o.fail(str_of([&](auto& s) { s << "instance " << i << " component " << j << ": " << v.reason; }));
    }
    const double logn = std::ceil(std::log2(static_cast<double>(g.n())));
    const double cap = kComponentC * e.h / std::pow(e.eps, 4) * logn * logn;
    const size_t k = f.components.size();
    max_k = std::max(max_k, k);
    min_slack = std::min(min_slack, cap / std::max<double>(1, k));
    if (static_cast<double>(k) > cap) o.fail(str_of([&](auto& s) { s << "instance " << i << ": k = " << k; }));
  }
  o.detail = str_of([&](auto& s) { s << "max k " << max_k << ", min bound/k " << min_slack; });
  return o;
}

// ---- 3: blocking flows on small layered DAGs ----

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 r(3);
  double worst = 1e300;
  for (int it = 0; it < 500; ++it) {
    Digraph g = testing::random_layered(r, 2 + static_cast<int>(r() % 4), 3, 5, 8);
    LayeredDag d = validate_layered_dag(g);
    const int64_t h = d.num_layers - 1;
    const int64_t opt = testing::max_flow(g);
    auto paths = testing::st_paths(g);
    for (BlockMode mode : {BlockMode::kDeterministic, BlockMode::kRandomized}) {
      Rng rng(it);
      std::vector<int64_t> f = blocking_integral_flow(d, mode, &rng);
      ArcFlow q(g.m());
      for (int a = 0; a < g.m(); ++a) {
        if (f[a] < 0 || f[a] > g.arc(a).cap) o.fail(str_of([&](auto& s) { s << "dag " << it << ": capacity"; }));
        q[a] = f[a];
      }
      if (deficit(g, q).total != 0) o.fail(str_of([&](auto& s) { s << "dag " << it << ": deficit"; }));
      if (!is_blocking(d, f)) o.fail(str_of([&](auto& s) { s << "dag " << it << ": residual path"; }));
      for (auto& p : paths) {
        bool sat = false;
        for (int a : p) sat = sat || f[a] >= g.arc(a).cap;
        if (!sat) o.fail(str_of([&](auto& s) { s << "dag " << it << ": unsaturated path"; }));
      }
      const int64_t val = st_value(g, f);
      if (val * h < opt) o.fail(str_of([&](auto& s) { s << "dag " << it << ": value " << val << " max " << opt; }));
      if (opt > 0) worst = std::min(worst, static_cast<double>(val) * h / opt);
    }
  }
  o.detail = str_of([&](auto& s) { s << "500 DAGs x 2 modes, min h*val/max " << worst; });
  return o;
}

// ---- 4: path counts ----

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 r(4);
  size_t paths_seen = 0;
  for (int it = 0; it < 500; ++it) {
    Digraph g = testing::random_layered(r, 2 + static_cast<int>(r() % 5), 3, 9, 12);
    PathCounts pc = path_counts(validate_layered_dag(g));
    std::vector<mpz_class> arc(g.m(), 0);
    auto paths = testing::st_paths(g);
    paths_seen += paths.size();
    for (auto& p : paths) {
      mpz_class prod = 1;
      for (int a : p) prod *= g.arc(a).cap;
      for (int a : p) arc[a] += prod;
    }
    for (int a = 0; a < g.m(); ++a) {
      if (pc.n_arc[a] != arc[a]) o.fail(str_of([&](auto& s) { s << "dag " << it << " arc " << a; }));
    }
  }
  o.detail = str_of([&](auto& s) { s << "500 DAGs, " << paths_seen << " paths enumerated"; });
  return o;
}

// ---- 5: rounding ----

ArcFlow random_fractional_flow(std::mt19937_64& r, const Digraph& g) {
  ArcFlow f(g.m(), 0);
  for (auto& p : testing::st_paths(g)) {
    if (r() % 3 == 0) continue;
    mpq_class x(static_cast<long>(r() % 40 + 1), static_cast<long>(r() % 11 + 1));
    x.canonicalize();
    for (int a : p) f[a] += x;
  }
  mpq_class scale = 1;
  for (int a = 0; a < g.m(); ++a) {
    if (f[a] > g.arc(a).cap) scale = std::min<mpq_class>(scale, mpq_class(g.arc(a).cap) / f[a]);
  }
  for (auto& x : f) x *= scale;
  return f;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 r(5);
  mpq_class worst = 2;
  for (int it = 0; it < 100; ++it) {
    Digraph g = testing::random_layered(r, 3 + static_cast<int>(r() % 3), 3, 9);
    LayeredDag d = validate_layered_dag(g);
    ArcFlow f = random_fractional_flow(r, g);
    ArcFlow out = round_flow(d, f, kRoundEps);
    for (int a = 0; a < g.m(); ++a) {
      if (out[a].get_den() != 1 || out[a] < 0 || out[a] > g.arc(a).cap) {
        o.fail(str_of([&](auto& s) { s << "flow " << it << " arc " << a; }));
      }
    }
    if (deficit(g, out).total != 0) o.fail(str_of([&](auto& s) { s << "flow " << it << ": deficit"; }));
    mpq_class in = st_value(g, f), got = st_value(g, out);
    if (got < (1 - mpq_class(1, 100)) * in) o.fail(str_of([&](auto& s) { s << "flow " << it << ": value"; }));
    if (in > 0) worst = std::min<mpq_class>(worst, got / in);
  }
  o.detail = str_of([&](auto& s) { s << "100 flows, min rounded/input " << worst.get_d(); });
  return o;
}

// ---- 6: sparse decomposition ----

template <class P, class V, class F>
void check_decomposition(Outcome& o, int it, const Digraph& g, const std::vector<P>& paths,
                         const std::vector<V>& f, F value_of) {
  std::vector<V> sum(g.m(), 0);
  for (const P& p : paths) {
    if (p.arcs.empty() || !g.is_source(g.arc(p.arcs.front()).tail) ||
        !g.is_sink(g.arc(p.arcs.back()).head) || !(value_of(p) > 0)) {
      o.fail(str_of([&](auto& s) { s << "flow " << it << ": bad path"; }));
      return;
    }
    for (size_t i = 0; i + 1 < p.arcs.size(); ++i) {
      if (g.arc(p.arcs[i]).head != g.arc(p.arcs[i + 1]).tail) {
        o.fail(str_of([&](auto& s) { s << "flow " << it << ": broken path"; }));
      }
    }
    for (int a : p.arcs) sum[a] += value_of(p);
  }
  for (int a = 0; a < g.m(); ++a) {
    if (sum[a] != f[a]) o.fail(str_of([&](auto& s) { s << "flow " << it << " arc " << a; }));
  }
  if (static_cast<int>(paths.size()) > g.m()) o.fail(str_of([&](auto& s) { s << "flow " << it << ": support"; }));
}

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 r(6);
  size_t most = 0;
  for (int it = 0; it < 500; ++it) {
    Digraph g = testing::random_layered(r, 3 + static_cast<int>(r() % 4), 3, 20);
    LayeredDag d = validate_layered_dag(g);
    if (it % 2 == 0) {
      ArcFlow f(g.m(), 0);
      for (auto& p : testing::st_paths(g)) {
        if (r() % 2) continue;
        mpq_class x(static_cast<long>(r() % 7 + 1), static_cast<long>(r() % 5 + 1));
        x.canonicalize();
        for (int a : p) f[a] += x;
      }
      auto paths = sparse_decompose(d, f);
      most = std::max(most, paths.size());
      check_decomposition(o, it, g, paths, f, [](const RationalPath& p) { return p.value; });
    } else {
      std::vector<int64_t> f(g.m(), 0);
      for (auto& p : testing::st_paths(g)) {
        if (r() % 2) continue;
        int64_t k = static_cast<int64_t>(r() % 5 + 1);
        for (int a : p) f[a] += k;
      }
      IntegralFlow paths = sparse_decompose(d, f);
      most = std::max(most, paths.size());
      check_decomposition(o, it, g, paths, f, [](const WeightedPath& p) { return p.mult; });
    }
  }
  o.detail = str_of([&](auto& s) { s << "500 flows, largest support " << most << " paths"; });
  return o;
}

// ---- 7: blocker ----

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 r(7);
  int calls = 0;
  for (int it = 0; calls < 200; ++it) {
    int n = 4 + static_cast<int>(r() % 8);
    Digraph g = testing::random_digraph(r, n, 6 + static_cast<int>(r() % 18), 4, 2, 2, 2);
    MovingCut w(g.m());
    for (auto& x : w) x = ScaledReal::from_double(static_cast<double>(r() % 16 + 1) / 8.0);
    int64_t h = 2 + static_cast<int64_t>(r() % 3);
    ScaledReal d = h_length_distance(g, w, h, g.sources(), g.sinks());
    if (d.is_inf()) continue;
    for (double frac : {0.2, 0.5, 0.8, 1.0}) {
      if (calls == 200) break;
      double eps = (r() % 2) ? 0.2 : 0.5;
      ScaledReal lambda = d.scaled(frac);
      Rng rng(it);
      BlockMode mode = (r() % 2) ? BlockMode::kRandomized : BlockMode::kDeterministic;
      IntegralFlow f = lightest_path_blocker(g, w, h, lambda, eps, mode, &rng);
      Verdict v = verify_blocker(g, f, w, h, lambda, eps);
      if (!v) o.fail(str_of([&](auto& s) { s << "call " << calls << ": " << v.reason; }));
      ++calls;
    }
  }
  o.detail = str_of([&](auto& s) { s << calls << " calls"; });
  return o;
}

// ---- 8, 9: disjoint paths ----

const Variant kVariants[] = {Variant::kVertex, Variant::kEdge, Variant::kDirectedVertex,
                             Variant::kDirectedArc};

DisjointSpec spec_of(Variant v) {
  switch (v) {
    case Variant::kVertex: return {true, false};
    case Variant::kEdge: return {false, false};
    case Variant::kDirectedVertex: return {true, true};
    case Variant::kDirectedArc: return {false, true};
  }
  return {};
}

std::vector<VertexPath> as_vertex_paths(const std::vector<OrigPath>& ps) {
  std::vector<VertexPath> out;
  for (const OrigPath& p : ps) out.push_back({p.vertices, p.edges});
  return out;
}

Digraph small_unit_graph(std::mt19937_64& r, int max_n) {
  int n = 4 + static_cast<int>(r() % (max_n - 3));
  return testing::random_digraph(r, n, n + static_cast<int>(r() % (2 * n)), 1, 2,
                                 1 + static_cast<int>(r() % 2), 1 + static_cast<int>(r() % 2));
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 r(8);
  size_t total = 0;
  for (int it = 0; it < 200; ++it) {
    Digraph g = small_unit_graph(r, 12);
    int64_t h = 2 + static_cast<int64_t>(r() % 3);
    Variant v = kVariants[it % 4];
    auto paths = maximal_disjoint_paths(g, v, h, mw_opts(0.5));
    total += paths.size();
    Verdict ok = verify_maximal(g, spec_of(v), h, as_vertex_paths(paths));
    if (!ok) o.fail(str_of([&](auto& s) { s << "instance " << it << " (" << variant_name(v) << "): " << ok.reason; }));
  }
  o.detail = str_of([&](auto& s) { s << "200 instances, 50 per variant, " << total << " paths"; });
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 r(9);
  int used = 0, positive = 0, drawn = 0;
  double worst = 1e300;
  while (used < 100) {
    ++drawn;
    Digraph g = small_unit_graph(r, 10);
    int64_t h = 2 + static_cast<int64_t>(r() % 3);
    Variant v = kVariants[used % 4];
    int opt = brute_force_disjoint_paths(g, spec_of(v), h, 200000);
    if (opt > 3) continue;
    ++used;
    auto paths = maximum_disjoint_paths(g, v, h, mw_opts(0.5));
    Verdict ok = verify_disjoint_paths(g, spec_of(v), h, as_vertex_paths(paths));
    if (!ok) o.fail(str_of([&](auto& s) { s << "instance " << used << ": " << ok.reason; }));
    const double logn = std::ceil(std::log2(static_cast<double>(g.n())));
    const double need = opt / (kPathsC * h * logn * logn);
    if (static_cast<double>(paths.size()) < need) {
      o.fail(str_of([&](auto& s) { s << "instance " << used << ": " << paths.size() << " < OPT " << opt; }));
    }
    if (opt > 0) {
      ++positive;
      worst = std::min(worst, static_cast<double>(paths.size()) / opt);
    }
  }
  o.detail = str_of([&](auto& s) {
    s << "100 instances (" << positive << " with OPT >= 1), min output/OPT " << worst << ", C = " << kPathsC;
  });
  return o;
}

// ---- 10: b-matching ----

Outcome criterion10() {
  Outcome o;
  std::mt19937_64 r(10);
  double worst = 1e300;
  for (int it = 0; it < 200; ++it) {
    int left = 1 + static_cast<int>(r() % 4), right = 1 + static_cast<int>(r() % 4);
    Digraph g(left + right);
    int edges = 1 + static_cast<int>(r() % 12);
    for (int e = 0; e < edges; ++e) {
      g.add_arc(static_cast<int>(r() % left), left + static_cast<int>(r() % right),
                1 + static_cast<int64_t>(r() % 3), 1);
    }
    std::vector<int64_t> b(g.n());
    for (auto& x : b) x = 1 + static_cast<int64_t>(r() % 3);
    BMatching m = b_matching(g, b, kMatchEps, mw_opts(0.5));
    Verdict ok = verify_b_matching(g, b, m.x);
    if (!ok) o.fail(str_of([&](auto& s) { s << "instance " << it << ": " << ok.reason; }));
    const int64_t opt = brute_force_b_matching(g, b, 100000000);
    // ceil((1 - 1/10) OPT)
    const int64_t need = (9 * opt + 9) / 10;
    if (m.value < need) o.fail(str_of([&](auto& s) { s << "instance " << it << ": " << m.value << " < " << need; }));
    if (opt > 0) worst = std::min(worst, static_cast<double>(m.value) / opt);
  }
  o.detail = str_of([&](auto& s) { s << "200 instances, min output/OPT " << worst; });
  return o;
}

// ---- 11: cutmatch ----

Outcome criterion11() {
  Outcome o;
  std::mt19937_64 r(11);
  double worst = 0;
  for (int it = 0; it < 100; ++it) {
    int n = 4 + static_cast<int>(r() % 17);
    Digraph g = testing::random_digraph(r, n, 2 * n, 4, 2, 1 + static_cast<int>(r() % 2),
                                        1 + static_cast<int>(r() % 2));
    int64_t h = 2 + static_cast<int64_t>(r() % 4);
    const double phis[] = {0.1, 0.5, 1.0};
    double phi = phis[it % 3];
    CutMatch cm = cutmatch(g, h, phi, CutmatchOptions{});
    Verdict v = verify_cutmatch(g, cm.flow, cm.cut, h, phi, cm.gamma);
    if (!v) o.fail(str_of([&](auto& s) { s << "instance " << it << ": " << v.reason; }));
    const double bound = cutmatch_gamma_bound(g, phi);
    if (cm.gamma > bound) o.fail(str_of([&](auto& s) { s << "instance " << it << ": gamma " << cm.gamma; }));
    worst = std::max(worst, cm.gamma / bound);
  }
  o.detail = str_of([&](auto& s) { s << "100 instances, max gamma/bound " << worst; });
  return o;
}

// ---- 12: multi-commodity ----

bool same_flow(const PathFlow& a, const PathFlow& b) {
  if (a.eta != b.eta || a.components.size() != b.components.size()) return false;
  for (size_t j = 0; j < a.components.size(); ++j) {
    const IntegralFlow& x = a.components[j];
    const IntegralFlow& y = b.components[j];
    if (x.size() != y.size()) return false;
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i].arcs != y[i].arcs || x[i].mult != y[i].mult) return false;
    }
  }
  return true;
}

bool same_cut(const MovingCut& a, const MovingCut& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

Outcome criterion12() {
  Outcome o;
  std::mt19937_64 r(12);
  const double eps = 0.5;
  for (int it = 0; it < 10; ++it) {
    Digraph g = testing::random_digraph(r, 6 + it % 5, 20, 5, 2, 1, 2);
    for (BlockMode mode : {BlockMode::kDeterministic, BlockMode::kRandomized}) {
      MwOptions opt = mw_opts(eps, mode, it);
      MwResult a = solve_pair(g, 3, opt);
      MwResult b = solve_multi(g, {Commodity{g.sources(), g.sinks()}}, {{0}}, 3, opt);
      if (b.flows.size() != 1 || !same_flow(a.flows[0], b.flows[0]) || !same_cut(a.cut, b.cut) ||
          a.counts != b.counts) {
        o.fail(str_of([&](auto& s) { s << "single-commodity mismatch on instance " << it; }));
      }
    }
  }
  for (int it = 0; it < 5; ++it) {
    Digraph x = testing::random_digraph(r, 6, 14, 3, 2, 1, 1);
    Digraph y = testing::random_digraph(r, 6, 14, 3, 2, 1, 1);
    Digraph g(x.n() + y.n());
    for (const Arc& a : x.arcs()) g.add_arc(a.tail, a.head, a.cap, a.len);
    for (const Arc& a : y.arcs()) g.add_arc(a.tail + x.n(), a.head + x.n(), a.cap, a.len);
    std::vector<Commodity> cs{{x.sources(), x.sinks()},
                              {{y.sources()[0] + x.n()}, {y.sinks()[0] + x.n()}}};
    const int64_t h = 3;
    MwResult multi = solve_multi(g, cs, {{0, 1}}, h, mw_opts(eps));
    CertReport cm = certify_multi(g, cs, multi.flows, multi.cut, h, eps);
    if (!cm.pass()) o.fail(str_of([&](auto& s) { s << "composition " << it << ": " << cm.reason; }));
    long double sum_primal = 0;
    for (size_t i = 0; i < cs.size(); ++i) {
      Digraph gi = g;
      gi.set_terminals(cs[i].sources, cs[i].sinks);
      MwResult single = solve_pair(gi, h, mw_opts(eps));
      CertReport ci = certify_pair(gi, single.flows[0], single.cut, h, eps);
      if (!ci.pass()) o.fail(str_of([&](auto& s) { s << "part " << it << ": " << ci.reason; }));
      sum_primal += ci.primal;
      if (multi.flows[i].value() > ci.dual * (1 + 1e-9L) + 1e-12L) {
        o.fail(str_of([&](auto& s) { s << "composition " << it << ": part above its dual"; }));
      }
    }
    if (cm.primal < (1 - eps) * (sum_primal - cm.slack) - 1e-9L) {
      o.fail(str_of([&](auto& s) { s << "composition " << it << ": combined primal too small"; }));
    }
  }
  Digraph line = testing::make(4, {{0, 1, 1, 1}, {1, 2, 1, 1}, {2, 3, 1, 1}}, {}, {});
  std::vector<Commodity> close{{{0}, {1}}, {{2}, {3}}};
  bool rejected = false;
  try {
    solve_multi(line, close, {{0, 1}}, 2, mw_opts(eps));
  } catch (const Error&) {
    rejected = true;
  }
  if (!rejected) o.fail("unseparated batch accepted");
  o.detail = "10 equivalence x 2 modes, 5 compositions, separation rejection";
  return o;
}

// ---- 13: determinism ----

Outcome criterion13() {
  Outcome o;
  int runs = 0;
  for (uint64_t seed = 0; seed < 4; ++seed) {
    Instance rnd = generate_instance("random", 12, 30, 3, seed);
    Instance lay = generate_instance("layered", 12, 20, 3, seed);
    const char* on_random[] = {"solve", "blocker", "maximal-paths", "max-paths", "cutmatch"};
    const char* on_layered[] = {"blocking-flow", "round"};
    std::vector<std::pair<const Instance*, std::string>> jobs;
    for (const char* c : on_random) jobs.push_back({&rnd, c});
    for (const char* c : on_layered) jobs.push_back({&lay, c});
    for (auto& [inst, cmd] : jobs) {
      for (BlockMode mode : {BlockMode::kDeterministic, BlockMode::kRandomized}) {
        RunOptions opt;
        opt.command = cmd;
        opt.h = 3;
        opt.mode = mode;
        opt.seed = 17 + seed;
        std::string a = run_command(*inst, opt).dump();
        std::string b = run_command(*inst, opt).dump();
        ++runs;
        if (a != b) o.fail(cmd + " differs between runs");
      }
    }
  }
  o.detail = str_of([&](auto& s) { s << runs << " command pairs byte-compared"; });
  return o;
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "certified flow/cut pairs", criterion1},
    {2, "integral h-length components, k bound", criterion2},
    {3, "blocking flows vs brute-force maximum", criterion3},
    {4, "path counts vs enumeration", criterion4},
    {5, "rounding keeps (1-eps) of the value", criterion5},
    {6, "sparse decomposition exact", criterion6},
    {7, "lightest path blocker", criterion7},
    {8, "maximal disjoint paths", criterion8},
    {9, "maximum disjoint paths", criterion9},
    {10, "b-matching within (1-eps) of OPT", criterion10},
    {11, "cutmatch conditions and congestion", criterion11},
    {12, "multi-commodity", criterion12},
    {13, "determinism", criterion13},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "-v") {
      g_verbose = true;
    } else {
      only.insert(std::atoi(argv[i]));
    }
  }
  int failed = 0;
  for (const Criterion& c : kCriteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %s  %s: %s (%.1f s)\n", c.id, o.ok ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), secs);
    if (!o.ok) {
      std::printf("             %d failure(s), first: %s\n", o.failures, o.first.c_str());
      ++failed;
    }
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
