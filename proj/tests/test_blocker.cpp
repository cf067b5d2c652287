#include <random>
#include <set>

#include "blocker.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "verify.hpp"

using namespace lcf;
using testing::make;

namespace {

MovingCut uniform(int m, double x) { return MovingCut(m, ScaledReal::from_double(x)); }

ScaledReal sr(double x) { return ScaledReal::from_double(x); }

double weight(const MovingCut& w, const std::vector<int>& p) {
  double s = 0;
  for (int a : p) s += w[a].to_double();
  return s;
}

}  // namespace

TEST_CASE("round_weights") {
  // h = 5, lambda = 6, eps = 0.5 gives multiples of 3/5
  RoundedWeights r = round_weights({sr(0.6), sr(1.0), sr(0.0)}, 0.5, sr(6), 5);
  CHECK(r.granularity == doctest::Approx(0.6));
  CHECK(r.mult == std::vector<int64_t>{1, 2, 0});

  std::mt19937_64 g(2);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int i = 0; i < 500; ++i) {
    double x = u(g);
    RoundedWeights q = round_weights({sr(x)}, 0.3, sr(2.0), 4);
    double y = static_cast<double>(q.mult[0]) * q.granularity;
    CHECK(y >= x * (1 - 1e-12));
    CHECK(y <= x + q.granularity * (1 + 1e-12));
  }
  CHECK(round_weights({sr(1e30)}, 0.5, sr(1), 2, 10).mult[0] == 11);
  CHECK_THROWS_AS(round_weights({sr(1)}, 0.5, sr(0), 2), Error);
}

TEST_CASE("copy threshold and grid bound") {
  CHECK(copy_threshold(1.0, 2) == doctest::Approx(12));
  CHECK(weight_index_bound(0.5, 5) == 20);
}

TEST_CASE("build_expanded_dag examples") {
  Digraph one = make(2, {{0, 1, 1, 1}}, {0}, {1});
  ExpandedDag e = build_expanded_dag(one, {sr(1)}, 1, sr(1), 0.5);
  CHECK(e.dag.g.m() == 1);
  CHECK(e.orig_arc == std::vector<int>{0});

  ExpandedDag heavy = build_expanded_dag(one, {sr(3)}, 1, sr(1), 0.5);
  CHECK(heavy.dag.g.m() == 0);

  std::vector<int64_t> none{0};
  CHECK(build_expanded_dag(one, {sr(1)}, 1, sr(1), 0.5, &none).dag.g.m() == 0);
}

TEST_CASE("expanded DAG projections match path enumeration") {
  std::mt19937_64 r(41);
  for (int it = 0; it < 150; ++it) {
    int n = 3 + static_cast<int>(r() % 5);
    Digraph g = testing::random_digraph(r, n, 4 + static_cast<int>(r() % 10), 2, 2);
    MovingCut w(g.m());
    for (auto& x : w) x = sr(static_cast<double>(r() % 8 + 1) / 4.0);
    int64_t h = 1 + static_cast<int64_t>(r() % 4);
    ScaledReal d = h_length_distance(g, w, h, g.sources(), g.sinks());
    if (d.is_inf()) continue;
    double eps = (r() % 2) ? 0.5 : 0.25;
    double lambda = d.to_double() * (1 + static_cast<double>(r() % 3) / 4.0);
    ExpandedDag e = build_expanded_dag(g, w, h, sr(lambda), eps);

    std::set<std::vector<int>> projected;
    for (auto& cp : testing::st_paths(e.dag.g)) {
      std::vector<int> p = project_path(e, g, cp);
      CHECK(weight(w, p) <= (1 + 2 * eps) * lambda * (1 + 1e-9));
      CHECK(testing::path_len(g, p) <= h);
      projected.insert(p);
    }
    for (auto& p : enumerate_h_paths(g, h, 100000)) {
      if (weight(w, p) <= (1 + eps) * lambda * (1 - 1e-9)) CHECK(projected.count(p) == 1);
    }
    // every copy vertex lies on a copy S-T path
    const Digraph& x = e.dag.g;
    for (int v = 0; v < x.n(); ++v) {
      bool on = x.is_source(v) || x.is_sink(v) || (!x.in(v).empty() && !x.out(v).empty());
      CHECK(on);
    }
  }
}

TEST_CASE("decongest examples") {
  Digraph dia = testing::diamond();
  IntegralFlow free{{{0, 2}, 1}, {{1, 3}, 1}};
  CHECK(decongest(dia, free, 2).size() == 2);

  // s=0 -> a=1 -> t=3 and s -> b=2 -> a -> t share a->t
  Digraph sh = make(4, {{0, 1, 1, 1}, {1, 3, 1, 1}, {0, 2, 1, 1}, {2, 1, 1, 1}}, {0}, {3});
  IntegralFlow two{{{0, 1}, 1}, {{2, 3, 1}, 1}};
  IntegralFlow kept = decongest(sh, two, 2);
  CHECK(kept.size() == 1);
  CHECK(flow_value(kept) == 1);

  Digraph fan = make(2, {{0, 1, 3, 1}}, {0}, {1});
  IntegralFlow three{{{0}, 1}, {{0}, 3}, {{0}, 2}};
  IntegralFlow k3 = decongest(fan, three, 2);
  REQUIRE(k3.size() == 1);
  CHECK(k3[0].mult == 3);

  CHECK_THROWS_AS(decongest(fan, three, 1), Error);
}

TEST_CASE("lightest_path_blocker examples") {
  Digraph far = make(2, {{0, 1, 1, 3}}, {0}, {1});
  MovingCut w1 = uniform(1, 1.0);
  CHECK(lightest_path_blocker(far, w1, 2, sr(1), 0.5, BlockMode::kDeterministic).empty());

  Digraph one = make(3, {{0, 1, 1, 1}, {1, 2, 1, 1}}, {0}, {2});
  MovingCut w = uniform(2, 0.5);
  IntegralFlow f = lightest_path_blocker(one, w, 2, sr(1), 0.5, BlockMode::kDeterministic);
  CHECK(flow_value(f) == 1);
  CHECK(verify_blocker(one, f, w, 2, sr(1), 0.5));

  Digraph dia = testing::diamond();
  MovingCut wd = uniform(4, 0.5);
  for (BlockMode mode : {BlockMode::kDeterministic, BlockMode::kRandomized}) {
    Rng rng(3);
    IntegralFlow fd = lightest_path_blocker(dia, wd, 2, sr(1), 0.25, mode, &rng);
    CHECK(verify_blocker(dia, fd, wd, 2, sr(1), 0.25));
    CHECK(flow_value(fd) == 2);
  }
  CHECK_THROWS_AS(lightest_path_blocker(dia, wd, 2, sr(1.5), 0.5, BlockMode::kDeterministic),
                  Error);
}

TEST_CASE("lightest_path_blocker passes verification over lambda sweeps") {
  std::mt19937_64 r(52);
  int calls = 0;
  for (int it = 0; it < 40; ++it) {
    int n = 4 + static_cast<int>(r() % 6);
    Digraph g = testing::random_digraph(r, n, 6 + static_cast<int>(r() % 14), 4, 2, 2, 2);
    MovingCut w(g.m());
    for (auto& x : w) x = sr(static_cast<double>(r() % 16 + 1) / 8.0);
    int64_t h = 2 + static_cast<int64_t>(r() % 3);
    ScaledReal d = h_length_distance(g, w, h, g.sources(), g.sinks());
    if (d.is_inf()) continue;
    for (double frac : {0.25, 0.6, 1.0}) {
      double eps = (r() % 2) ? 0.2 : 0.5;
      ScaledReal lambda = d.scaled(frac);
      Rng rng(it);
      BlockMode mode = (r() % 2) ? BlockMode::kRandomized : BlockMode::kDeterministic;
      IntegralFlow f = lightest_path_blocker(g, w, h, lambda, eps, mode, &rng);
      Verdict v = verify_blocker(g, f, w, h, lambda, eps);
      CHECK_MESSAGE(v.ok, v.reason);
      ++calls;
    }
  }
  CHECK(calls > 30);
}
