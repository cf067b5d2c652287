#include "runner.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "decompose.hpp"
#include "layered.hpp"
#include "rounding.hpp"
#include "verify.hpp"

namespace lcf {

using nlohmann::json;

namespace {

const char* mode_name(BlockMode m) { return m == BlockMode::kDeterministic ? "det" : "rand"; }

BlockMode parse_mode(const std::string& s) {
  if (s == "det") return BlockMode::kDeterministic;
  if (s == "rand") return BlockMode::kRandomized;
  fail_input("unknown mode '" + s + "'");
}

json real_json(const ScaledReal& x) { return json::array({x.significand(), x.exponent()}); }

ScaledReal real_from(const json& j) {
  if (!j.is_array() || j.size() != 2) fail_input("weight must be [significand, exponent]");
  double sig = j[0].get<double>();
  if (!(sig == 0.0 || (sig >= 1.0 && sig < 2.0))) fail_input("significand outside [1,2)");
  return ScaledReal::from_parts(sig, j[1].get<int64_t>());
}

json cut_json(const MovingCut& w) {
  json a = json::array();
  for (const ScaledReal& x : w) a.push_back(real_json(x));
  return a;
}

MovingCut cut_from(const json& j, int m) {
  if (!j.is_array() || static_cast<int>(j.size()) != m) fail_input("cut must list every arc");
  MovingCut w;
  for (const json& x : j) w.push_back(real_from(x));
  return w;
}

json path_json(const Digraph& g, const WeightedPath& p) {
  json v = json::array(), a = json::array();
  for (int x : path_vertices(g, p.arcs)) v.push_back(x + 1);
  for (int x : p.arcs) a.push_back(x + 1);
  return {{"vertices", v}, {"arcs", a}, {"multiplicity", p.mult}};
}

json flow_json(const Digraph& g, const PathFlow& f) {
  json comps = json::array();
  for (const IntegralFlow& c : f.components) {
    json paths = json::array();
    for (const WeightedPath& p : c) paths.push_back(path_json(g, p));
    comps.push_back({{"paths", paths}});
  }
  return {{"eta", f.eta}, {"components", comps}, {"value", static_cast<double>(f.value())}};
}

PathFlow flow_from(const Digraph& g, const json& j) {
  PathFlow f;
  f.eta = j.at("eta").get<double>();
  for (const json& c : j.at("components")) {
    IntegralFlow comp;
    for (const json& p : c.at("paths")) {
      WeightedPath wp;
      for (const json& a : p.at("arcs")) {
        int64_t id = a.get<int64_t>();
        if (id < 1 || id > g.m()) fail_input("arc id out of range in flow");
        wp.arcs.push_back(static_cast<int>(id - 1));
      }
      wp.mult = p.at("multiplicity").get<int64_t>();
      if (!wp.arcs.empty()) {
        std::vector<int> verts;
        for (const json& v : p.at("vertices")) verts.push_back(v.get<int>() - 1);
        std::vector<int> want{g.arc(wp.arcs[0]).tail};
        for (int a : wp.arcs) want.push_back(g.arc(a).head);
        if (verts != want) fail_input("path vertices do not match its arcs");
      }
      comp.push_back(std::move(wp));
    }
    f.components.push_back(std::move(comp));
  }
  return f;
}

json orig_paths_json(const std::vector<OrigPath>& ps) {
  json out = json::array();
  for (const OrigPath& p : ps) {
    json v = json::array(), e = json::array();
    for (int x : p.vertices) v.push_back(x + 1);
    for (int x : p.edges) e.push_back(x + 1);
    out.push_back({{"vertices", v}, {"edges", e}});
  }
  return out;
}

std::vector<VertexPath> orig_paths_from(const json& j) {
  std::vector<VertexPath> out;
  for (const json& p : j) {
    VertexPath vp;
    for (const json& v : p.at("vertices")) vp.vertices.push_back(v.get<int>() - 1);
    for (const json& e : p.at("edges")) vp.edges.push_back(e.get<int>() - 1);
    out.push_back(std::move(vp));
  }
  return out;
}

DisjointSpec spec_of(Variant v) {
  switch (v) {
    case Variant::kVertex: return {true, false};
    case Variant::kEdge: return {false, false};
    case Variant::kDirectedVertex: return {true, true};
    case Variant::kDirectedArc: return {false, true};
  }
  return {};
}

std::vector<Commodity> commodities_of(const Instance& inst) {
  std::vector<Commodity> out;
  for (const auto& [id, t] : inst.commodities) out.push_back({t.sources, t.sinks});
  return out;
}

// Greedy: each commodity joins the first batch it stays separated from.
std::vector<std::vector<int>> greedy_batches(const Digraph& g, const std::vector<Commodity>& cs,
                                             int64_t h) {
  std::vector<std::vector<int>> batches;
  for (int i = 0; i < static_cast<int>(cs.size()); ++i) {
    bool placed = false;
    for (auto& b : batches) {
      std::vector<int> trial = b;
      trial.push_back(i);
      try {
        check_batches(g, cs, {trial}, h);
      } catch (const Error&) {
        continue;
      }
      b = std::move(trial);
      placed = true;
      break;
    }
    if (!placed) batches.push_back({i});
  }
  return batches;
}

json int_vec(const std::vector<int64_t>& v) { return json(v); }

std::vector<int64_t> int_vec_from(const json& j, int m) {
  std::vector<int64_t> v = j.get<std::vector<int64_t>>();
  if (static_cast<int>(v.size()) != m) fail_input("per-arc vector has the wrong length");
  return v;
}

// Feasible, conserving, and no S-T path of unsaturated arcs.
std::string check_arc_flow(const Digraph& g, const std::vector<int64_t>& f, bool need_blocking) {
  ArcFlow q(g.m());
  for (int a = 0; a < g.m(); ++a) {
    if (f[a] < 0 || f[a] > g.arc(a).cap) return "arc " + std::to_string(a + 1) + " outside [0, U]";
    q[a] = mpq_class(std::to_string(f[a]));
  }
  if (deficit(g, q).total != 0) return "flow is not conserved";
  if (!need_blocking) return "";
  std::vector<char> seen(g.n(), 0);
  std::vector<int> stack;
  for (int s : g.sources()) {
    seen[s] = 1;
    stack.push_back(s);
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (g.is_sink(v)) return "an S-T path of unsaturated arcs remains";
    for (int a : g.out(v)) {
      int u = g.arc(a).head;
      if (f[a] < g.arc(a).cap && !seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
    }
  }
  return "";
}

int64_t out_of_sources(const Digraph& g, const std::vector<int64_t>& f) {
  int64_t v = 0;
  for (int a = 0; a < g.m(); ++a) {
    if (g.is_source(g.arc(a).tail)) v += f[a];
    if (g.is_source(g.arc(a).head)) v -= f[a];
  }
  return v;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

bool needs_h(const std::string& c) {
  return c == "solve" || c == "blocker" || c == "maximal-paths" || c == "max-paths" ||
         c == "cutmatch";
}

}  // namespace

double default_eps(const std::string& c) {
  if (c == "round" || c == "bmatch") return 0.1;
  if (c == "cutmatch") return 0.08;
  return 0.5;
}

json run_command(const Instance& inst, const RunOptions& opt) {
  const std::string& cmd = opt.command;
  const Digraph& g = inst.g;
  g.validate();
  if (needs_h(cmd) && opt.h < 1) fail_input("--h must be a positive integer for " + cmd);
  const double eps = opt.eps > 0 ? opt.eps : default_eps(cmd);
  if (!(eps > 0 && eps < 1)) fail_input("--eps must lie in (0,1)");
  json doc;
  doc["format"] = "lcf-result";
  doc["version"] = 1;
  doc["command"] = cmd;
  doc["instance"] = {{"digest", instance_digest(inst)}, {"text", serialize_instance(inst)}};
  json params = {{"h", opt.h}, {"eps", eps}, {"mode", mode_name(opt.mode)}, {"seed", opt.seed}};
  MwOptions mo;
  mo.eps = eps;
  mo.mode = opt.mode;
  mo.seed = opt.seed;
  Rng rng(opt.seed);

  if (cmd == "solve") {
    if (inst.commodities.empty()) {
      MwResult r = solve_pair(g, opt.h, mo);
      doc["flow"] = flow_json(g, r.flows[0]);
      doc["cut"] = cut_json(r.cut);
      doc["work"] = {{"blocker_calls", r.stats.blocker_calls},
                     {"lambda_steps", r.stats.lambda_steps},
                     {"blocker_iterations", r.stats.blocker_iterations}};
    } else {
      std::vector<Commodity> cs = commodities_of(inst);
      auto batches = greedy_batches(g, cs, opt.h);
      MwResult r = solve_multi(g, cs, batches, opt.h, mo);
      json flows = json::array();
      size_t i = 0;
      for (const auto& [id, t] : inst.commodities) {
        flows.push_back({{"id", id}, {"flow", flow_json(g, r.flows[i++])}});
      }
      doc["flows"] = flows;
      doc["batches"] = batches;
      doc["cut"] = cut_json(r.cut);
      doc["work"] = {{"blocker_calls", r.stats.blocker_calls},
                     {"lambda_steps", r.stats.lambda_steps},
                     {"blocker_iterations", r.stats.blocker_iterations}};
    }
  } else if (cmd == "blocker") {
    MovingCut w(g.m(), ScaledReal::from_double(1.0));
    ScaledReal d = h_length_distance(g, w, opt.h, g.sources(), g.sinks());
    PathFlow f;
    if (!d.is_inf()) {
      BlockerStats st;
      f.components.push_back(lightest_path_blocker(g, w, opt.h, d, eps, opt.mode, &rng, &d, &st));
      doc["work"] = {{"iterations", st.iterations}, {"max_copy_arcs", st.max_copy_arcs}};
      doc["lambda"] = real_json(d);
    } else {
      f.components.emplace_back();
      doc["lambda"] = nullptr;
    }
    doc["flow"] = flow_json(g, f);
    doc["cut"] = cut_json(w);
  } else if (cmd == "blocking-flow") {
    LayeredDag d = validate_layered_dag(g);
    std::vector<int64_t> f = blocking_integral_flow(d, opt.mode, &rng);
    doc["arc_flow"] = int_vec(f);
    doc["value"] = out_of_sources(g, f);
  } else if (cmd == "round") {
    LayeredDag d = validate_layered_dag(g);
    ArcFlow in = iterated_path_count_flow(d);
    ArcFlow out = round_flow(d, in, eps);
    json jin = json::array();
    std::vector<int64_t> iout(g.m());
    mpq_class vin = 0;
    for (int a = 0; a < g.m(); ++a) {
      jin.push_back(in[a].get_str());
      iout[a] = out[a].get_num().get_si();
      if (g.is_source(g.arc(a).tail)) vin += in[a];
    }
    doc["input_flow"] = jin;
    doc["input_value"] = vin.get_str();
    doc["arc_flow"] = int_vec(iout);
    doc["value"] = out_of_sources(g, iout);
  } else if (cmd == "maximal-paths" || cmd == "max-paths") {
    params["variant"] = variant_name(opt.variant);
    auto ps = cmd == "maximal-paths" ? maximal_disjoint_paths(g, opt.variant, opt.h, mo)
                                     : maximum_disjoint_paths(g, opt.variant, opt.h, mo);
    doc["paths"] = orig_paths_json(ps);
    doc["count"] = ps.size();
  } else if (cmd == "bmatch") {
    BMatching bm = b_matching(g, inst.budgets(), eps, mo);
    doc["x"] = int_vec(bm.x);
    doc["value"] = bm.value;
    doc["side"] = bm.side;
  } else if (cmd == "cutmatch") {
    if (!(opt.phi > 0 && opt.phi <= 1)) fail_input("--phi must lie in (0,1]");
    params["phi"] = opt.phi;
    CutmatchOptions co;
    co.eps = eps;
    co.mode = opt.mode;
    co.seed = opt.seed;
    CutMatch cm = cutmatch(g, opt.h, opt.phi, co);
    doc["flow"] = flow_json(g, cm.flow);
    doc["cut"] = cut_json(cm.cut);
    doc["gamma"] = cm.gamma;
    doc["gamma_bound"] = cm.gamma_cap;
    doc["work"] = {{"phases", cm.phases}, {"iterations", cm.iterations}};
  } else {
    fail_input("unknown command '" + cmd + "'");
  }
  doc["params"] = params;
  // The verdict comes from the serialized document alone.
  json reread = json::parse(doc.dump());
  Recheck rc = verify_result(reread);
  doc["passed"] = rc.passed;
  doc["report"] = rc.report;
  doc["summary"] = rc.summary;
  return doc;
}

Recheck verify_result(const json& doc) {
  Recheck rc;
  if (doc.value("format", "") != "lcf-result") fail_input("not an lcf result document");
  const Instance inst = parse_instance(doc.at("instance").at("text").get<std::string>());
  if (instance_digest(inst) != doc.at("instance").at("digest").get<std::string>()) {
    rc.report = "instance digest mismatch";
    return rc;
  }
  const Digraph& g = inst.g;
  const std::string cmd = doc.at("command").get<std::string>();
  const json& p = doc.at("params");
  const int64_t h = p.at("h").get<int64_t>();
  const double eps = p.at("eps").get<double>();
  parse_mode(p.at("mode").get<std::string>());
  std::ostringstream sum;
  std::string why;

  if (cmd == "solve") {
    MovingCut w = cut_from(doc.at("cut"), g.m());
    CertReport c;
    int64_t k = 0;
    if (inst.commodities.empty()) {
      PathFlow f = flow_from(g, doc.at("flow"));
      k = static_cast<int64_t>(f.components.size());
      c = certify_pair(g, f, w, h, eps);
      if (Verdict v = verify_flow(g, f, h); !v) why = "flow: " + v.reason;
      if (Verdict v = verify_moving_cut(g, w, h); !v && why.empty()) why = "cut: " + v.reason;
    } else {
      std::vector<Commodity> cs = commodities_of(inst);
      const json& fl = doc.at("flows");
      if (fl.size() != cs.size()) fail_input("one flow per commodity expected");
      std::vector<PathFlow> fs;
      for (const json& x : fl) {
        fs.push_back(flow_from(g, x.at("flow")));
        k += static_cast<int64_t>(fs.back().components.size());
      }
      c = certify_multi(g, cs, fs, w, h, eps);
    }
    if (why.empty() && !c.pass()) why = c.reason.empty() ? "certificate failed" : c.reason;
    sum << "value=" << fmt("%.6g", static_cast<double>(c.primal))
        << " dual=" << fmt("%.6g", static_cast<double>(c.dual))
        << " gap=" << fmt("%.4f", static_cast<double>(c.gap)) << " k=" << k;
    if (doc.contains("work")) sum << " iterations=" << doc["work"].value("blocker_calls", 0);
  } else if (cmd == "blocker") {
    PathFlow f = flow_from(g, doc.at("flow"));
    MovingCut w = cut_from(doc.at("cut"), g.m());
    if (f.components.size() != 1 || f.eta != 1.0) fail_input("blocker flow must be one integral component");
    if (doc.at("lambda").is_null()) {
      if (!f.components[0].empty()) why = "flow without an h-length path";
      ScaledReal d = h_length_distance(g, w, h, g.sources(), g.sinks());
      if (!d.is_inf()) why = "lambda missing although an h-length path exists";
    } else {
      ScaledReal lambda = real_from(doc.at("lambda"));
      if (Verdict v = verify_blocker(g, f.components[0], w, h, lambda, eps); !v) why = v.reason;
    }
    sum << "value=" << flow_value(f.components[0]) << " paths=" << f.components[0].size();
  } else if (cmd == "blocking-flow" || cmd == "round") {
    std::vector<int64_t> f = int_vec_from(doc.at("arc_flow"), g.m());
    why = check_arc_flow(g, f, cmd == "blocking-flow");
    int64_t val = out_of_sources(g, f);
    if (why.empty() && val != doc.at("value").get<int64_t>()) why = "stored value disagrees";
    sum << "value=" << val;
    if (cmd == "round") {
      const json& jin = doc.at("input_flow");
      if (static_cast<int>(jin.size()) != g.m()) fail_input("input flow has the wrong length");
      mpq_class vin = 0;
      for (int a = 0; a < g.m(); ++a) {
        mpq_class q(jin[a].get<std::string>());
        q.canonicalize();
        if (q < 0 || q > g.arc(a).cap) why = "input flow infeasible";
        if (g.is_source(g.arc(a).tail)) vin += q;
        if (g.is_source(g.arc(a).head)) vin -= q;
      }
      const mpq_class e(eps);
      if (why.empty() && mpq_class(std::to_string(val)) < (1 - e) * vin) {
        why = "rounded value below (1-eps) times the input value";
      }
      sum << " input=" << fmt("%.6g", vin.get_d());
    }
  } else if (cmd == "maximal-paths" || cmd == "max-paths") {
    Variant var = parse_variant(p.at("variant").get<std::string>());
    auto ps = orig_paths_from(doc.at("paths"));
    Verdict v = cmd == "maximal-paths" ? verify_maximal(g, spec_of(var), h, ps)
                                       : verify_disjoint_paths(g, spec_of(var), h, ps);
    if (!v) why = v.reason;
    sum << "k=" << ps.size();
  } else if (cmd == "bmatch") {
    std::vector<int64_t> x = int_vec_from(doc.at("x"), g.m());
    if (Verdict v = verify_b_matching(g, inst.budgets(), x); !v) why = v.reason;
    int64_t val = 0;
    for (int64_t y : x) val += y;
    if (why.empty() && val != doc.at("value").get<int64_t>()) why = "stored value disagrees";
    sum << "value=" << val;
  } else if (cmd == "cutmatch") {
    const double phi = p.at("phi").get<double>();
    PathFlow f = flow_from(g, doc.at("flow"));
    MovingCut w = cut_from(doc.at("cut"), g.m());
    const double bound = cutmatch_gamma_bound(g, phi);
    const double gamma = doc.at("gamma").get<double>();
    if (gamma > bound) why = "measured congestion above the bound";
    if (Verdict v = verify_cutmatch(g, f, w, h, phi, bound); !v && why.empty()) why = v.reason;
    sum << "value=" << f.total_multiplicity() << " gamma=" << fmt("%.3g", gamma)
        << " bound=" << fmt("%.4g", bound);
  } else {
    fail_input("unknown command '" + cmd + "'");
  }
  rc.passed = why.empty();
  rc.report = why;
  rc.summary = cmd + " " + (rc.passed ? "ok " : "FAIL ") + sum.str();
  return rc;
}

}  // namespace lcf
