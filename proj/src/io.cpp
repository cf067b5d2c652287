#include "io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace lcf {

namespace {

[[noreturn]] void fail_line(int line, const std::string& msg) {
  fail_input("line " + std::to_string(line) + ": " + msg);
}

int64_t parse_int(const std::string& tok, int line) {
  size_t used = 0;
  int64_t v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    fail_line(line, "expected an integer, got '" + tok + "'");
  }
  if (used != tok.size()) fail_line(line, "expected an integer, got '" + tok + "'");
  return v;
}

}  // namespace

std::vector<int64_t> Instance::budgets() const {
  std::vector<int64_t> b(g.n(), 1);
  for (auto [v, x] : budget_lines) b[v] = x;
  return b;
}

Instance parse_instance(const std::string& text) {
  Instance inst;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool header = false;
  int64_t n = 0, m = 0;
  VertexSet S, T;
  std::set<int64_t> s_seen, t_seen;
  auto vertex = [&](const std::string& tok, int ln) {
    int64_t v = parse_int(tok, ln);
    if (v < 1 || v > n) fail_line(ln, "vertex " + tok + " out of range 1.." + std::to_string(n));
    return v - 1;
  };
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& kind = tok[0];
    if (kind == "c") {
      size_t at = raw.find('c');
      std::string rest = raw.substr(at + 1);
      if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
      inst.comments.push_back(rest);
      continue;
    }
    if (kind == "p") {
      if (header) fail_line(line, "duplicate header");
      if (tok.size() != 4 || tok[1] != "lcf") fail_line(line, "header must be 'p lcf <n> <m>'");
      n = parse_int(tok[2], line);
      m = parse_int(tok[3], line);
      if (n < 1 || m < 0 || n > (int64_t{1} << 30) || m > (int64_t{1} << 30)) {
        fail_line(line, "bad header sizes");
      }
      inst.g = Digraph(static_cast<int>(n));
      header = true;
      continue;
    }
    if (!header) fail_line(line, "'" + kind + "' before the 'p lcf' header");
    if (kind == "a") {
      if (tok.size() != 5) fail_line(line, "arc line must be 'a <u> <v> <cap> <len>'");
      int64_t u = vertex(tok[1], line), v = vertex(tok[2], line);
      int64_t cap = parse_int(tok[3], line), len = parse_int(tok[4], line);
      if (cap < 0) fail_line(line, "negative capacity");
      if (len < 1) fail_line(line, "length must be at least 1");
      if (inst.g.m() >= m) fail_line(line, "more arcs than the header declares");
      inst.g.add_arc(static_cast<int>(u), static_cast<int>(v), cap, len);
    } else if (kind == "s" || kind == "t") {
      if (tok.size() != 2) fail_line(line, "terminal line must be '" + kind + " <v>'");
      int64_t v = vertex(tok[1], line);
      auto& seen = kind == "s" ? s_seen : t_seen;
      if (!seen.insert(v).second) fail_line(line, "duplicate terminal");
      (kind == "s" ? S : T).push_back(static_cast<int>(v));
    } else if (kind == "b") {
      if (tok.size() != 3) fail_line(line, "budget line must be 'b <v> <budget>'");
      int64_t v = vertex(tok[1], line), b = parse_int(tok[2], line);
      if (b < 0) fail_line(line, "negative budget");
      if (!inst.budget_lines.emplace(v, b).second) fail_line(line, "duplicate budget");
    } else if (kind == "k") {
      if (tok.size() != 4 || (tok[2] != "s" && tok[2] != "t")) {
        fail_line(line, "commodity line must be 'k <id> s|t <v>'");
      }
      int64_t id = parse_int(tok[1], line);
      int v = static_cast<int>(vertex(tok[3], line));
      Terminals& c = inst.commodities[id];
      (tok[2] == "s" ? c.sources : c.sinks).push_back(v);
    } else {
      fail_line(line, "unknown line type '" + kind + "'");
    }
  }
  if (!header) fail_input("line " + std::to_string(line) + ": missing 'p lcf' header");
  if (inst.g.m() != m) {
    fail_input("line " + std::to_string(line) + ": header declares " + std::to_string(m) +
               " arcs, found " + std::to_string(inst.g.m()));
  }
  for (int v : S) {
    if (t_seen.count(v)) fail_input("vertex " + std::to_string(v + 1) + " is both source and sink");
  }
  inst.g.set_terminals(S, T);
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail_input("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_instance(ss.str());
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream os;
  for (const std::string& c : inst.comments) os << (c.empty() ? "c" : "c " + c) << '\n';
  const Digraph& g = inst.g;
  os << "p lcf " << g.n() << ' ' << g.m() << '\n';
  for (const Arc& a : g.arcs()) {
    os << "a " << a.tail + 1 << ' ' << a.head + 1 << ' ' << a.cap << ' ' << a.len << '\n';
  }
  for (int s : g.sources()) os << "s " << s + 1 << '\n';
  for (int t : g.sinks()) os << "t " << t + 1 << '\n';
  for (auto [v, b] : inst.budget_lines) os << "b " << v + 1 << ' ' << b << '\n';
  for (const auto& [id, c] : inst.commodities) {
    for (int s : c.sources) os << "k " << id << " s " << s + 1 << '\n';
    for (int t : c.sinks) os << "k " << id << " t " << t + 1 << '\n';
  }
  return os.str();
}

std::string instance_digest(const Instance& inst) {
  uint64_t hsh = 14695981039346656037ull;
  for (unsigned char c : serialize_instance(inst)) {
    hsh ^= c;
    hsh *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hsh));
  return buf;
}

Instance generate_instance(const std::string& model, int n, int m, int64_t h, uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Modulo draws keep the output identical across standard libraries.
  auto pick = [&](uint64_t k) { return static_cast<int64_t>(rng() % k); };
  Instance inst;
  inst.comments.push_back("model " + model + " n " + std::to_string(n) + " m " +
                          std::to_string(m) + " h " + std::to_string(h) + " seed " +
                          std::to_string(seed));
  Digraph g(n);
  if (model == "layered") {
    if (h < 1 || n < h + 1) fail_input("layered model needs n >= h + 1 and h >= 1");
    std::vector<std::vector<int>> layers(h + 1);
    for (int v = 0, i = 0; i <= h; ++i) {
      int64_t size = n / (h + 1) + (i < n % (h + 1) ? 1 : 0);
      for (int64_t k = 0; k < size; ++k) layers[i].push_back(v++);
    }
    int64_t need = 0, most = 0;
    for (int i = 0; i < h; ++i) {
      need += std::max(layers[i].size(), layers[i + 1].size());
      most += static_cast<int64_t>(layers[i].size() * layers[i + 1].size());
    }
    if (m < need || m > most) {
      fail_input("layered model needs " + std::to_string(need) + " <= m <= " + std::to_string(most));
    }
    std::set<std::pair<int, int>> used;
    auto add = [&](int u, int v) {
      used.insert({u, v});
      g.add_arc(u, v, 1 + pick(16), 1);
    };
    for (int i = 0; i < h; ++i) {
      const auto& A = layers[i];
      const auto& B = layers[i + 1];
      size_t k = std::max(A.size(), B.size());
      for (size_t j = 0; j < k; ++j) add(A[j % A.size()], B[j % B.size()]);
    }
    while (g.m() < m) {
      int i = static_cast<int>(pick(static_cast<uint64_t>(h)));
      int u = layers[i][pick(layers[i].size())];
      int v = layers[i + 1][pick(layers[i + 1].size())];
      if (!used.count({u, v})) add(u, v);
    }
    g.set_terminals(layers.front(), layers.back());
  } else if (model == "random") {
    if (n < 2 || m < n - 1 || static_cast<int64_t>(m) > static_cast<int64_t>(n) * (n - 1)) {
      fail_input("random model needs n >= 2 and n - 1 <= m <= n(n-1)");
    }
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[pick(i + 1)]);
    std::set<std::pair<int, int>> used;
    auto add = [&](int u, int v) {
      used.insert({u, v});
      g.add_arc(u, v, 1 + pick(16), 1 + pick(4));
    };
    for (int i = 1; i < n; ++i) add(perm[pick(i)], perm[i]);
    while (g.m() < m) {
      int u = static_cast<int>(pick(n)), v = static_cast<int>(pick(n));
      if (u != v && !used.count({u, v})) add(u, v);
    }
    const int k = std::max(1, n / 10);
    VertexSet S, T;
    for (int i = 0; i < k; ++i) {
      S.push_back(i);
      T.push_back(n - 1 - i);
    }
    g.set_terminals(S, T);
  } else {
    fail_input("unknown model '" + model + "'");
  }
  inst.g = std::move(g);
  return inst;
}

}  // namespace lcf
