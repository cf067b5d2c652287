#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graph.hpp"

namespace lcf {

struct Terminals {
  VertexSet sources;
  VertexSet sinks;
};

// Parsed instance file. Vertices are 0-based in memory, 1-based on disk.
struct Instance {
  Digraph g;
  std::vector<std::string> comments;
  std::map<int64_t, int64_t> budget_lines;  // vertex -> budget, as given
  std::map<int64_t, Terminals> commodities;  // id -> terminals

  // Budgets per vertex, 1 where no line was given.
  std::vector<int64_t> budgets() const;
};

// Errors carry "line N: ..." diagnostics and ErrorKind::kInput.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
std::string serialize_instance(const Instance& inst);

// FNV-1a of the serialized form.
std::string instance_digest(const Instance& inst);

// "layered": h+1 layers, arcs only between consecutive layers, caps in
// [1,16], unit lengths. "random": connected digraph, caps in [1,16], lengths
// in [1,4].
Instance generate_instance(const std::string& model, int n, int m, int64_t h, uint64_t seed);

}  // namespace lcf
