#pragma once

#include <string>

#include "apps.hpp"
#include "io.hpp"
#include "json.hpp"

namespace lcf {

struct RunOptions {
  std::string command = "solve";
  int64_t h = 0;        // 0: required commands fail
  double eps = 0.0;     // 0: command default
  BlockMode mode = BlockMode::kDeterministic;
  uint64_t seed = 0;
  Variant variant = Variant::kDirectedArc;
  double phi = 1.0;
};

double default_eps(const std::string& command);

// Runs one command and returns the result document, including the verdict
// obtained by re-verifying the serialized document.
nlohmann::json run_command(const Instance& inst, const RunOptions& opt);

struct Recheck {
  bool passed = false;
  std::string report;  // first failure, empty on success
  std::string summary;
};

// Re-verifies a result document using only its contents.
Recheck verify_result(const nlohmann::json& doc);

}  // namespace lcf
