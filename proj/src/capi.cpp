#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>

#include "lcf/lcf.h"
#include "runner.hpp"

struct lcf_instance {
  lcf::Instance inst;
};

struct lcf_result {
  nlohmann::json doc;
};

namespace {

thread_local std::string g_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

lcf_status fail(lcf_status st, const std::string& msg) {
  g_error = msg;
  return st;
}

template <typename F>
lcf_status guard(F&& body) {
  try {
    g_error.clear();
    return body();
  } catch (const lcf::Error& e) {
    switch (e.kind()) {
      case lcf::ErrorKind::kInput: return fail(LCF_PARSE, e.what());
      case lcf::ErrorKind::kPrecondition: return fail(LCF_PRECONDITION, e.what());
      case lcf::ErrorKind::kInternal: return fail(LCF_INTERNAL, e.what());
    }
    return fail(LCF_INTERNAL, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(LCF_PARSE, std::string("malformed result document: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(LCF_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LCF_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

void lcf_options_init(lcf_options* opt) {
  if (!opt) return;
  opt->command = "solve";
  opt->h = 0;
  opt->eps = 0.0;
  opt->mode = LCF_MODE_DET;
  opt->seed = 0;
  opt->variant = LCF_VARIANT_DARC;
  opt->phi = 1.0;
}

const char* lcf_last_error(void) { return g_error.c_str(); }

void lcf_string_free(char* s) { std::free(s); }

lcf_status lcf_instance_parse(const char* text, lcf_instance** out) {
  if (!text || !out) return fail(LCF_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guard([&] {
    *out = new lcf_instance{lcf::parse_instance(text)};
    return LCF_OK;
  });
}

lcf_status lcf_instance_load(const char* path, lcf_instance** out) {
  if (!path || !out) return fail(LCF_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  std::ifstream f(path, std::ios::binary);
  if (!f) return fail(LCF_IO, std::string("cannot open ") + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return lcf_instance_parse(ss.str().c_str(), out);
}

lcf_status lcf_instance_serialize(const lcf_instance* inst, char** text) {
  if (!inst || !text) return fail(LCF_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    *text = dup(lcf::serialize_instance(inst->inst));
    return *text ? LCF_OK : fail(LCF_INTERNAL, "out of memory");
  });
}

lcf_status lcf_instance_size(const lcf_instance* inst, int* n, int* m) {
  if (!inst || !n || !m) return fail(LCF_INVALID_ARGUMENT, "null argument");
  *n = inst->inst.g.n();
  *m = inst->inst.g.m();
  return LCF_OK;
}

void lcf_instance_free(lcf_instance* inst) { delete inst; }

lcf_status lcf_generate(const char* model, int n, int m, int64_t h, uint64_t seed,
                        lcf_instance** out) {
  if (!model || !out) return fail(LCF_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  lcf_status st = guard([&] {
    *out = new lcf_instance{lcf::generate_instance(model, n, m, h, seed)};
    return LCF_OK;
  });
  // Bad generator parameters are argument errors, not parse errors.
  return st == LCF_PARSE ? LCF_INVALID_ARGUMENT : st;
}

lcf_status lcf_run(const lcf_instance* inst, const lcf_options* opt, lcf_result** out) {
  if (!inst || !opt || !out || !opt->command) return fail(LCF_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  if (opt->mode != LCF_MODE_DET && opt->mode != LCF_MODE_RAND) {
    return fail(LCF_INVALID_ARGUMENT, "unknown mode");
  }
  if (opt->variant < LCF_VARIANT_VERTEX || opt->variant > LCF_VARIANT_DARC) {
    return fail(LCF_INVALID_ARGUMENT, "unknown variant");
  }
  lcf::RunOptions ro;
  ro.command = opt->command;
  ro.h = opt->h;
  ro.eps = opt->eps;
  ro.mode = opt->mode == LCF_MODE_DET ? lcf::BlockMode::kDeterministic : lcf::BlockMode::kRandomized;
  ro.seed = opt->seed;
  ro.variant = static_cast<lcf::Variant>(opt->variant);
  ro.phi = opt->phi;
  lcf_status st = guard([&] {
    *out = new lcf_result{lcf::run_command(inst->inst, ro)};
    return LCF_OK;
  });
  // Option problems surface as input errors from the runner.
  return st == LCF_PARSE ? LCF_INVALID_ARGUMENT : st;
}

lcf_status lcf_result_json(const lcf_result* res, char** json) {
  if (!res || !json) return fail(LCF_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    *json = dup(res->doc.dump(1) + "\n");
    return *json ? LCF_OK : fail(LCF_INTERNAL, "out of memory");
  });
}

int lcf_result_passed(const lcf_result* res) {
  return res && res->doc.value("passed", false) ? 1 : 0;
}

lcf_status lcf_result_summary(const lcf_result* res, char** line) {
  if (!res || !line) return fail(LCF_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    std::string s = res->doc.value("summary", "");
    std::string why = res->doc.value("report", "");
    if (!why.empty()) s += " (" + why + ")";
    *line = dup(s);
    return *line ? LCF_OK : fail(LCF_INTERNAL, "out of memory");
  });
}

void lcf_result_free(lcf_result* res) { delete res; }

lcf_status lcf_verify(const char* json, int* passed, char** report) {
  if (!json || !passed) return fail(LCF_INVALID_ARGUMENT, "null argument");
  *passed = 0;
  if (report) *report = nullptr;
  return guard([&] {
    lcf::Recheck rc = lcf::verify_result(nlohmann::json::parse(json));
    *passed = rc.passed ? 1 : 0;
    if (report) {
      std::string s = rc.summary;
      if (!rc.report.empty()) s += " (" + rc.report + ")";
      *report = dup(s);
    }
    return LCF_OK;
  });
}

}  // extern "C"
