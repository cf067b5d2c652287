// lcf: command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lcf/lcf.h"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct Args {
  std::string input;
  std::string out;
  int64_t h = 0;
  double eps = 0.0;
  std::string mode = "det";
  uint64_t seed = 0;
  std::string variant = "darc";
  double phi = 1.0;
  std::string model = "layered";
  int n = 0;
  int m = 0;
};

int report_error(lcf_status st) {
  std::cerr << "lcf: " << lcf_last_error() << "\n";
  return st == LCF_INTERNAL ? kVerifyFailed : kUsage;
}

bool write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

int run_solver(const std::string& command, const Args& a) {
  lcf_instance* inst = nullptr;
  lcf_status st = lcf_instance_load(a.input.c_str(), &inst);
  if (st != LCF_OK) return report_error(st);
  static const std::map<std::string, lcf_variant> variants = {
      {"vertex", LCF_VARIANT_VERTEX},
      {"edge", LCF_VARIANT_EDGE},
      {"dvertex", LCF_VARIANT_DVERTEX},
      {"darc", LCF_VARIANT_DARC}};
  lcf_options opt;
  lcf_options_init(&opt);
  opt.command = command.c_str();
  opt.h = a.h;
  opt.eps = a.eps;
  opt.mode = a.mode == "rand" ? LCF_MODE_RAND : LCF_MODE_DET;
  opt.seed = a.seed;
  opt.variant = variants.at(a.variant);
  opt.phi = a.phi;
  lcf_result* res = nullptr;
  st = lcf_run(inst, &opt, &res);
  lcf_instance_free(inst);
  if (st != LCF_OK) return report_error(st);
  char* json = nullptr;
  char* line = nullptr;
  lcf_result_json(res, &json);
  lcf_result_summary(res, &line);
  const int passed = lcf_result_passed(res);
  lcf_result_free(res);
  bool wrote = a.out.empty() || write_text(a.out, json);
  std::cout << line << "\n";
  lcf_string_free(json);
  lcf_string_free(line);
  if (!wrote) {
    std::cerr << "lcf: cannot write " << a.out << "\n";
    return kUsage;
  }
  return passed ? kOk : kVerifyFailed;
}

int run_gen(const Args& a) {
  lcf_instance* inst = nullptr;
  const int64_t h = a.h > 0 ? a.h : std::min<int64_t>(3, a.n - 1);
  lcf_status st = lcf_generate(a.model.c_str(), a.n, a.m, h, a.seed, &inst);
  if (st != LCF_OK) return report_error(st);
  char* text = nullptr;
  lcf_instance_serialize(inst, &text);
  lcf_instance_free(inst);
  bool ok = write_text(a.out, text);
  lcf_string_free(text);
  if (!ok) {
    std::cerr << "lcf: cannot write " << a.out << "\n";
    return kUsage;
  }
  return kOk;
}

int run_verify(const Args& a) {
  std::ifstream f(a.input, std::ios::binary);
  if (!f) {
    std::cerr << "lcf: cannot open " << a.input << "\n";
    return kUsage;
  }
  std::stringstream ss;
  ss << f.rdbuf();
  int passed = 0;
  char* report = nullptr;
  lcf_status st = lcf_verify(ss.str().c_str(), &passed, &report);
  if (st != LCF_OK) return report_error(st);
  std::cout << report << "\n";
  lcf_string_free(report);
  return passed ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Length-constrained flows, moving cuts and applications"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  Args a;
  const char* solvers[] = {"solve",     "blocker", "blocking-flow", "round",
                           "maximal-paths", "max-paths", "bmatch", "cutmatch"};
  std::map<std::string, CLI::App*> sub;
  for (const char* name : solvers) {
    CLI::App* s = app.add_subcommand(name, std::string("run ") + name);
    s->add_option("--input", a.input, "instance file")->required()->check(CLI::ExistingFile);
    s->add_option("--h", a.h, "length bound");
    s->add_option("--eps", a.eps, "accuracy (default depends on the command)");
    s->add_option("--mode", a.mode, "det or rand")->check(CLI::IsMember({"det", "rand"}));
    s->add_option("--seed", a.seed, "random seed");
    s->add_option("--variant", a.variant, "vertex, edge, dvertex or darc")
        ->check(CLI::IsMember({"vertex", "edge", "dvertex", "darc"}));
    s->add_option("--phi", a.phi, "cutmatch sparsity");
    s->add_option("--out", a.out, "result file (JSON)");
    sub[name] = s;
  }
  CLI::App* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--model", a.model, "layered or random")
      ->check(CLI::IsMember({"layered", "random"}));
  gen->add_option("--n", a.n, "vertices")->required();
  gen->add_option("--m", a.m, "arcs")->required();
  gen->add_option("--h", a.h, "layers (layered model)");
  gen->add_option("--seed", a.seed, "random seed");
  gen->add_option("--out", a.out, "output file (default stdout)");
  CLI::App* ver = app.add_subcommand("verify", "re-verify a result file");
  ver->add_option("--input", a.input, "result file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (gen->parsed()) return run_gen(a);
  if (ver->parsed()) return run_verify(a);
  for (auto& [name, s] : sub) {
    if (s->parsed()) return run_solver(name, a);
  }
  return kUsage;
}
