// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "solcheck/solcheck.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Owned {
  char* s = nullptr;
  ~Owned() { sc_string_free(s); }
};

int report_error(sc_status s) {
  std::cerr << "solcheck: " << (*sc_last_error() ? sc_last_error() : sc_status_name(s)) << "\n";
  return kExitUsage;
}

bool emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << std::flush;
    return true;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "solcheck: cannot write '" << out_path << "'\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

struct ModelHandle {
  sc_model* m = nullptr;
  ~ModelHandle() { sc_model_free(m); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature identity verification for Riemannian charts and gradient shrinking solitons"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sc_version()));

  std::string model, tier, format = "text", out_path, tensor, point, kind;
  std::vector<std::string> checks;
  std::size_t points = 100;
  std::uint64_t seed = 0;
  double tol = 1e-8, threshold = 1e-12;
  unsigned threads = 0;

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    c->add_option("--out", out_path, "Write output to this path instead of stdout");
  };
  auto add_sampling = [&](CLI::App* c) {
    c->add_option("--points", points, "Sample points")->check(CLI::PositiveNumber);
    c->add_option("--seed", seed, "Sampling seed");
    c->add_option("--tol", tol, "Residual tolerance")->check(CLI::PositiveNumber);
    c->add_option("--threads", threads, "Worker threads (0 = all cores)");
  };

  auto* list = app.add_subcommand("list", "List builtin models or registered checks");
  list->add_option("kind", kind, "models | checks")->required()->check(CLI::IsMember({"models", "checks"}));
  list->add_option("--tier", tier, "Restrict checks to a tier")->check(CLI::IsMember({"A", "B", "C", "all"}));
  add_format(list);

  auto* verify = app.add_subcommand("verify", "Evaluate identity checks on a model");
  verify->add_option("--model", model, "Builtin model name or model file")->required();
  verify->add_option("--tier", tier, "Tier to run")->check(CLI::IsMember({"A", "B", "C", "all"}));
  verify->add_option("--check", checks, "Check id (repeatable)");
  add_sampling(verify);
  add_format(verify);

  auto* classify = app.add_subcommand("classify", "Classify a 4-dimensional shrinker");
  classify->add_option("--model", model, "Builtin model name or model file")->required();
  add_sampling(classify);
  add_format(classify);

  auto* dump = app.add_subcommand("tensor", "Print a tensor at one point");
  dump->add_option("--model", model, "Builtin model name or model file")->required();
  dump->add_option("--tensor", tensor, "Tensor name")->required();
  dump->add_option("--point", point, "Coordinates as name=value,...")->required();
  dump->add_option("--threshold", threshold, "Hide components at or below this magnitude")
      ->check(CLI::NonNegativeNumber);
  add_format(dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const sc_format fmt = format == "json" ? SC_FORMAT_JSON : SC_FORMAT_TEXT;
  sc_run_options opts;
  sc_default_options(&opts);
  opts.points = points;
  opts.seed = seed;
  opts.tolerance = tol;
  opts.threads = threads;

  if (*list) {
    Owned text;
    const sc_status s = kind == "models" ? sc_list_models(fmt, &text.s)
                                         : sc_list_checks(tier.empty() ? nullptr : tier.c_str(), fmt, &text.s);
    if (s != SC_OK) return report_error(s);
    return emit(text.s, out_path) ? 0 : kExitUsage;
  }

  ModelHandle mh;
  if (const sc_status s = sc_model_resolve(model.c_str(), &mh.m); s != SC_OK) return report_error(s);

  if (*verify) {
    if (tier.empty() && checks.empty()) {
      std::cerr << "solcheck: verify needs --tier or --check\n";
      return kExitUsage;
    }
    std::vector<const char*> ids;
    for (const auto& c : checks) ids.push_back(c.c_str());
    sc_report* report = nullptr;
    const sc_status s =
        sc_verify(mh.m, tier.empty() ? nullptr : tier.c_str(), ids.data(), ids.size(), &opts, &report);
    if (s != SC_OK) return report_error(s);
    Owned text;
    const sc_status r = sc_report_render(report, fmt, &text.s);
    const int passed = sc_report_all_passed(report);
    sc_report_free(report);
    if (r != SC_OK) return report_error(r);
    if (!emit(text.s, out_path)) return kExitUsage;
    return passed ? 0 : kExitFail;
  }

  if (*classify) {
    sc_classification* result = nullptr;
    const sc_status s = sc_classify(mh.m, &opts, &result);
    if (s != SC_OK) return report_error(s);
    Owned text;
    const sc_status r = sc_classification_render(result, fmt, &text.s);
    const int definite = sc_classification_definite(result);
    sc_classification_free(result);
    if (r != SC_OK) return report_error(r);
    if (!emit(text.s, out_path)) return kExitUsage;
    return definite ? 0 : kExitFail;
  }

  Owned text;
  if (const sc_status s = sc_tensor_dump(mh.m, tensor.c_str(), point.c_str(), fmt, threshold, &text.s); s != SC_OK)
    return report_error(s);
  return emit(text.s, out_path) ? 0 : kExitUsage;
}
