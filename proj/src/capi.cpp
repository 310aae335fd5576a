// Copyright 2026 The solcheck Authors. Licensed under the Apache License, Version 2.0.

#include "solcheck/solcheck.h"

#include <cstdlib>
#include <cstring>
#include <json.hpp>
#include <sstream>
#include <string>

#include "solcheck/curvature.hpp"
#include "solcheck/error.hpp"
#include "solcheck/inspect.hpp"
#include "solcheck/models.hpp"
#include "solcheck/verify.hpp"

struct sc_model {
  solcheck::ModelSpec spec;
};

struct sc_report {
  std::vector<solcheck::CheckReport> rows;
};

struct sc_classification {
  solcheck::ClassificationResult result;
};

namespace {

thread_local std::string last_error;

sc_status map_code(solcheck::ErrorCode c) { return static_cast<sc_status>(static_cast<int>(c) + 1); }

sc_status fail(sc_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

template <class F>
sc_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return SC_OK;
  } catch (const solcheck::Error& e) {
    return fail(map_code(e.code()), std::string(solcheck::error_code_name(e.code())) + ": " + e.what());
  } catch (const std::bad_alloc&) {
    return fail(SC_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SC_E_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bool bad_format(sc_format f) { return f != SC_FORMAT_TEXT && f != SC_FORMAT_JSON; }

solcheck::SamplePlan plan_for(const solcheck::ModelSpec& m, const sc_run_options& o) {
  return solcheck::sample_points(m, o.points, o.seed);
}

sc_status check_options(const sc_run_options* o) {
  if (!o) return fail(SC_E_INVALID_ARGUMENT, "options must not be null");
  if (o->points < 1) return fail(SC_E_INVALID_ARGUMENT, "points must be >= 1");
  if (!(o->tolerance > 0.0)) return fail(SC_E_INVALID_ARGUMENT, "tolerance must be > 0");
  return SC_OK;
}

}  // namespace

extern "C" {

const char* sc_version(void) { return "1.0.0"; }

const char* sc_status_name(sc_status status) {
  switch (status) {
    case SC_OK: return "OK";
    case SC_E_INVALID_ARGUMENT: return "InvalidArgument";
    case SC_E_INTERNAL: return "Internal";
    default: break;
  }
  const int c = static_cast<int>(status) - 1;
  if (c >= 0 && c <= static_cast<int>(solcheck::ErrorCode::IoError))
    return solcheck::error_code_name(static_cast<solcheck::ErrorCode>(c));
  return "Unknown";
}

const char* sc_last_error(void) { return last_error.c_str(); }

void sc_default_options(sc_run_options* out) {
  if (!out) return;
  out->points = 100;
  out->seed = 0;
  out->tolerance = solcheck::kDefaultTolerance;
  out->threads = 0;
}

sc_status sc_self_test(void) {
  last_error.clear();
  const std::string msg = solcheck::curvature_self_test();
  return msg.empty() ? SC_OK : fail(SC_E_INTERNAL, msg);
}

sc_status sc_model_builtin(const char* name, sc_model** out) {
  if (!name || !out) return fail(SC_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new sc_model{solcheck::builtin_model(name)}; });
}

sc_status sc_model_resolve(const char* selector, sc_model** out) {
  if (!selector || !out) return fail(SC_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new sc_model{solcheck::resolve_model(selector)}; });
}

sc_status sc_model_parse(const char* json_text, sc_model** out) {
  if (!json_text || !out) return fail(SC_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new sc_model{solcheck::parse_model(json_text)}; });
}

void sc_model_free(sc_model* model) { delete model; }

const char* sc_model_name(const sc_model* model) { return model ? model->spec.name.c_str() : ""; }

int sc_model_dimension(const sc_model* model) { return model ? model->spec.dimension : 0; }

int sc_model_has_potential(const sc_model* model) { return model && model->spec.potential ? 1 : 0; }

sc_status sc_model_to_json(const sc_model* model, char** out) {
  if (!model || !out) return fail(SC_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = dup_string(solcheck::model_to_json(model->spec)); });
}

sc_status sc_list_models(sc_format format, char** out) {
  if (!out || bad_format(format)) return fail(SC_E_INVALID_ARGUMENT, "bad argument");
  return guarded([&] {
    const auto& models = solcheck::builtin_models();
    if (format == SC_FORMAT_JSON) {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& e : models) {
        nlohmann::ordered_json j;
        j["name"] = e.spec.name;
        j["dimension"] = e.spec.dimension;
        j["coords"] = e.spec.coords;
        j["shrinker"] = e.shrinker;
        j["lambda"] = e.spec.lambda ? nlohmann::ordered_json(*e.spec.lambda) : nullptr;
        j["summary"] = e.summary;
        arr.push_back(std::move(j));
      }
      *out = dup_string(arr.dump(2) + "\n");
      return;
    }
    std::size_t w = 4;
    for (const auto& e : models) w = std::max(w, e.spec.name.size());
    std::ostringstream os;
    for (const auto& e : models) {
      std::string name = e.spec.name;
      name.resize(w, ' ');
      os << name << "  n=" << e.spec.dimension << "  " << (e.shrinker ? "shrinker" : "metric  ") << "  "
         << e.summary << "\n";
    }
    *out = dup_string(os.str());
  });
}

sc_status sc_list_checks(const char* tier, sc_format format, char** out) {
  if (!out || bad_format(format)) return fail(SC_E_INVALID_ARGUMENT, "bad argument");
  return guarded([&] {
    const bool all = !tier || std::string(tier) == "all";
    const solcheck::Tier t = all ? solcheck::Tier::A : solcheck::parse_tier(tier);
    std::vector<const solcheck::CheckSpec*> sel;
    for (const auto& c : solcheck::list_checks())
      if (all || c.tier == t) sel.push_back(&c);
    if (format == SC_FORMAT_JSON) {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto* c : sel) {
        nlohmann::ordered_json j;
        j["id"] = c->id;
        j["tier"] = std::string(1, solcheck::tier_letter(c->tier));
        j["description"] = c->description;
        j["requires_potential"] = c->requires_potential;
        j["min_dim"] = c->min_dim;
        j["exact_dim"] = c->exact_dim ? nlohmann::ordered_json(c->exact_dim) : nullptr;
        j["metric_order"] = c->metric_order;
        arr.push_back(std::move(j));
      }
      *out = dup_string(arr.dump(2) + "\n");
      return;
    }
    std::size_t w = 2;
    for (const auto* c : sel) w = std::max(w, c->id.size());
    std::ostringstream os;
    for (const auto* c : sel) {
      std::string id = c->id;
      id.resize(w, ' ');
      os << id << "  " << c->description << "\n";
    }
    *out = dup_string(os.str());
  });
}

sc_status sc_verify(const sc_model* model, const char* tier, const char* const* check_ids, size_t n_ids,
                    const sc_run_options* options, sc_report** out) {
  if (!model || !out || (n_ids && !check_ids)) return fail(SC_E_INVALID_ARGUMENT, "null argument");
  if (const sc_status s = check_options(options); s != SC_OK) return s;
  if ((!tier || !*tier) && n_ids == 0) return fail(SC_E_INVALID_ARGUMENT, "select a tier or at least one check");
  return guarded([&] {
    std::vector<std::string> ids;
    if (tier && *tier) {
      const bool all = std::string(tier) == "all";
      const solcheck::Tier t = all ? solcheck::Tier::A : solcheck::parse_tier(tier);
      for (const auto& c : solcheck::list_checks())
        if (all || c.tier == t) ids.push_back(c.id);
    }
    for (size_t i = 0; i < n_ids; ++i) {
      if (!check_ids[i]) throw solcheck::Error(solcheck::ErrorCode::UnknownCheck, "null check id");
      ids.push_back(solcheck::find_check(check_ids[i]).id);
    }
    const auto plan = plan_for(model->spec, *options);
    *out = new sc_report{solcheck::run_checks(ids, model->spec, plan, options->tolerance, options->threads)};
  });
}

size_t sc_report_count(const sc_report* report) { return report ? report->rows.size() : 0; }

sc_status sc_report_row_at(const sc_report* report, size_t index, sc_report_row* out) {
  if (!report || !out) return fail(SC_E_INVALID_ARGUMENT, "null argument");
  if (index >= report->rows.size()) return fail(SC_E_INVALID_ARGUMENT, "row index out of range");
  last_error.clear();
  const auto& r = report->rows[index];
  out->check_id = r.check_id.c_str();
  out->model = r.model.c_str();
  out->status = static_cast<sc_row_status>(static_cast<int>(r.status));
  out->points = r.points;
  out->max_residual = r.max_residual;
  out->mean_residual = r.mean_residual;
  out->pass = r.counts() ? (r.pass ? 1 : 0) : -1;
  out->tolerance = r.tolerance;
  out->message = r.message.c_str();
  return SC_OK;
}

int sc_report_all_passed(const sc_report* report) { return report && solcheck::all_passed(report->rows) ? 1 : 0; }

sc_status sc_report_render(const sc_report* report, sc_format format, char** out) {
  if (!report || !out || bad_format(format)) return fail(SC_E_INVALID_ARGUMENT, "bad argument");
  return guarded([&] {
    *out = dup_string(format == SC_FORMAT_JSON ? solcheck::render_reports_json(report->rows)
                                               : solcheck::render_reports_text(report->rows));
  });
}

void sc_report_free(sc_report* report) { delete report; }

sc_status sc_classify(const sc_model* model, const sc_run_options* options, sc_classification** out) {
  if (!model || !out) return fail(SC_E_INVALID_ARGUMENT, "null argument");
  if (const sc_status s = check_options(options); s != SC_OK) return s;
  return guarded([&] {
    const auto plan = plan_for(model->spec, *options);
    *out = new sc_classification{solcheck::classify_dim4(model->spec, plan, options->tolerance)};
  });
}

const char* sc_classification_verdict(const sc_classification* result) {
  return result ? solcheck::verdict_name(result->result.verdict) : "";
}

int sc_classification_definite(const sc_classification* result) {
  return result && solcheck::verdict_definite(result->result.verdict) ? 1 : 0;
}

double sc_classification_scalar_ratio(const sc_classification* result) {
  return result ? result->result.scalar_ratio : 0.0;
}

sc_status sc_classification_render(const sc_classification* result, sc_format format, char** out) {
  if (!result || !out || bad_format(format)) return fail(SC_E_INVALID_ARGUMENT, "bad argument");
  return guarded([&] {
    *out = dup_string(format == SC_FORMAT_JSON ? solcheck::render_classification_json(result->result)
                                               : solcheck::render_classification_text(result->result));
  });
}

void sc_classification_free(sc_classification* result) { delete result; }

sc_status sc_tensor_dump(const sc_model* model, const char* tensor, const char* point, sc_format format,
                         double threshold, char** out) {
  if (!model || !tensor || !point || !out || bad_format(format)) return fail(SC_E_INVALID_ARGUMENT, "bad argument");
  if (!(threshold >= 0.0)) return fail(SC_E_INVALID_ARGUMENT, "threshold must be >= 0");
  return guarded([&] {
    const solcheck::Point p = solcheck::parse_point(model->spec, point);
    const auto d = solcheck::dump_tensor(model->spec, tensor, p);
    *out = dup_string(format == SC_FORMAT_JSON ? solcheck::render_dump_json(d) : solcheck::render_dump_text(d, threshold));
  });
}

void sc_string_free(char* s) { std::free(s); }

}  // extern "C"
