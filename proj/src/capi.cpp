#include "bisheaf/bisheaf.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

#include "bisheaf/pipeline.hpp"

struct bisheaf_pipeline {
  bisheaf::PipelineConfig config;
  std::optional<bisheaf::Report> report;
};

namespace {

thread_local std::string last_error;

bisheaf_status fail(bisheaf_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

bisheaf_status status_of(bisheaf::ErrorKind k) {
  switch (k) {
    case bisheaf::ErrorKind::InvalidConfig:
      return BISHEAF_ERR_INVALID_CONFIG;
    case bisheaf::ErrorKind::ContractViolation:
      return BISHEAF_ERR_CONTRACT;
    case bisheaf::ErrorKind::DiagnosticFailure:
      return BISHEAF_ERR_DIAGNOSTIC;
  }
  return BISHEAF_ERR_INTERNAL;
}

template <class F>
bisheaf_status guarded(F&& f) {
  try {
    bisheaf_status s = f();
    if (s == BISHEAF_OK) last_error.clear();
    return s;
  } catch (const bisheaf::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(BISHEAF_ERR_INVALID_CONFIG, std::string("json: ") + e.what());
  } catch (const std::exception& e) {
    return fail(BISHEAF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BISHEAF_ERR_INTERNAL, "unknown error");
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bisheaf::ordered_json parse(const char* text) {
  try {
    return bisheaf::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bisheaf::invalid_config(std::string("malformed JSON: ") + e.what());
  }
}

std::vector<bisheaf::Level> parse_levels(const std::string& csv) {
  std::vector<bisheaf::Level> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t end = csv.find(',', start);
    if (end == std::string::npos) end = csv.size();
    std::string tag = csv.substr(start, end - start);
    tag.erase(0, tag.find_first_not_of(" \t"));
    tag.erase(tag.find_last_not_of(" \t") + 1);
    if (!tag.empty()) out.push_back(bisheaf::parse_level(tag));
    start = end + 1;
  }
  return out;
}

const bisheaf::Report& report_of(const bisheaf_pipeline* p) {
  if (!p->report) bisheaf::contract_violation("pipeline has not been run");
  return *p->report;
}

}  // namespace

extern "C" {

const char* bisheaf_version(void) { return "1.0.0"; }

const char* bisheaf_last_error(void) { return last_error.c_str(); }

void bisheaf_string_free(char* s) { std::free(s); }

bisheaf_status bisheaf_tower_describe(const char* tower_json, char** out_json) {
  if (!tower_json || !out_json) return fail(BISHEAF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto cfg = bisheaf::tower_config_from_json(parse(tower_json));
    *out_json = dup(bisheaf::to_json_text(bisheaf::describe_tower(bisheaf::build_tower(cfg))));
    return BISHEAF_OK;
  });
}

bisheaf_status bisheaf_classify(const char* germ_json, char** out_json) {
  if (!germ_json || !out_json) return fail(BISHEAF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    bisheaf::Germ g = bisheaf::germ_from_json(parse(germ_json));
    bisheaf::ordered_json j;
    j["germ"] = g.to_string();
    j["class"] = bisheaf::to_json(bisheaf::classify_germ(g));
    j["hessian_rank"] = bisheaf::hessian_rank(g);
    *out_json = dup(j.dump());
    return BISHEAF_OK;
  });
}

bisheaf_status bisheaf_unfold(const char* class_name, char** out_json) {
  if (!class_name || !out_json) return fail(BISHEAF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto name = bisheaf::parse_singularity(class_name);
    if (!bisheaf::is_catalogue(name)) bisheaf::invalid_config(std::string(class_name) + " has no versal unfolding");
    auto cls = bisheaf::catalogue_class(name);
    bisheaf::ordered_json j;
    j["class"] = bisheaf::to_json(cls);
    j["unfolding"] = bisheaf::to_json(bisheaf::versal_unfold(cls));
    *out_json = dup(bisheaf::to_json_text(j));
    return BISHEAF_OK;
  });
}

bisheaf_status bisheaf_expand(const char* levels, char** out_json) {
  if (!levels || !out_json) return fail(BISHEAF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out_json = dup(bisheaf::to_json_text(bisheaf::emit_expansion(parse_levels(levels))));
    return BISHEAF_OK;
  });
}

bisheaf_status bisheaf_samples(const char* semimodule_json, int n, double x0, double x1, char** out_csv) {
  if (!semimodule_json || !out_csv) return fail(BISHEAF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto esm = bisheaf::semimodule_from_json(parse(semimodule_json));
    *out_csv = dup(bisheaf::emit_samples(esm, n, x0, x1));
    return BISHEAF_OK;
  });
}

bisheaf_status bisheaf_pipeline_create(const char* config_json, bisheaf_pipeline** out) {
  if (!config_json || !out) return fail(BISHEAF_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto cfg = bisheaf::pipeline_config_from_json(parse(config_json));
    *out = new bisheaf_pipeline{std::move(cfg), std::nullopt};
    return BISHEAF_OK;
  });
}

bisheaf_status bisheaf_pipeline_run(bisheaf_pipeline* p) {
  if (!p) return fail(BISHEAF_ERR_ARGUMENT, "null pipeline");
  return guarded([&] {
    p->report = bisheaf::run_pipeline(p->config);
    if (!p->report->passed()) {
      std::string failed;
      for (const auto& d : p->report->diagnostics)
        if (!d.passed) failed += (failed.empty() ? "" : ", ") + d.name;
      return fail(BISHEAF_ERR_DIAGNOSTIC, "diagnostics failed: " + failed);
    }
    return BISHEAF_OK;
  });
}

bisheaf_status bisheaf_pipeline_report(const bisheaf_pipeline* p, char** out_json) {
  if (!p || !out_json) return fail(BISHEAF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out_json = dup(bisheaf::to_json_text(bisheaf::to_json(report_of(p))));
    return BISHEAF_OK;
  });
}

bisheaf_status bisheaf_pipeline_levels(const bisheaf_pipeline* p, char** out_json) {
  if (!p || !out_json) return fail(BISHEAF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out_json = dup(bisheaf::to_json_text(bisheaf::levels_json(report_of(p))));
    return BISHEAF_OK;
  });
}

bisheaf_status bisheaf_pipeline_summary(const bisheaf_pipeline* p, char** out_text) {
  if (!p || !out_text) return fail(BISHEAF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out_text = dup(bisheaf::summary_text(report_of(p)));
    return BISHEAF_OK;
  });
}

size_t bisheaf_pipeline_level_count(const bisheaf_pipeline* p) {
  return p && p->report ? p->report->stack.levels.size() : 0;
}

bisheaf_status bisheaf_pipeline_semimodule(const bisheaf_pipeline* p, const char* level, const char* part,
                                           const char* side, char** out_json) {
  if (!p || !level || !part || !side || !out_json) return fail(BISHEAF_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const auto& r = report_of(p);
    bisheaf::Level want = bisheaf::parse_level(level);
    std::string pt(part), sd(side);
    if (pt != "reduced" && pt != "orthogonal") bisheaf::invalid_config("part must be reduced or orthogonal");
    if (sd != "Left" && sd != "Right") bisheaf::invalid_config("side must be Left or Right");
    for (const auto& rec : r.correspondence.levels) {
      if (rec.label != want) continue;
      const auto& pair = pt == "reduced" ? rec.cusp_side.reduced : rec.cusp_side.orthogonal;
      if (!pair) bisheaf::contract_violation("level " + std::string(level) + " has no " + pt + " semimodule");
      *out_json = dup(bisheaf::to_json_text(bisheaf::to_json(sd == "Left" ? pair->left : pair->right)));
      return BISHEAF_OK;
    }
    bisheaf::contract_violation("report has no level " + std::string(level));
  });
}

const char* bisheaf_pipeline_output_path(const bisheaf_pipeline* p) {
  return p ? p->config.output_path.c_str() : "";
}

void bisheaf_pipeline_destroy(bisheaf_pipeline* p) { delete p; }

}  // extern "C"
