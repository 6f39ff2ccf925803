#include "magtrans/capi.h"

#include "magtrans/suites.hpp"

#include <string>

struct mt_config {
  magtrans::SuiteConfig cfg;
};

struct mt_report {
  magtrans::Report rep;
  std::string json_text;
};

namespace {

thread_local std::string g_last_error;

mt_status fail(mt_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

}  // namespace

extern "C" {

mt_status mt_config_load(const char* path, mt_config** out) {
  if (!path || !out) return fail(MT_RUNTIME_ERROR, "null argument");
  *out = nullptr;
  try {
    auto* h = new mt_config{magtrans::validate_config(path)};
    *out = h;
    return MT_OK;
  } catch (const magtrans::ConfigError& e) {
    return fail(MT_CONFIG_ERROR, e.what());
  } catch (const std::exception& e) {
    return fail(MT_RUNTIME_ERROR, e.what());
  }
}

mt_status mt_config_set_seed(mt_config* cfg, unsigned long long seed) {
  if (!cfg) return fail(MT_RUNTIME_ERROR, "null config");
  if (seed == 0) return fail(MT_CONFIG_ERROR, "seed: positive integer required");
  cfg->cfg.seed = seed;
  return MT_OK;
}

mt_status mt_config_set_out_dir(mt_config* cfg, const char* dir) {
  if (!cfg || !dir) return fail(MT_RUNTIME_ERROR, "null argument");
  cfg->cfg.out_dir = dir;
  return MT_OK;
}

void mt_config_free(mt_config* cfg) { delete cfg; }

mt_status mt_run_suite(const mt_config* cfg, const char* suite, mt_report** out) {
  if (!cfg || !suite || !out) return fail(MT_RUNTIME_ERROR, "null argument");
  *out = nullptr;
  try {
    auto rep = magtrans::run_suite(cfg->cfg, suite);
    auto text = rep.to_json().dump(2) + "\n";
    *out = new mt_report{std::move(rep), std::move(text)};
    if (!(*out)->rep.passed())
      return fail(MT_CHECK_FAILED, "suite '" + std::string(suite) + "' has failing checks");
    return MT_OK;
  } catch (const magtrans::ConfigError& e) {
    return fail(MT_CONFIG_ERROR, e.what());
  } catch (const std::exception& e) {
    return fail(MT_RUNTIME_ERROR, e.what());
  }
}

int mt_report_passed(const mt_report* rep) {
  return rep && rep->rep.passed() ? 1 : 0;
}

const char* mt_report_json(const mt_report* rep) {
  return rep ? rep->json_text.c_str() : nullptr;
}

void mt_report_free(mt_report* rep) { delete rep; }

mt_status mt_emit_decay_table(const mt_config* cfg, const char* csv_path) {
  if (!cfg || !csv_path) return fail(MT_RUNTIME_ERROR, "null argument");
  try {
    magtrans::emit_decay_table(cfg->cfg, csv_path);
    return MT_OK;
  } catch (const magtrans::ConfigError& e) {
    return fail(MT_CONFIG_ERROR, e.what());
  } catch (const std::exception& e) {
    return fail(MT_RUNTIME_ERROR, e.what());
  }
}

const char* mt_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
