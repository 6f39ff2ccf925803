#include <doctest.h>

#include "magtrans/capi.h"
#include "magtrans/suites.hpp"

#include <cstring>
#include <fstream>
#include <string>

namespace {

std::string write_cfg(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/" + name;
  magtrans::atomic_write(path, body);
  return path;
}

}  // namespace

TEST_CASE("c api round trip") {
  const auto path = write_cfg("mt_capi_ok.json",
                              R"({"n": 3, "tensor": "epsilon", "samples": 40})");
  mt_config* cfg = nullptr;
  REQUIRE(mt_config_load(path.c_str(), &cfg) == MT_OK);
  REQUIRE(cfg != nullptr);
  CHECK(mt_config_set_seed(cfg, 5) == MT_OK);

  mt_report* rep = nullptr;
  CHECK(mt_run_suite(cfg, "cocycle", &rep) == MT_OK);
  REQUIRE(rep != nullptr);
  CHECK(mt_report_passed(rep) == 1);
  const char* text = mt_report_json(rep);
  REQUIRE(text != nullptr);
  CHECK(std::strstr(text, "\"suite\": \"cocycle\"") != nullptr);
  CHECK(std::strstr(text, "\"status\": \"pass\"") != nullptr);
  mt_report_free(rep);
  mt_config_free(cfg);
}

TEST_CASE("c api surfaces config errors") {
  mt_config* cfg = nullptr;
  CHECK(mt_config_load("/tmp/mt_capi_missing.json", &cfg) == MT_CONFIG_ERROR);
  CHECK(cfg == nullptr);
  CHECK(std::strlen(mt_last_error()) > 0);

  const auto bad = write_cfg("mt_capi_bad.json", R"({"n": 0})");
  CHECK(mt_config_load(bad.c_str(), &cfg) == MT_CONFIG_ERROR);

  const auto ok = write_cfg("mt_capi_ok2.json", R"({"n": 3})");
  REQUIRE(mt_config_load(ok.c_str(), &cfg) == MT_OK);
  mt_report* rep = nullptr;
  CHECK(mt_run_suite(cfg, "no-such-suite", &rep) == MT_CONFIG_ERROR);
  CHECK(rep == nullptr);
  mt_config_free(cfg);
}

TEST_CASE("c api reports check failures with a report attached") {
  const auto path = write_cfg(
      "mt_capi_perturb.json",
      R"({"n": 3, "tensor": "epsilon", "samples": 30, "perturb": true})");
  mt_config* cfg = nullptr;
  REQUIRE(mt_config_load(path.c_str(), &cfg) == MT_OK);
  mt_report* rep = nullptr;
  CHECK(mt_run_suite(cfg, "cocycle", &rep) == MT_CHECK_FAILED);
  REQUIRE(rep != nullptr);
  CHECK(mt_report_passed(rep) == 0);
  CHECK(std::strstr(mt_report_json(rep), "\"status\": \"fail\"") != nullptr);
  mt_report_free(rep);
  mt_config_free(cfg);
}

TEST_CASE("c api writes decay tables") {
  const auto path = write_cfg("mt_capi_decay.json",
                              R"({"n": 3, "cutoffs": [32, 64, 128]})");
  mt_config* cfg = nullptr;
  REQUIRE(mt_config_load(path.c_str(), &cfg) == MT_OK);
  CHECK(mt_emit_decay_table(cfg, "/tmp/mt_capi_decay.csv") == MT_OK);
  std::ifstream in("/tmp/mt_capi_decay.csv");
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "gamma,partial_hs_sum,increment,ray_distance,abs_element");
  mt_config_free(cfg);

  // null handles are runtime errors, not crashes
  CHECK(mt_run_suite(nullptr, "cocycle", nullptr) == MT_RUNTIME_ERROR);
  CHECK(mt_emit_decay_table(nullptr, "/tmp/x.csv") == MT_RUNTIME_ERROR);
}
