#include <doctest.h>

#include "magtrans/suites.hpp"

#include <fstream>

using namespace magtrans;
using nlohmann::json;

namespace {

json normalized(const Report& rep) {
  auto j = rep.to_json();
  j["runtime_s"] = 0.0;
  for (auto& c : j["checks"]) c["runtime_s"] = 0.0;
  return j;
}

}  // namespace

TEST_CASE("minimal config gets the documented defaults") {
  const auto cfg = parse_config(json::parse(R"({"n": 3, "tensor": "epsilon"})"));
  CHECK(cfg.n == 3);
  CHECK(cfg.tensor(0, 1, 2) == Rational(1));
  CHECK(cfg.window_low == -8);
  CHECK(cfg.window_high == 8);
  CHECK(cfg.samples == 500);
  CHECK(cfg.seed == 1);
  CHECK(cfg.backend == Backend::RationalExact);
  CHECK(cfg.tolerance == 1e-9);
  CHECK(cfg.cutoffs.size() == 7);
  CHECK(cfg.cutoffs.front() == 64);
  CHECK(cfg.cutoffs.back() == 4096);
  CHECK(cfg.loop == "triangle");
}

TEST_CASE("entry lists parse exactly") {
  const auto cfg = parse_config(json::parse(R"({
    "n": 4,
    "tensor": [[0, 1, 2, "1/2"], [1, 2, 3, -2]],
    "omega": [[0, 3, "2/3"]],
    "window": {"low": -6, "high": 6, "margin": 4},
    "cutoffs": [32, 64, 128],
    "samples": 50,
    "seed": 7
  })"));
  CHECK(cfg.n == 4);
  // raw entries are antisymmetrized on load
  CHECK(cfg.tensor(0, 1, 2) == Rational(1, 12));
  CHECK(cfg.tensor(2, 1, 0) == Rational(-1, 12));
  CHECK(cfg.tensor(1, 2, 3) == Rational(-1, 3));
  CHECK(cfg.omega(0, 3) == Rational(2, 3));
  CHECK(cfg.window_margin == 4);
  CHECK(cfg.samples == 50);
  CHECK(cfg.seed == 7);
}

TEST_CASE("config errors carry a usable message") {
  CHECK_THROWS_WITH_AS(parse_config(json::parse(R"({"n": 2, "tensor": "epsilon"})")),
                       "tensor: 'epsilon' requires n = 3", ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config(json::parse(R"({"n": 2, "tensor": [[0, 1, 2, 1]]})")),
      "tensor[0]: index 2 out of range for n = 2", ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config(json::parse(R"({"n": 3, "omega": [[0, 5, 1]]})")),
      "omega[0]: index 5 out of range for n = 3", ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"frobnicate": 1})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"seed": 0})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"cutoffs": [128, 64]})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"window": {"low": 1}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"loop": "square"})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"(["not", "an", "object"])")), ConfigError);
}

TEST_CASE("floats are rejected on the exact backend but allowed on float") {
  const auto bad = R"({"n": 3, "omega": [[0, 1, 0.5]]})";
  CHECK_THROWS_WITH_AS(parse_config(json::parse(bad)),
                       "omega[0]: float value not allowed with the rational "
                       "backend; use an integer or a 'p/q' string",
                       ConfigError);
  const auto cfg = parse_config(
      json::parse(R"({"n": 3, "backend": "float", "omega": [[0, 1, 0.5]]})"));
  CHECK(cfg.backend == Backend::FloatTol);
  CHECK(cfg.omega(0, 1) == Rational(1, 2));
  // rational strings work on both backends
  const auto cfg2 = parse_config(json::parse(R"({"n": 3, "omega": [[0, 1, "1/2"]]})"));
  CHECK(cfg2.omega(0, 1) == Rational(1, 2));
}

TEST_CASE("validate_config reads files and rejects junk") {
  const std::string good = "/tmp/magtrans_cfg_good.json";
  atomic_write(good, R"({"n": 3, "tensor": "epsilon", "samples": 20})");
  CHECK(validate_config(good).samples == 20);

  const std::string bad = "/tmp/magtrans_cfg_bad.json";
  atomic_write(bad, "{not json");
  CHECK_THROWS_AS(validate_config(bad), ConfigError);
  CHECK_THROWS_AS(validate_config("/tmp/magtrans_missing.json"), ConfigError);
}

TEST_CASE("suite runner dispatch") {
  SuiteConfig cfg;
  cfg.samples = 40;
  CHECK_THROWS_AS(run_suite(cfg, "no-such-suite"), ConfigError);
  const auto rep = run_suite(cfg, "cocycle");
  CHECK(rep.suite == "cocycle");
  CHECK(rep.passed());
  CHECK_FALSE(rep.records.empty());
  for (const auto& r : rep.records) {
    CHECK_FALSE(r.name.empty());
    CHECK((r.kind == "exact" || r.kind == "sampled" || r.kind == "fitted"));
  }
  // the negative-control switch must flip the suite to failing
  cfg.perturb = true;
  CHECK_FALSE(run_suite(cfg, "cocycle").passed());
}

TEST_CASE("reports are deterministic for a fixed seed") {
  SuiteConfig cfg;
  cfg.samples = 40;
  cfg.seed = 11;
  const auto a = normalized(run_suite(cfg, "cocycle"));
  const auto b = normalized(run_suite(cfg, "cocycle"));
  CHECK(a.dump() == b.dump());
  cfg.seed = 12;
  CHECK(a["status"] == normalized(run_suite(cfg, "cocycle"))["status"]);
}

TEST_CASE("report files and decay tables are written atomically") {
  SuiteConfig cfg;
  cfg.samples = 30;
  cfg.out_dir = "/tmp/magtrans_out";
  const auto rep = run_suite(cfg, "groupoid");
  CHECK(rep.passed());
  std::ifstream in("/tmp/magtrans_out/groupoid_report.json");
  REQUIRE(in.good());
  json j;
  in >> j;
  CHECK(j["suite"] == "groupoid");
  CHECK(j["status"] == "pass");

  cfg.cutoffs = {32, 64, 128, 256};
  emit_decay_table(cfg, "/tmp/magtrans_out/decay.csv");
  std::ifstream csv("/tmp/magtrans_out/decay.csv");
  REQUIRE(csv.good());
  std::string header;
  std::getline(csv, header);
  CHECK(header == "gamma,partial_hs_sum,increment,ray_distance,abs_element");
  int rows = 0;
  for (std::string line; std::getline(csv, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 4);
}
