#pragma once

// Configuration, suite orchestration and machine-readable reporting. The CLI
// and the C API both sit on top of this layer.

#include "magtrans/scalar.hpp"
#include "magtrans/tensors.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace magtrans {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Backend { RationalExact, FloatTol };

struct SuiteConfig {
  int n = 3;
  AntisymTensor3<Rational> tensor = AntisymTensor3<Rational>::epsilon();
  TwoForm<Rational> omega = TwoForm<Rational>(3);
  int window_low = -8;
  int window_high = 8;
  int window_margin = 2;
  std::vector<long> cutoffs = {64, 128, 256, 512, 1024, 2048, 4096};
  int samples = 500;
  std::uint64_t seed = 1;
  Backend backend = Backend::RationalExact;
  double tolerance = 1e-9;
  bool perturb = false;           // negative-control switch
  std::string loop = "triangle";  // decay-table path: triangle | open | zero
  double loop_v = 0.5;            // open-path slope
  std::string out_dir;
};

SuiteConfig parse_config(const nlohmann::json& j);
SuiteConfig validate_config(const std::string& path);

struct CheckRecord {
  std::string name;
  bool passed = false;
  std::string measured;
  std::string expected;
  std::string kind;  // exact | sampled | fitted
  double runtime_s = 0.0;
};

struct Report {
  std::string suite;
  std::vector<CheckRecord> records;
  double runtime_s = 0.0;

  bool passed() const;
  nlohmann::ordered_json to_json() const;
};

extern const std::vector<std::string> kSuiteNames;  // excludes "all"

Report run_suite(const SuiteConfig& config, const std::string& suite);

void emit_decay_table(const SuiteConfig& config, const std::string& path);

// temp-file-plus-rename write, so readers never observe partial output
void atomic_write(const std::string& path, const std::string& contents);

}  // namespace magtrans
