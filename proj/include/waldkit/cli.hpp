#pragma once

#include <string>
#include <vector>

#include "waldkit/common.hpp"

namespace waldkit {

inline constexpr const char* kReportSchema = "waldkit-report/1";
inline constexpr const char* kVersion = "0.1.0";

struct SuiteConfig {
  std::string instance = "pointed_sets";
  int size = 2;
  int n_max = 2, m_max = 1, k_max = 2;
  int trunc = 3;
  std::string formulation = "both";  // modern | classical | both
  std::size_t grid_budget = 200'000;
  std::size_t map_budget = 5'000'000;
  std::string out;

  json to_json() const;
};

// Flat JSON document with the SuiteConfig keys. Throws ConfigError naming the
// file and the offending key or parse position.
SuiteConfig load_config(const std::string& path);
SuiteConfig config_from_json(const json& j, const std::string& where);
// Throws ConfigError on bad bounds or an unknown instance or formulation.
void validate_config(const SuiteConfig& c);

const std::vector<std::string>& suite_names();  // axioms sdot additivity qcat-compare k0

struct SuiteResult {
  json report;
  int exit_code = 0;  // 0 pass, 1 check failure, 3 budget overflow
};
// suite is one of suite_names() or "all".
SuiteResult run_suite(const SuiteConfig& config, const std::string& suite);

std::string summarize(const json& report);

}  // namespace waldkit
