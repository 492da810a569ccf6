#pragma once

// Self-check suites run by `rho-moments verify`: exact identities, golden
// tables, and Monte Carlo agreement of every exact module.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rho/output.hpp"

namespace rho {

enum class Suite { classical, quantum, sampler, all };

Suite parse_suite(std::string_view name);
std::string suite_name(Suite suite);

struct VerifyOptions {
  std::int64_t samples = 100000;
  std::uint64_t seed = 1;
  double z_limit = 4.0;
  double ks_alpha = 1e-3;
  // Negative control: every class order the suites use is off by one.
  bool perturb_class_order = false;
};

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string metric;  // "z=1.3", "delta=0", "p=0.41", ...
  std::string detail;
};

std::vector<CheckResult> run_suite(Suite suite, const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& checks);

Table check_table(const std::vector<CheckResult>& checks);

std::string render(const std::vector<CheckResult>& checks, Format format);

}  // namespace rho
