#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "detflow/cli/report.hpp"

namespace detflow {

struct SuiteOptions {
  std::vector<int> ns = {3};
  std::uint64_t seed = 42;
  unsigned jobs = 0;  // 0: hardware concurrency
};

/// Known suites: algebra, kz, gz, flows, all. Throws Error otherwise.
VerificationReport run_suite(const std::string& suite, const SuiteOptions& options);

using CheckTask = std::function<CheckResult()>;

/// Runs tasks on at most `jobs` threads; results keep task order. A task
/// that throws becomes a FAIL carrying the message.
std::vector<CheckResult> run_pool(const std::vector<std::pair<std::string, CheckTask>>& tasks, unsigned jobs);

}  // namespace detflow
