#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "detflow/polyalg/json_io.hpp"

namespace detflow {

enum class Status { Pass, Fail, Skip };

std::string to_string(Status s);

struct CheckResult {
  std::string name;
  Status status = Status::Pass;
  double measured = 0;
  double tolerance = 0;
  std::string detail;
  double wall_seconds = 0;  // reported only in the timestamp block
};

CheckResult check(std::string name, bool ok, double measured, double tolerance, std::string detail = {});

/// Everything except `timestamp` is a pure function of the run config.
struct VerificationReport {
  std::string suite;
  std::vector<int> ns;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  double wall_seconds = 0;

  bool all_passed() const;
  json to_json(bool with_timestamp = true) const;
  std::string table() const;
};

}  // namespace detflow
