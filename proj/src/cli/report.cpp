#include "detflow/cli/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace detflow {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "PASS";
    case Status::Fail:
      return "FAIL";
    case Status::Skip:
      return "SKIP";
  }
  return "?";
}

CheckResult check(std::string name, bool ok, double measured, double tolerance, std::string detail) {
  return {std::move(name), ok ? Status::Pass : Status::Fail, measured, tolerance, std::move(detail), 0};
}

bool VerificationReport::all_passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == Status::Fail; });
}

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

json VerificationReport::to_json(bool with_timestamp) const {
  json checks_json = json::array();
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& c : checks) {
    checks_json.push_back({{"name", c.name},
                           {"status", to_string(c.status)},
                           {"measured", c.measured},
                           {"tolerance", c.tolerance},
                           {"detail", c.detail}});
    (c.status == Status::Pass ? passed : c.status == Status::Fail ? failed : skipped)++;
  }
  json out = {{"suite", suite},
              {"n", ns},
              {"seed", seed},
              {"summary", {{"pass", passed}, {"fail", failed}, {"skip", skipped}}},
              {"checks", std::move(checks_json)}};
  if (with_timestamp) {
    json walls = json::object();
    for (const auto& c : checks) walls[c.name] = c.wall_seconds;
    out["timestamp"] = {{"utc", utc_now()}, {"wall_seconds", wall_seconds}, {"check_wall_seconds", walls}};
  }
  return out;
}

std::string VerificationReport::table() const {
  std::size_t width = 5;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  std::ostringstream out;
  char line[64];
  for (const auto& c : checks) {
    out << to_string(c.status) << "  " << c.name << std::string(width - c.name.size() + 2, ' ');
    std::snprintf(line, sizeof line, "%11.3e  tol %9.2e  %7.3fs", c.measured, c.tolerance, c.wall_seconds);
    out << line;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
  }
  const auto failed = std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == Status::Fail; });
  out << suite << ": " << checks.size() - failed << "/" << checks.size() << " checks passed\n";
  return out.str();
}

}  // namespace detflow
