#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace quasiform {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string detail;  ///< first failure, if any
  bool passed() const { return failures == 0; }
};

struct SelfTestReport {
  std::vector<SuiteResult> suites;
  bool passed() const;
};

/// Exact property suites over seeded random data; fast enough for every build.
SelfTestReport run_selftest(std::uint64_t seed = 0);

nlohmann::json to_json(const SelfTestReport& r);

}  // namespace quasiform
