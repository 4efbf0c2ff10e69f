#pragma once

// Seeded property suites. Case k of suite S is a pure function of (seed, S, k),
// and the report carries no timings, so equal inputs give identical reports.

#include <cstdint>
#include <string>
#include <vector>

#include "rigidan/serialize.hpp"

namespace rigidan {

struct SelftestConfig {
  ContextPtr ctx;
  std::uint64_t seed = 1;
  int count = 50;  // cases per suite
  std::vector<std::string> only;  // empty: every suite
};

std::vector<std::string> selftest_suites();

// {"seed", "count", "context", "suites": [{name, cases, passed, failed,
// first_failure?: {index, detail, case}}], "ok"}.
json run_selftest(const SelftestConfig& config);

}  // namespace rigidan
