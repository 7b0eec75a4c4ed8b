#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace adsfuse::selftest {

struct Config {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  // Multiplies every suite's case count (at least one case each).
  double scale = 1.0;
  // Turns off the tableau's x/¬x clash detection.
  bool inject_fault = false;
  unsigned oracle_bound = 5;
};

struct Check {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> samples;  // first few failure details

  bool passed() const { return failures == 0 && cases > 0; }
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;  // order of first appearance
  std::map<std::string, std::uint64_t> counters;

  bool passed() const;
  Check& check(const std::string& name);
  const Check* find(const std::string& name) const;
  void record(const std::string& check, bool ok, const std::string& detail = {});
};

const std::vector<std::string>& suite_names();

// Case i of every suite draws from an RNG seeded by (seed, suite, i), so the
// report does not depend on `jobs`. Throws Precondition for unknown names.
SuiteReport run_suite(std::string_view name, const Config& cfg);

}  // namespace adsfuse::selftest
