#pragma once

#include <optional>
#include <string>
#include <vector>

namespace bsml::checks {

struct PropertyReport {
  std::string property;
  long long cases = 0;
  std::optional<std::string> counterexample;

  bool ok() const { return !counterexample.has_value(); }
};

struct SuiteResult {
  std::string suite;
  std::vector<PropertyReport> properties;

  bool ok() const {
    for (const auto& p : properties) {
      if (!p.ok()) return false;
    }
    return true;
  }

  long long total_cases() const {
    long long n = 0;
    for (const auto& p : properties) n += p.cases;
    return n;
  }
};

}  // namespace bsml::checks
