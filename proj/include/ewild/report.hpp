#pragma once

#include <string>
#include <vector>

#include "vendor_json.hpp"

namespace ewild {

/// One verified quantity: a named residual with the tolerance it was held to.
struct CheckEntry {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string note;
};

/// Named group of checks (one per pipeline stage).
struct ReportSection {
  std::string name;
  std::vector<CheckEntry> checks;
  std::vector<std::pair<std::string, double>> info;  // reported, not gated

  CheckEntry& require(const std::string& check, double value, double tol,
                      const std::string& note = "");
  void record(const std::string& key, double value) { info.emplace_back(key, value); }
  bool all_pass() const;
};

struct Report {
  std::vector<ReportSection> sections;

  ReportSection& section(const std::string& name);
  bool all_pass() const;
  nlohmann::json to_json() const;
  std::string summary() const;
};

}  // namespace ewild
