#include "ewild/report.hpp"

#include <cmath>
#include <sstream>

namespace ewild {

CheckEntry& ReportSection::require(const std::string& check, double value, double tol,
                                   const std::string& note) {
  CheckEntry e;
  e.name = check;
  e.value = value;
  e.tol = tol;
  e.pass = std::isfinite(value) && value <= tol;
  e.note = note;
  checks.push_back(std::move(e));
  return checks.back();
}

bool ReportSection::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

ReportSection& Report::section(const std::string& name) {
  for (auto& s : sections)
    if (s.name == name) return s;
  sections.push_back(ReportSection{name, {}, {}});
  return sections.back();
}

bool Report::all_pass() const {
  for (const auto& s : sections)
    if (!s.all_pass()) return false;
  return true;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["pass"] = all_pass();
  j["sections"] = nlohmann::json::array();
  for (const auto& s : sections) {
    nlohmann::json js;
    js["name"] = s.name;
    js["pass"] = s.all_pass();
    js["checks"] = nlohmann::json::array();
    for (const auto& c : s.checks) {
      js["checks"].push_back({{"name", c.name},
                              {"value", c.value},
                              {"tol", c.tol},
                              {"pass", c.pass},
                              {"note", c.note}});
    }
    js["info"] = nlohmann::json::object();
    for (const auto& [k, v] : s.info) js["info"][k] = v;
    j["sections"].push_back(std::move(js));
  }
  return j;
}

std::string Report::summary() const {
  std::ostringstream os;
  for (const auto& s : sections) {
    os << (s.all_pass() ? "[PASS] " : "[FAIL] ") << s.name << "\n";
    for (const auto& c : s.checks) {
      os << "    " << (c.pass ? "ok   " : "FAIL ") << c.name << " = " << c.value
         << " (tol " << c.tol << ")";
      if (!c.note.empty()) os << "  # " << c.note;
      os << "\n";
    }
    for (const auto& [k, v] : s.info) os << "    info " << k << " = " << v << "\n";
  }
  os << (all_pass() ? "ALL CHECKS PASSED" : "CHECK FAILURES PRESENT") << "\n";
  return os.str();
}

}  // namespace ewild
