#pragma once

#include <string>
#include <vector>

namespace qcluster {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // counterexample or summary; empty when nothing to say
};

struct Report {
  std::vector<CheckResult> checks;

  void add(std::string name, bool pass, std::string detail = {}) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

}  // namespace qcluster
