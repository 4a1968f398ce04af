#pragma once

// The acceptance suite: one named criterion per headline result, each with a
// pinned time limit. Shared by the CLI and the acceptance test binary.

#include <cstdint>
#include <string>
#include <vector>

namespace qcluster {

struct AcceptOptions {
  std::vector<std::string> only;  // criterion ids or keys; empty runs the default gate
  bool extended = false;          // also run the optional criteria
  int jobs = 1;
  std::uint64_t rng_seed = 20240611ULL;
  bool inject_lambda_sign_bug = false;  // negative control: Literal Λ-mutation
  int gr48_samples = 8;
};

struct CriterionResult {
  int id = 0;
  std::string key;
  std::string title;
  bool optional = false;
  bool pass = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;
};

struct CriterionInfo {
  int id;
  const char* key;
  const char* title;
  double limit_seconds;
  bool optional;
};

const std::vector<CriterionInfo>& acceptance_criteria();

/// InvalidParams when `only` names an unknown criterion.
std::vector<CriterionResult> run_acceptance(const AcceptOptions& opts);

/// "PASS  1 mutation  0.01s/1s  detail" lines.
std::string format_table(const std::vector<CriterionResult>& results);
std::string format_json(const std::vector<CriterionResult>& results);

}  // namespace qcluster
