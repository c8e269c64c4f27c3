#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rdl {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured values against their required bounds
  double seconds = 0.0;
};

struct AcceptanceConfig {
  std::uint64_t budget = 20000000;  // quasi-MC points per integral
  std::uint64_t seed = 1;
  int threads = 1;
  std::string fixtures_path;  // golden-fixtures JSON; empty fails the golden checks
};

// Runs verification criteria 1..8 in order (9, process determinism, is driven
// by the callers that own process spawning). Never throws for a failed bound;
// infrastructure errors are caught into a failing result.
std::vector<CriterionResult> run_criteria(const AcceptanceConfig& cfg);

bool all_pass(const std::vector<CriterionResult>& results);

// "ok  3 integral-table  total=0.9641 ..." one line per criterion.
std::string format_table(const std::vector<CriterionResult>& results);

}  // namespace rdl
