// Acceptance gate: runs every verification criterion at full tolerance and
// prints one pass/fail line per criterion. Exit 0 only if all pass.
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "rdl/acceptance.hpp"

namespace {

std::string capture(const std::string& cmd, int* exit_code) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    *exit_code = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  *exit_code = status;
  return out;
}

// Criterion 9: two fresh CLI processes with the same seed produce identical
// report bytes.
rdl::CriterionResult run_process_determinism() {
  rdl::CriterionResult r;
  r.id = 9;
  r.name = "process-determinism";
  auto start = std::chrono::steady_clock::now();

  const char* cli = std::getenv("RDL_CLI");
  if (!cli || !*cli) {
    r.pass = false;
    r.detail = "RDL_CLI not set; cannot spawn the command-line tool";
    return r;
  }
  std::string cmd = std::string(cli) + " verify-all --seed 1 --reproducible 2>&1";
  int code1 = 0, code2 = 0;
  std::string out1 = capture(cmd, &code1);
  std::string out2 = capture(cmd, &code2);
  bool nonempty = !out1.empty() && !out2.empty();
  bool spawned = code1 != -1 && code2 != -1;
  r.pass = spawned && nonempty && out1 == out2;
  char detail[256];
  std::snprintf(detail, sizeof(detail), "runs=%zu/%zu bytes, identical=%s",
                out1.size(), out2.size(), out1 == out2 ? "yes" : "no");
  r.detail = detail;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

int main() {
  rdl::AcceptanceConfig cfg;
  const char* fixtures = std::getenv("RDL_FIXTURES");
  if (fixtures && *fixtures) cfg.fixtures_path = fixtures;

  std::vector<rdl::CriterionResult> results = rdl::run_criteria(cfg);
  results.push_back(run_process_determinism());

  std::fputs(rdl::format_table(results).c_str(), stdout);
  bool ok = rdl::all_pass(results);
  std::printf("RESULT: %s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}
