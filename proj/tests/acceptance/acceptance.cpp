// Runs the full acceptance suite; one PASS/FAIL line per criterion.
#include "commfam/cli/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>

int main() {
  commfam::cli::RunOptions opt;
  if (const char* jobs = std::getenv("COMMFAM_JOBS")) opt.jobs = std::max(1, std::atoi(jobs));
  const auto results = commfam::cli::verify_all(opt, std::cout);
  const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  std::cout << (ok ? "all criteria passed" : "some criteria failed") << "\n";
  return ok ? 0 : 1;
}
