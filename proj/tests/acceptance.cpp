// Acceptance suite: one PASS/FAIL line per criterion.
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "sfk/verify_suite.hpp"

int main(int argc, char** argv) {
  namespace v = sfk::verify;
  CLI::App app{"acceptance criteria"};
  std::vector<int> ids;
  bool fast = false;
  app.add_option("--criterion", ids, "criterion id(s) to run (default: all)")->check(CLI::Range(1, v::kCriterionCount));
  app.add_flag("--fast", fast, "smaller random samples");
  CLI11_PARSE(app, argc, argv);

  if (ids.empty()) {
    for (int id = 1; id <= v::kCriterionCount; ++id) ids.push_back(id);
  }
  int failed = 0;
  for (int id : ids) {
    const v::CheckResult r = v::run_criterion(id, fast ? v::Mode::Fast : v::Mode::Full);
    std::cout << v::format_result(r) << std::endl;
    failed += !r.passed;
  }
  return failed == 0 ? 0 : 1;
}
