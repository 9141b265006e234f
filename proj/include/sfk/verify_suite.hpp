#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sfk::verify {

enum class Mode { Fast, Full };

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 12;

std::string_view criterion_title(int id);

/// Runs acceptance criterion `id` (1-based). Fast mode shrinks the random
/// samples; tolerances are the same in both modes.
CheckResult run_criterion(int id, Mode mode);

/// Module-level invariants that are not acceptance criteria.
std::vector<CheckResult> run_invariants(Mode mode);

/// All criteria followed by all invariants.
std::vector<CheckResult> run_all(Mode mode);

/// "PASS  <name>  <detail> (1.23 s)"
std::string format_result(const CheckResult& r);

}  // namespace sfk::verify
