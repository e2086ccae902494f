// Runs the acceptance battery and prints one line per criterion.

#include <cstdio>

#include "battery.hpp"

int main() {
  const auto result = arena::acceptance::run_full_battery();
  bool ok = true;
  for (const auto& c : result.criteria) {
    const bool in_budget = c.seconds <= c.budget_seconds;
    const bool pass = c.pass && in_budget;
    ok = ok && pass;
    std::printf("[%s] criterion %d %s: %s (%.2fs of %.0fs)%s\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), c.detail.c_str(), c.seconds, c.budget_seconds,
                in_budget ? "" : " over budget");
  }
  std::printf("%s\n", ok ? "all criteria pass" : "acceptance FAILED");
  return ok ? 0 : 1;
}
