#include <iostream>

#include "cmtop/acceptance.hpp"

int main() {
  cmtop::AcceptanceOptions opts;
  opts.on_result = [](const cmtop::CriterionResult& r) { std::cout << cmtop::format_result(r) << std::endl; };
  const auto results = cmtop::run_acceptance(opts);
  const bool ok = cmtop::acceptance_ok(results);
  std::cout << (ok ? "acceptance: all criteria met" : "acceptance: FAILED") << std::endl;
  return ok ? 0 : 1;
}
