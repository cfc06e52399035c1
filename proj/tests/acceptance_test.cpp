#include <cstdlib>
#include <iostream>

#include "entrolab/acceptance.hpp"

// One line per acceptance criterion; exits non-zero if any criterion fails.
int main(int argc, char** argv) {
  entrolab::AcceptanceOptions options;
  if (argc > 1) options.workdir = argv[1];
  const auto run = entrolab::run_acceptance(options, [](const entrolab::CriterionResult& r) {
    std::cout << entrolab::format_result(r) << std::endl;
  });
  std::size_t passed = 0;
  for (const auto& c : run.criteria) passed += c.passed ? 1 : 0;
  std::cout << passed << "/" << run.criteria.size() << " criteria passed" << std::endl;
  return run.all_passed() ? EXIT_SUCCESS : EXIT_FAILURE;
}
