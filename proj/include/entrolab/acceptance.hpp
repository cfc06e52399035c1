#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "entrolab/experiments.hpp"

namespace entrolab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteMember {
  std::string label;
  Distribution p;
};

// point_mass over every x with |x| <= 6, two_point for n = 4..8 with the
// max-complexity weight, half_uniform for n = 2..8, and m^t at L = 14..20.
std::vector<SuiteMember> distribution_suite(TableCache& tables);

struct AcceptanceOptions {
  std::optional<std::filesystem::path> workdir;  // table cache; none keeps tables in memory
  unsigned threads = 1;
};

struct AcceptanceRun {
  std::vector<CriterionResult> criteria;
  std::vector<VerificationReport> reports;
  std::vector<ProbeSeries> probes;

  bool all_passed() const;
};

// Runs criteria 1..12 in order; `on_result` sees each result as it lands.
AcceptanceRun run_acceptance(const AcceptanceOptions& options,
                             const std::function<void(const CriterionResult&)>& on_result = {});

// "criterion 3 PASS coding-gap-lower-bound: ..."
std::string format_result(const CriterionResult& result);

}  // namespace entrolab
