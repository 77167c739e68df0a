#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cmtop {

enum class CriterionStatus { Pass, Fail, Finding };

struct CriterionResult {
  int id = 0;
  std::string title;
  CriterionStatus status = CriterionStatus::Fail;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

/// Wall-clock limit for each criterion, in seconds. Criterion 1 applies its
/// limit to each single evaluation.
double criterion_time_limit(int id);

/// Runs criteria 1-10 in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// "criterion N: PASS  title  (detail; 0.12 s of 10 s)"
std::string format_result(const CriterionResult& r);

/// True when no criterion failed. Findings count as documented outcomes.
bool acceptance_ok(const std::vector<CriterionResult>& results);

}  // namespace cmtop
