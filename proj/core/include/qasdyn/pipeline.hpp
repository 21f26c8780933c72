#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qasdyn/degdyn.hpp"
#include "qasdyn/iteration.hpp"
#include "qasdyn/mapspec.hpp"
#include "qasdyn/structure.hpp"

namespace qasdyn {

struct StageError {
  std::string stage;
  std::string message;
};

struct StageTiming {
  std::string stage;
  double seconds = 0;
};

struct AnalysisReport {
  ParsedMap input;
  IterationLedger naive;
  std::optional<H0Discovery> h0;
  std::optional<IterationLedger> recurrent;
  std::optional<CrossCheck> cross;
  // The recurrent law failed: an analysis result, not a pipeline error.
  std::optional<std::string> recurrent_violation;
  std::optional<StructureReport> structure;
  std::optional<DynamicalDegreeReport> dynamics;
  std::vector<std::string> notes;
  std::vector<StageError> errors;  // a failed stage stops the pipeline
  std::vector<StageTiming> timings;

  bool budget_exhausted() const { return !naive.reached_horizon(); }
  Verdict verdict() const { return structure ? structure->verdict : Verdict::inconclusive; }
};

struct PipelineOptions {
  bool structure = true;  // false for `iterate`: ledgers and h0 only
  bool dynamics = true;
  std::size_t ratio_n = 60;
};

/// iterate -> discover h0 -> recurrent ledger and cross-check -> QAS
/// analysis -> degree dynamics.
AnalysisReport run_pipeline(const ParsedMap& input, const PipelineOptions& options = {});

/// 0, or 3 when the budget stopped the iteration and no verdict was reached.
int exit_code(const AnalysisReport& r);

/// Hex SHA-256 of the canonical map document.
std::string content_hash(const std::string& document);

}  // namespace qasdyn
