#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qasdyn/degdyn.hpp"
#include "qasdyn/pipeline.hpp"

namespace qasdyn {

struct EmitOptions {
  bool timings = true;  // the only run-dependent field
};

nlohmann::ordered_json report_json(const AnalysisReport& r, const EmitOptions& options = {});
std::string emit_json(const AnalysisReport& r, const EmitOptions& options = {});
std::string emit_text(const AnalysisReport& r, const EmitOptions& options = {});

/// `recurrence` verb: dynamics of a bare degree list.
nlohmann::ordered_json dynamics_json(const DynamicalDegreeReport& d);
std::string dynamics_text(const DynamicalDegreeReport& d);

}  // namespace qasdyn
