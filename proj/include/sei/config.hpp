#pragma once

#include <string>
#include <string_view>

#include "sei/dynamics.hpp"
#include "sei/harness.hpp"

namespace sei {

/// Parses {"field": "paper" | "uniform" | "zero", "B": [..], "E": [..]}.
/// B and E are only read for "uniform" (default zero vectors); "field"
/// defaults to "paper". Other keys are ignored so the same document can carry
/// an ExperimentSpec. Throws ConfigError on malformed input.
FieldPtr field_from_json(std::string_view json_text);

/// Parses an ExperimentSpec document. Keys:
///   experiment  "run" | "convergence" | "timing" | "hamiltonian"
///   ic          "I" | "II" | {"x": [3], "tbar": t, "p": [3]}
///   h_list      [h...]          (or "h": single value)
///   T           number
///   methods     ["sei", "heun"] (or "method": "sei" | "heun" | "both")
///   output_path string
///   field, B, E as for field_from_json
///   stride, repetitions
/// Missing keys take default_spec(experiment); unknown keys and type errors
/// throw ConfigError, out-of-range values throw UsageError.
ExperimentSpec spec_from_json(std::string_view json_text);

/// JSON summary of a finished study (slopes, maxima, final states).
std::string summary_json(const ExperimentSpec& spec, const ConvergenceReport& r);
std::string summary_json(const ExperimentSpec& spec, const HamiltonianReport& r);
std::string summary_json(const ExperimentSpec& spec, const TimingReport& r);
std::string summary_json(const ExperimentSpec& spec, const std::vector<RunResult>& r);

}  // namespace sei
