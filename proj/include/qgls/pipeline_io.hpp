#pragma once

#include <json.hpp>

#include "qgls/fock.hpp"

namespace qgls {

using Json = nlohmann::ordered_json;

/// Parses and validates a pipeline document. Malformed JSON raises
/// SyntaxError (with the parser's line/column message); a well-formed
/// document that violates the schema or describes an inadmissible element
/// raises SemanticError naming the offending element. Unknown keys are
/// rejected.
PipelineSpec parse_pipeline(const std::string& text, double tol = global_tolerance());

/// Parses a sampled refractive-index profile:
/// {"samples": [{"x": -1.0, "n": [1.5, -1.0]}, ...]}.
IndexProfile parse_index_profile(const std::string& text);

Json to_json(const ValidationReport& report);
Json to_json(const PTReport& report);
Json to_json(const ComparisonReport& report);
Json to_json(const WignerGrid& grid);
Json to_json(const TruncationReport& report);

struct SimulateOptions {
    bool literal_paper_formula = false;
    bool si_units = false;
    double omega_si = 0.0; // rad/s, used instead of the pipeline omega when si_units
};

/// Runs the pipeline and assembles the simulation report: final mean and
/// covariance, purity, per-mode photon numbers, the occupation inferred from
/// the covariance, and per-gain-element noise figures. Pure composition of
/// library calls.
Json simulate_report(const PipelineSpec& pipeline, SimulateOptions options = {},
                     double tol = global_tolerance());

} // namespace qgls
