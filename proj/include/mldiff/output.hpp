#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mldiff/mesh.hpp"
#include "mldiff/stability.hpp"
#include "mldiff/stepper.hpp"
#include "mldiff/verify.hpp"

namespace mldiff {

/// Shortest round-trip decimal representation, capped at 12 significant
/// digits. Deterministic: identical doubles always format identically.
std::string format_number(double x);

/// Full-node solution as CSV with columns layer,j,x,u.
void write_solution_csv(std::ostream& out, const Mesh& mesh, const std::vector<double>& full);

nlohmann::json stability_report_json(const StabilityReport& report);
std::string stability_table_text(const StabilityReport& report);

/// Study results keyed by scheme, one CSV column pair (error, ratio) per
/// scheme, one row per spacing.
using StudyResults = std::vector<std::pair<SchemeId, std::vector<ErrorRecord>>>;

void write_convergence_csv(std::ostream& out, const StudyResults& results);
std::string convergence_table_text(const StudyResults& results);

} // namespace mldiff
