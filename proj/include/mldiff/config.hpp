#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mldiff/problem.hpp"
#include "mldiff/stepper.hpp"

namespace mldiff {

struct StudyConfig {
    std::vector<double> h_list;
    double t_eval = 0.2;
    std::optional<double> tau; // defaults by preset when absent
    std::vector<SchemeId> schemes;
};

/// A fully parsed run configuration. The problem is validated and its
/// interfaces are canonicalized to GI/GII; initial-condition expression
/// sources are kept for round-trip serialization.
struct RunConfig {
    int schema_version = 1;
    Problem problem;
    std::vector<std::string> initial_sources;
    std::size_t n = 20;
    SchemeId scheme = SchemeId::CrankNicolson;
    std::optional<double> tau; // empty means "auto"
    bool tau_is_auto = false;
    std::optional<double> t_end;
    std::vector<double> snapshots;
    std::optional<StudyConfig> study;
};

SchemeId scheme_from_name(const std::string& name);

/// Parses and validates a config. Throws ConfigError on any defect, with
/// every problem-level violation listed.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Canonicalized re-serialization: layer conductivities explicit, interfaces
/// in GI/GII form.
nlohmann::json config_to_json(const RunConfig& config);

} // namespace mldiff
